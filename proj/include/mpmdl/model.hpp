#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpmdl/error.hpp"

namespace mpmdl {

inline constexpr int kLineCount = 3;
inline constexpr int kRowCount = 2;

enum class VehicleModel { Fuel, PureElectric, Mixed };

inline const char* vehicle_model_name(VehicleModel m) {
  switch (m) {
    case VehicleModel::Fuel: return "fuel";
    case VehicleModel::PureElectric: return "pev";
    case VehicleModel::Mixed: return "mixed";
  }
  return "?";
}

inline std::optional<VehicleModel> parse_vehicle_model(const std::string& s) {
  if (s == "fuel") return VehicleModel::Fuel;
  if (s == "pev") return VehicleModel::PureElectric;
  if (s == "mixed") return VehicleModel::Mixed;
  return std::nullopt;
}

struct Task {
  int id = 0;
  double time_s = 0.0;
  double energy_rate = 0.0;  // kcal per second of work
  bool hazardous = false;
  bool high_value = false;

  friend bool operator==(const Task&, const Task&) = default;
};

using Edge = std::pair<int, int>;

/// Immediate-predecessor relation over tasks 1..n. Edges are kept sorted and
/// de-duplicated; the transitive closure is never materialized.
class PrecedenceGraph {
 public:
  PrecedenceGraph() = default;

  PrecedenceGraph(int n_tasks, std::vector<Edge> edges) : n_(n_tasks), edges_(std::move(edges)) {
    if (n_ < 0) throw ValidationError(Errc::BadEdge, "negative task count");
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    preds_.assign(static_cast<std::size_t>(n_) + 1, {});
    succs_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (const auto& [from, to] : edges_) {
      if (from < 1 || from > n_ || to < 1 || to > n_) {
        throw ValidationError(Errc::BadEdge,
                              "edge " + std::to_string(from) + "->" + std::to_string(to) +
                                  " references a task outside 1.." + std::to_string(n_),
                              0, from < 1 || from > n_ ? from : to);
      }
      succs_[from].push_back(to);
      preds_[to].push_back(from);
    }
  }

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& predecessors(int task) const { return preds_.at(task); }
  const std::vector<int>& successors(int task) const { return succs_.at(task); }

  /// A directed cycle as a task path whose last element closes back on the
  /// first, or nullopt for a DAG.
  std::optional<std::vector<int>> find_cycle() const {
    enum Color : unsigned char { White, Grey, Black };
    std::vector<Color> color(static_cast<std::size_t>(n_) + 1, White);
    std::vector<int> parent(static_cast<std::size_t>(n_) + 1, 0);
    for (int root = 1; root <= n_; ++root) {
      if (color[root] != White) continue;
      // iterative DFS: (node, next successor index)
      std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
      color[root] = Grey;
      while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < succs_[node].size()) {
          const int child = succs_[node][next++];
          if (color[child] == Grey) {
            std::vector<int> cycle{child};
            for (int v = node; v != child; v = parent[v]) cycle.push_back(v);
            std::reverse(cycle.begin() + 1, cycle.end());
            return cycle;
          }
          if (color[child] == White) {
            color[child] = Grey;
            parent[child] = node;
            stack.emplace_back(child, 0);
          }
        } else {
          color[node] = Black;
          stack.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  bool is_topological_order(const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != n_) return false;
    std::vector<int> position(static_cast<std::size_t>(n_) + 1, -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int t = order[i];
      if (t < 1 || t > n_ || position[t] != -1) return false;
      position[t] = static_cast<int>(i);
    }
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return position[e.first] < position[e.second]; });
  }

  friend bool operator==(const PrecedenceGraph& a, const PrecedenceGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> preds_{{}};
  std::vector<std::vector<int>> succs_{{}};
};

struct LineSpec {
  int line_index = 1;
  VehicleModel vehicle_model = VehicleModel::Fuel;
  std::vector<Task> tasks;  // tasks[i].id == i + 1
  PrecedenceGraph precedence;

  int size() const noexcept { return static_cast<int>(tasks.size()); }
  const Task& task(int id) const { return tasks.at(static_cast<std::size_t>(id - 1)); }

  friend bool operator==(const LineSpec&, const LineSpec&) = default;
};

/// Station energy rates, each per second of open station time.
struct EnergyRates {
  double ventilation = 0.0;  // E1
  double lighting = 0.0;     // E2
  double disassembly = 0.0;  // E3
  double standby = 0.0;      // E4

  friend bool operator==(const EnergyRates&, const EnergyRates&) = default;
};

struct Instance {
  std::vector<LineSpec> lines;  // exactly three after validation, indices 1, 2, 3
  double takt_s = 0.0;
  EnergyRates rates;

  const LineSpec& line(int index) const { return lines.at(static_cast<std::size_t>(index - 1)); }
  int total_tasks() const {
    int n = 0;
    for (const auto& l : lines) n += l.size();
    return n;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Checks every instance invariant and returns the instance unchanged.
inline Instance validate_instance(Instance raw) {
  if (!(raw.takt_s > 0.0) || !std::isfinite(raw.takt_s)) {
    throw ValidationError(Errc::NonPositiveTakt, "takt must be positive, got " + std::to_string(raw.takt_s));
  }
  const auto& r = raw.rates;
  for (double rate : {r.ventilation, r.lighting, r.disassembly, r.standby}) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw ValidationError(Errc::BadRates, "energy rates must be >= 0");
  }
  if (raw.lines.size() != kLineCount) {
    throw ValidationError(Errc::BadLineCount, "expected 3 lines, got " + std::to_string(raw.lines.size()));
  }
  for (int o = 1; o <= kLineCount; ++o) {
    const LineSpec& line = raw.lines[static_cast<std::size_t>(o - 1)];
    if (line.line_index != o) {
      throw ValidationError(Errc::BadLineCount, "line at position " + std::to_string(o) + " has index " +
                                                    std::to_string(line.line_index), o);
    }
    if (o != 2 && line.vehicle_model == VehicleModel::Mixed) {
      throw ValidationError(Errc::BadLineModel, "only the middle line may carry the mixed model", o);
    }
    if (line.precedence.size() != line.size()) {
      throw ValidationError(Errc::BadTaskIds, "precedence graph covers " + std::to_string(line.precedence.size()) +
                                                  " tasks but the line has " + std::to_string(line.size()), o);
    }
    for (std::size_t i = 0; i < line.tasks.size(); ++i) {
      const Task& t = line.tasks[i];
      if (t.id != static_cast<int>(i) + 1) {
        throw ValidationError(Errc::BadTaskIds, "task ids must be 1..N in order", o, t.id);
      }
      if (!(t.time_s > 0.0) || !std::isfinite(t.time_s)) {
        throw ValidationError(Errc::BadTaskTime, "task time must be positive", o, t.id);
      }
      if (t.time_s > raw.takt_s) {
        throw ValidationError(Errc::TaskExceedsTakt,
                              "line " + std::to_string(o) + " task " + std::to_string(t.id) + " takes " +
                                  std::to_string(t.time_s) + " s, above the takt of " +
                                  std::to_string(raw.takt_s) + " s", o, t.id);
      }
      if (!(t.energy_rate >= 0.0) || !std::isfinite(t.energy_rate)) {
        throw ValidationError(Errc::BadEnergyRate, "energy rate must be >= 0", o, t.id);
      }
    }
    if (auto cycle = line.precedence.find_cycle()) {
      std::string path;
      for (int v : *cycle) path += std::to_string(v) + "->";
      path += std::to_string(cycle->front());
      throw ValidationError(Errc::CycleDetected, "line " + std::to_string(o) + " precedence cycle " + path, o,
                            cycle->front(), *cycle);
    }
  }
  return raw;
}

inline constexpr int kDefaultTopoCountCap = 12;

/// Exact number of topological orders, by dynamic programming over subsets.
inline std::uint64_t topological_order_count(const PrecedenceGraph& g, int cap = kDefaultTopoCountCap) {
  const int n = g.size();
  if (n > cap || n > 30) {
    throw Error(Errc::TooLarge, "topological order count limited to " + std::to_string(cap) + " tasks");
  }
  std::vector<std::uint32_t> pred_mask(static_cast<std::size_t>(n), 0);
  for (const auto& [from, to] : g.edges()) pred_mask[to - 1] |= 1u << (from - 1);
  std::vector<std::uint64_t> ways(std::size_t{1} << n, 0);
  ways[0] = 1;
  for (std::uint32_t placed = 0; placed < (1u << n); ++placed) {
    if (ways[placed] == 0) continue;
    for (int t = 0; t < n; ++t) {
      const std::uint32_t bit = 1u << t;
      if ((placed & bit) == 0 && (pred_mask[t] & ~placed) == 0) ways[placed | bit] += ways[placed];
    }
  }
  return ways[(std::size_t{1} << n) - 1];
}

/// All topological orders in lexicographic order. Throws TooLarge once more
/// than `limit` orders exist.
inline std::vector<std::vector<int>> enumerate_topological_orders(const PrecedenceGraph& g, std::size_t limit) {
  const int n = g.size();
  std::vector<int> remaining_preds(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t) remaining_preds[t] = static_cast<int>(g.predecessors(t).size());
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::vector<int> prefix;
  std::vector<std::vector<int>> out;

  std::function<void()> extend = [&]() {
    if (static_cast<int>(prefix.size()) == n) {
      if (out.size() >= limit) {
        throw Error(Errc::TooLarge, "more than " + std::to_string(limit) + " topological orders");
      }
      out.push_back(prefix);
      return;
    }
    for (int t = 1; t <= n; ++t) {
      if (used[t] || remaining_preds[t] != 0) continue;
      used[t] = true;
      prefix.push_back(t);
      for (int s : g.successors(t)) --remaining_preds[s];
      extend();
      for (int s : g.successors(t)) ++remaining_preds[s];
      prefix.pop_back();
      used[t] = false;
    }
  };
  extend();
  return out;
}

struct InstanceStats {
  std::array<int, kLineCount> task_count{};
  std::array<double, kLineCount> work_content_s{};
  // Row 1 is the only row line 1 can use, row 2 the only row for line 3, so
  // each row needs at least ceil(work of its exclusive line / takt) stations.
  std::array<int, kRowCount> row_lower_bound{};
  int total_lower_bound = 0;
};

inline InstanceStats instance_stats(const Instance& inst) {
  InstanceStats s;
  double total = 0.0;
  for (int o = 0; o < kLineCount; ++o) {
    const auto& line = inst.lines[static_cast<std::size_t>(o)];
    s.task_count[o] = line.size();
    for (const auto& t : line.tasks) s.work_content_s[o] += t.time_s;
    total += s.work_content_s[o];
  }
  s.row_lower_bound[0] = static_cast<int>(std::ceil(s.work_content_s[0] / inst.takt_s));
  s.row_lower_bound[1] = static_cast<int>(std::ceil(s.work_content_s[2] / inst.takt_s));
  s.total_lower_bound = static_cast<int>(std::ceil(total / inst.takt_s));
  return s;
}

}  // namespace mpmdl
