#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <vector>

#include "mpmdl/mpmdl.hpp"

namespace mpmdl::testing {

/// Six-task precedence graph with task 5 hazardous and task 3 high value.
inline LineSpec six_task_line(int line_index = 1, VehicleModel model = VehicleModel::Fuel) {
  LineSpec line;
  line.line_index = line_index;
  line.vehicle_model = model;
  const std::array<double, 6> times{100, 200, 150, 120, 180, 90};
  for (int id = 1; id <= 6; ++id) {
    line.tasks.push_back({id, times[static_cast<std::size_t>(id - 1)], 1.0, id == 5, id == 3});
  }
  line.precedence = PrecedenceGraph(6, {{1, 2}, {1, 3}, {3, 4}, {3, 5}, {2, 5}, {4, 6}, {5, 6}});
  return line;
}

inline LineSpec empty_line(int line_index, VehicleModel model) {
  LineSpec line;
  line.line_index = line_index;
  line.vehicle_model = model;
  return line;
}

inline LineSpec uniform_line(int line_index, VehicleModel model, const std::vector<double>& times,
                             std::vector<Edge> edges = {}) {
  LineSpec line;
  line.line_index = line_index;
  line.vehicle_model = model;
  for (std::size_t i = 0; i < times.size(); ++i) line.tasks.push_back({static_cast<int>(i) + 1, times[i], 1.0, false, false});
  line.precedence = PrecedenceGraph(static_cast<int>(times.size()), std::move(edges));
  return line;
}

inline constexpr EnergyRates kCaseRates{20.0, 40.0, 90.0, 55.0};

/// six-task on line 1, lines 2 and 3 empty, CT 650 s, case-study energy rates.
inline Instance six_task_instance() {
  Instance inst;
  inst.takt_s = 650.0;
  inst.rates = kCaseRates;
  inst.lines = {six_task_line(1), empty_line(2, VehicleModel::Mixed), empty_line(3, VehicleModel::Fuel)};
  return validate_instance(inst);
}

/// six-task on both side lines, middle line empty: decoding is deterministic.
inline Instance six_task_twin_instance() {
  Instance inst = six_task_instance();
  inst.lines[2] = six_task_line(3);
  return validate_instance(inst);
}

/// six-task on the sides plus a three-task middle line.
inline Instance six_task_three_line_instance() {
  Instance inst = six_task_twin_instance();
  inst.lines[1] = uniform_line(2, VehicleModel::Mixed, {140, 260, 90}, {{1, 3}});
  inst.lines[1].tasks[1].hazardous = true;
  return validate_instance(inst);
}

inline Chromosome make_chromosome(Sequence s1, Sequence s2, Sequence s3) {
  Chromosome c;
  c.lines = {std::move(s1), std::move(s2), std::move(s3)};
  return c;
}

inline PrecedenceGraph par2_graph() { return PrecedenceGraph(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}); }

inline Instance single_line_instance(LineSpec line, double takt = 650.0) {
  Instance inst;
  inst.takt_s = takt;
  inst.rates = kCaseRates;
  line.line_index = 1;
  inst.lines = {std::move(line), empty_line(2, VehicleModel::Mixed), empty_line(3, VehicleModel::Fuel)};
  return validate_instance(inst);
}

// ---------------------------------------------------------------------------
// Independent oracles (do not share code paths with the library)

/// All permutations of 1..n that respect every edge, found by filtering n!.
// Middle line emptied: side lines never compete for a row, so decoding is deterministic.
inline Instance sides_only_instance(std::uint64_t seed) {
  auto inst = generate_instance(generator_preset(ScalePreset::Small), seed);
  inst.lines[1] = empty_line(2, VehicleModel::Mixed);
  return validate_instance(inst);
}

inline std::set<std::vector<int>> permutation_filter_orders(const PrecedenceGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.size()));
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::vector<int>> out;
  do {
    std::vector<int> pos(perm.size() + 1);
    for (std::size_t i = 0; i < perm.size(); ++i) pos[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    bool ok = true;
    for (const auto& [a, b] : g.edges()) ok = ok && pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)];
    if (ok) out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Random DAG on n nodes with edges only from lower to higher id.
inline PrecedenceGraph random_dag(int n, double density, Rng& rng) {
  std::vector<Edge> edges;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (uniform01(rng) < density) edges.emplace_back(a, b);
    }
  }
  return PrecedenceGraph(n, std::move(edges));
}

inline std::set<std::array<double, 3>> vector_set(const ParetoArchive& a) {
  std::set<std::array<double, 3>> s;
  for (const auto& p : a.points()) s.insert(p);
  return s;
}

}  // namespace mpmdl::testing
