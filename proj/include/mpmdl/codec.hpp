#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "mpmdl/model.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

using Sequence = std::vector<int>;

/// One feasible task sequence per line; lines[o] belongs to line o + 1.
struct Chromosome {
  std::array<Sequence, kLineCount> lines;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
  friend auto operator<=>(const Chromosome&, const Chromosome&) = default;
};

inline bool is_feasible(const Chromosome& c, const Instance& inst) {
  for (int o = 0; o < kLineCount; ++o) {
    if (!inst.lines[static_cast<std::size_t>(o)].precedence.is_topological_order(c.lines[static_cast<std::size_t>(o)])) {
      return false;
    }
  }
  return true;
}

struct TaskRef {
  int line = 0;  // 1..3
  int task = 0;  // 1..N_line

  friend bool operator==(const TaskRef&, const TaskRef&) = default;
  friend auto operator<=>(const TaskRef&, const TaskRef&) = default;
};

struct Station {
  std::vector<TaskRef> tasks;  // in execution order
  double load_s = 0.0;

  friend bool operator==(const Station&, const Station&) = default;
};

/// rows[0] is the shared row between lines 1 and 2, rows[1] between lines 2 and 3.
struct Schedule {
  std::array<std::vector<Station>, kRowCount> rows;

  int open_stations(int row) const { return static_cast<int>(rows.at(static_cast<std::size_t>(row - 1)).size()); }
  int station_count() const { return static_cast<int>(rows[0].size() + rows[1].size()); }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// ---------------------------------------------------------------------------
// Equivalent task sets

/// Partition of a line's tasks: two tasks share a cell iff their immediate
/// predecessor sets and immediate successor sets are both identical. Any two
/// members of a cell can trade places in a topological order.
using LineCells = std::vector<std::vector<int>>;
using EquivalenceCells = std::array<LineCells, kLineCount>;

inline LineCells equivalence_cells(const PrecedenceGraph& g) {
  std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<int>> by_signature;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> order;
  for (int t = 1; t <= g.size(); ++t) {
    auto preds = g.predecessors(t);
    auto succs = g.successors(t);
    std::sort(preds.begin(), preds.end());
    std::sort(succs.begin(), succs.end());
    auto key = std::make_pair(std::move(preds), std::move(succs));
    auto [it, inserted] = by_signature.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(t);
  }
  // cells ordered by their smallest member
  LineCells cells;
  cells.reserve(order.size());
  for (const auto& key : order) cells.push_back(by_signature[key]);
  return cells;
}

inline EquivalenceCells equivalence_cells(const Instance& inst) {
  EquivalenceCells cells;
  for (int o = 0; o < kLineCount; ++o) cells[o] = equivalence_cells(inst.lines[static_cast<std::size_t>(o)].precedence);
  return cells;
}

// ---------------------------------------------------------------------------
// Visit ledger

/// Per-task counts of how often the encoder picked the task out of a
/// multi-task candidate set. Counts only ever grow. Not synchronized: callers
/// sharing one ledger across threads must serialize access.
class VisitLedger {
 public:
  VisitLedger() = default;
  explicit VisitLedger(const Instance& inst) {
    for (int o = 0; o < kLineCount; ++o) counts_[o].assign(static_cast<std::size_t>(inst.lines[o].size()) + 1, 0);
  }
  explicit VisitLedger(const std::array<int, kLineCount>& sizes) {
    for (int o = 0; o < kLineCount; ++o) counts_[o].assign(static_cast<std::size_t>(sizes[o]) + 1, 0);
  }

  std::uint64_t count(int line, int task) const { return counts_.at(line - 1).at(task); }
  void record(int line, int task) { ++counts_.at(line - 1).at(task); }

  bool compatible_with(const Instance& inst) const {
    for (int o = 0; o < kLineCount; ++o) {
      if (counts_[o].size() != static_cast<std::size_t>(inst.lines[o].size()) + 1) return false;
    }
    return true;
  }

  std::span<const std::uint64_t> line_counts(int line) const {
    return std::span<const std::uint64_t>(counts_.at(line - 1)).subspan(1);
  }

 private:
  std::array<std::vector<std::uint64_t>, kLineCount> counts_{std::vector<std::uint64_t>{0}, std::vector<std::uint64_t>{0},
                                                             std::vector<std::uint64_t>{0}};
};

// ---------------------------------------------------------------------------
// Encoder

/// Candidate-narrowing rules. With all three off the encoder picks uniformly
/// among the available tasks.
struct EncodeRules {
  bool hazardous_first = true;
  bool high_value_first = true;
  bool least_visited_first = true;
};

namespace detail {

template <class Pred>
void keep_if_any(std::vector<int>& candidates, Pred pred) {
  if (std::none_of(candidates.begin(), candidates.end(), pred)) return;
  std::erase_if(candidates, [&](int t) { return !pred(t); });
}

}  // namespace detail

/// Completes `prefix` (itself a valid topological prefix) to a full
/// topological order of the line. At each step the candidate set is every
/// unplaced task whose predecessors are all placed; a lone candidate is taken
/// directly, otherwise the set is narrowed by hazard, then high value, then
/// least ledger count, and the survivor is drawn uniformly.
inline Sequence encode_suffix(const LineSpec& line, std::span<const int> prefix, VisitLedger& ledger, Rng& rng,
                              const EncodeRules& rules = {}) {
  const int n = line.size();
  const auto& g = line.precedence;
  std::vector<int> remaining_preds(static_cast<std::size_t>(n) + 1, 0);
  std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
  for (int t = 1; t <= n; ++t) remaining_preds[t] = static_cast<int>(g.predecessors(t).size());
  Sequence seq(prefix.begin(), prefix.end());
  seq.reserve(static_cast<std::size_t>(n));
  for (int t : prefix) {
    placed[t] = true;
    for (int s : g.successors(t)) --remaining_preds[s];
  }

  std::vector<int> candidates;
  while (static_cast<int>(seq.size()) < n) {
    candidates.clear();
    for (int t = 1; t <= n; ++t) {
      if (!placed[t] && remaining_preds[t] == 0) candidates.push_back(t);
    }
    int chosen = candidates.front();
    if (candidates.size() > 1) {
      if (rules.hazardous_first) detail::keep_if_any(candidates, [&](int t) { return line.task(t).hazardous; });
      if (rules.high_value_first) detail::keep_if_any(candidates, [&](int t) { return line.task(t).high_value; });
      if (rules.least_visited_first && candidates.size() > 1) {
        std::uint64_t fewest = std::numeric_limits<std::uint64_t>::max();
        for (int t : candidates) fewest = std::min(fewest, ledger.count(line.line_index, t));
        std::erase_if(candidates, [&](int t) { return ledger.count(line.line_index, t) != fewest; });
      }
      chosen = candidates[uniform_index(rng, candidates.size())];
      ledger.record(line.line_index, chosen);
    }
    seq.push_back(chosen);
    placed[chosen] = true;
    for (int s : g.successors(chosen)) --remaining_preds[s];
  }
  return seq;
}

inline Sequence encode(const LineSpec& line, VisitLedger& ledger, Rng& rng, const EncodeRules& rules = {}) {
  return encode_suffix(line, {}, ledger, rng, rules);
}

inline Chromosome encode(const Instance& inst, VisitLedger& ledger, Rng& rng, const EncodeRules& rules = {}) {
  Chromosome c;
  for (int o = 0; o < kLineCount; ++o) c.lines[o] = encode(inst.lines[static_cast<std::size_t>(o)], ledger, rng, rules);
  return c;
}

// ---------------------------------------------------------------------------
// Decoder

struct DecodeOptions {
  // When a middle-line task fits neither current station, open the new
  // station in the row with the smaller total load (row 1 on ties) instead of
  // a uniformly random row.
  bool min_load_row_for_new_station = false;
};

/// Greedy sequential assignment of sequenced tasks to the two shared rows.
/// Lines are served in random order; line 1 feeds row 1, line 3 feeds row 2,
/// line 2 feeds whichever current station it fits, preferring the tighter fit.
inline Schedule decode(const Chromosome& c, const Instance& inst, Rng& rng, const DecodeOptions& opts = {}) {
  const double takt = inst.takt_s;
  std::array<std::vector<Station>, kRowCount> rows{std::vector<Station>(1), std::vector<Station>(1)};
  std::array<double, kRowCount> row_total{0.0, 0.0};
  std::array<std::size_t, kLineCount> next{0, 0, 0};

  std::vector<int> active;
  for (int o = 0; o < kLineCount; ++o) {
    if (!c.lines[o].empty()) active.push_back(o);
  }

  auto place = [&](int row, int line, int task, double time) {
    Station& st = rows[row].back();
    st.tasks.push_back({line, task});
    st.load_s += time;
    row_total[row] += time;
  };
  auto fits = [&](int row, double time) { return rows[row].back().load_s + time <= takt; };

  while (!active.empty()) {
    const std::size_t pick = uniform_index(rng, active.size());
    const int o = active[pick];
    const int task = c.lines[o][next[o]];
    const double t = inst.lines[static_cast<std::size_t>(o)].task(task).time_s;

    if (o == 0 || o == 2) {
      const int row = o == 0 ? 0 : 1;
      if (!fits(row, t)) rows[row].emplace_back();
      place(row, o + 1, task, t);
    } else {
      for (;;) {
        const bool fit1 = fits(0, t);
        const bool fit2 = fits(1, t);
        if (fit1 && fit2) {
          const double rem1 = takt - (rows[0].back().load_s + t);
          const double rem2 = takt - (rows[1].back().load_s + t);
          int row = rem1 < rem2 ? 0 : rem2 < rem1 ? 1 : static_cast<int>(uniform_index(rng, 2));
          place(row, 2, task, t);
          break;
        }
        if (fit1 || fit2) {
          place(fit1 ? 0 : 1, 2, task, t);
          break;
        }
        int row = opts.min_load_row_for_new_station ? (row_total[1] < row_total[0] ? 1 : 0)
                                                    : static_cast<int>(uniform_index(rng, 2));
        rows[row].emplace_back();
      }
    }

    if (++next[o] == c.lines[o].size()) active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  Schedule s;
  for (int r = 0; r < kRowCount; ++r) {
    for (auto& st : rows[r]) {
      if (!st.tasks.empty()) s.rows[r].push_back(std::move(st));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Assignment matrix view

struct StationRef {
  int row = 0;      // 1..2
  int station = 0;  // 1..k_row

  friend bool operator==(const StationRef&, const StationRef&) = default;
};

/// Binary task-by-station matrix. Task rows list every distinct task found in
/// the schedule, sorted by (line, task); station columns are in row-major
/// schedule order.
struct AssignmentMatrix {
  std::vector<TaskRef> tasks;
  std::vector<StationRef> stations;
  std::vector<std::vector<std::uint8_t>> x;

  int ones() const {
    int n = 0;
    for (const auto& r : x) n += static_cast<int>(std::count(r.begin(), r.end(), std::uint8_t{1}));
    return n;
  }
  int row_sum(std::size_t task_row) const {
    return static_cast<int>(std::count(x.at(task_row).begin(), x.at(task_row).end(), std::uint8_t{1}));
  }
};

inline AssignmentMatrix schedule_to_assignment(const Schedule& s) {
  AssignmentMatrix m;
  for (int r = 0; r < kRowCount; ++r) {
    for (std::size_t d = 0; d < s.rows[r].size(); ++d) {
      m.stations.push_back({r + 1, static_cast<int>(d) + 1});
      for (const auto& ref : s.rows[r][d].tasks) m.tasks.push_back(ref);
    }
  }
  std::sort(m.tasks.begin(), m.tasks.end());
  m.tasks.erase(std::unique(m.tasks.begin(), m.tasks.end()), m.tasks.end());
  m.x.assign(m.tasks.size(), std::vector<std::uint8_t>(m.stations.size(), 0));
  std::size_t column = 0;
  for (int r = 0; r < kRowCount; ++r) {
    for (const auto& st : s.rows[r]) {
      for (const auto& ref : st.tasks) {
        auto it = std::lower_bound(m.tasks.begin(), m.tasks.end(), ref);
        m.x[static_cast<std::size_t>(it - m.tasks.begin())][column] = 1;
      }
      ++column;
    }
  }
  return m;
}

}  // namespace mpmdl
