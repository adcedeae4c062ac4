#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpmdl/codec.hpp"
#include "mpmdl/model.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

/// (station count, mean worker energy per station, total station energy); all minimized.
struct ObjectiveVector {
  int f1 = 0;
  double f2 = 0.0;
  double f3 = 0.0;

  std::array<double, 3> as_point() const { return {static_cast<double>(f1), f2, f3}; }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

inline int eval_f1(const Schedule& s) { return s.station_count(); }

/// nullopt when no station is open.
namespace detail {

// Assigned tasks in (line, task) order. Summing in this order makes f2 and f3
// bit-identical for any two schedules that cover the same tasks with the same
// station count, so equal fronts compare equal as sets of doubles.
inline std::vector<TaskRef> canonical_tasks(const Schedule& s) {
  std::vector<TaskRef> refs;
  for (const auto& row : s.rows) {
    for (const auto& st : row) refs.insert(refs.end(), st.tasks.begin(), st.tasks.end());
  }
  std::sort(refs.begin(), refs.end(), [](const TaskRef& a, const TaskRef& b) {
    return a.line != b.line ? a.line < b.line : a.task < b.task;
  });
  return refs;
}

}  // namespace detail

inline std::optional<double> eval_f2(const Schedule& s, const Instance& inst) {
  const int k = s.station_count();
  if (k == 0) return std::nullopt;
  double work_energy = 0.0;
  for (const auto& ref : detail::canonical_tasks(s)) {
    const Task& t = inst.line(ref.line).task(ref.task);
    work_energy += t.time_s * t.energy_rate;
  }
  return work_energy / k;
}

struct StationEnergy {
  double facility = 0.0;     // K * CT * (E1 + E2)
  double disassembly = 0.0;  // sum of station loads * E3
  double standby = 0.0;      // (K * CT - assigned work) * E4

  double total() const { return facility + disassembly + standby; }
};

inline StationEnergy eval_f3_terms(const Schedule& s, const Instance& inst) {
  const double capacity = s.station_count() * inst.takt_s;
  // the load identity makes the sum of station loads equal the assigned work;
  // check_constraints verifies that identity separately
  double assigned = 0.0;
  for (const auto& ref : detail::canonical_tasks(s)) assigned += inst.line(ref.line).task(ref.task).time_s;
  const auto& r = inst.rates;
  return {capacity * (r.ventilation + r.lighting), assigned * r.disassembly, (capacity - assigned) * r.standby};
}

inline double eval_f3(const Schedule& s, const Instance& inst) { return eval_f3_terms(s, inst).total(); }

inline ObjectiveVector objectives_of(const Schedule& s, const Instance& inst) {
  return {eval_f1(s), eval_f2(s, inst).value_or(0.0), eval_f3(s, inst)};
}

// ---------------------------------------------------------------------------
// Constraint checking

enum class Constraint {
  SingleAssignment,  // every task sits in exactly one station
  TaktBound,         // station load <= takt
  NonEmptyStation,
  BinaryAssignment,  // structural: the assignment view is 0/1 by construction
  RowCompatibility,  // row 1 takes lines 1-2, row 2 takes lines 2-3
  LoadIdentity,      // stored station load equals the sum of its task times
};

inline const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::SingleAssignment: return "single-assignment";
    case Constraint::TaktBound: return "takt-bound";
    case Constraint::NonEmptyStation: return "non-empty-station";
    case Constraint::BinaryAssignment: return "binary-assignment";
    case Constraint::RowCompatibility: return "row-compatibility";
    case Constraint::LoadIdentity: return "load-identity";
  }
  return "?";
}

struct Witness {
  TaskRef task;        // {0, 0} when the violation concerns a station only
  StationRef station;  // {0, 0} for a task missing from every station
};

struct ConstraintVerdict {
  Constraint constraint;
  bool pass = true;
  std::vector<Witness> witnesses;
};

struct ConstraintReport {
  std::vector<ConstraintVerdict> verdicts;

  bool feasible() const {
    for (const auto& v : verdicts) {
      if (!v.pass) return false;
    }
    return true;
  }
  const ConstraintVerdict& verdict(Constraint c) const {
    for (const auto& v : verdicts) {
      if (v.constraint == c) return v;
    }
    throw std::out_of_range("no verdict for constraint");
  }
};

inline constexpr double kLoadRelTolerance = 1e-9;

inline ConstraintReport check_constraints(const Schedule& s, const Instance& inst) {
  ConstraintVerdict single{Constraint::SingleAssignment, true, {}};
  ConstraintVerdict takt{Constraint::TaktBound, true, {}};
  ConstraintVerdict nonempty{Constraint::NonEmptyStation, true, {}};
  ConstraintVerdict binary{Constraint::BinaryAssignment, true, {}};
  ConstraintVerdict rows{Constraint::RowCompatibility, true, {}};
  ConstraintVerdict identity{Constraint::LoadIdentity, true, {}};

  auto fail = [](ConstraintVerdict& v, Witness w) {
    v.pass = false;
    v.witnesses.push_back(w);
  };

  std::map<TaskRef, int> seen;
  for (int r = 0; r < kRowCount; ++r) {
    for (std::size_t d = 0; d < s.rows[r].size(); ++d) {
      const Station& st = s.rows[r][d];
      const StationRef where{r + 1, static_cast<int>(d) + 1};
      if (st.tasks.empty()) fail(nonempty, {{}, where});
      if (st.load_s > inst.takt_s) fail(takt, {{}, where});
      double recomputed = 0.0;
      for (const auto& ref : st.tasks) {
        const bool known = ref.line >= 1 && ref.line <= kLineCount && ref.task >= 1 &&
                           ref.task <= inst.line(ref.line).size();
        if (!known) {
          fail(single, {ref, where});
          continue;
        }
        if (++seen[ref] > 1) fail(single, {ref, where});
        const int allowed_a = r == 0 ? 1 : 2;
        const int allowed_b = r == 0 ? 2 : 3;
        if (ref.line != allowed_a && ref.line != allowed_b) fail(rows, {ref, where});
        recomputed += inst.line(ref.line).task(ref.task).time_s;
      }
      if (std::abs(recomputed - st.load_s) > kLoadRelTolerance * std::max(1.0, std::abs(recomputed))) {
        fail(identity, {{}, where});
      }
    }
  }
  for (int o = 1; o <= kLineCount; ++o) {
    for (int t = 1; t <= inst.line(o).size(); ++t) {
      if (!seen.contains({o, t})) fail(single, {{o, t}, {}});
    }
  }
  return {{single, takt, nonempty, binary, rows, identity}};
}

// ---------------------------------------------------------------------------

struct Evaluation {
  Schedule schedule;
  ObjectiveVector objectives;
};

inline Evaluation evaluate(const Chromosome& c, const Instance& inst, Rng& rng, const DecodeOptions& opts = {}) {
  Schedule s = decode(c, inst, rng, opts);
  ObjectiveVector f = objectives_of(s, inst);
  return {std::move(s), f};
}

}  // namespace mpmdl
