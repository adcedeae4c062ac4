#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mpmdl/archive.hpp"
#include "mpmdl/codec.hpp"
#include "mpmdl/evaluator.hpp"
#include "mpmdl/insga3.hpp"
#include "mpmdl/instance_io.hpp"
#include "mpmdl/pareto.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

// ---------------------------------------------------------------------------
// Vanilla NSGA-III: uniform random topological initialization, precedence
// preserving one-point crossover, single-task reinsertion mutation.

/// Child keeps `head[0..cut)` and lists the remaining tasks in `tail` order.
/// If both parents are topological orders, so is the child.
inline Sequence one_point_order_crossover(const Sequence& head, const Sequence& tail, std::size_t cut) {
  Sequence child(head.begin(), head.begin() + static_cast<std::ptrdiff_t>(std::min(cut, head.size())));
  std::vector<bool> taken(head.size() + 1, false);
  for (int t : child) taken[static_cast<std::size_t>(t)] = true;
  for (int t : tail) {
    if (!taken[static_cast<std::size_t>(t)]) child.push_back(t);
  }
  return child;
}

/// Removes the task at `from` (0-based) and reinserts it at a uniformly drawn
/// slot between its last predecessor and first successor.
inline Sequence reinsert_task(const Sequence& seq, const PrecedenceGraph& g, std::size_t from, Rng& rng) {
  Sequence rest = seq;
  const int task = rest[from];
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(from));
  std::size_t lo = 0;
  std::size_t hi = rest.size();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const int other = rest[i];
    const auto& preds = g.predecessors(task);
    const auto& succs = g.successors(task);
    if (std::find(preds.begin(), preds.end(), other) != preds.end()) lo = std::max(lo, i + 1);
    if (std::find(succs.begin(), succs.end(), other) != succs.end()) hi = std::min(hi, i);
  }
  const std::size_t slot = lo + uniform_index(rng, hi - lo + 1);
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(slot), task);
  return rest;
}

class ClassicVariation {
 public:
  ClassicVariation(const Instance& inst, const EvoConfig& cfg) : inst_(inst), cfg_(cfg), scratch_(inst) {}

  Chromosome initialize(Rng& rng) {
    return encode(inst_, scratch_, rng, EncodeRules{false, false, false});
  }

  std::pair<Chromosome, Chromosome> recombine(const Chromosome& a, const Chromosome& b, Rng& rng) {
    std::pair<Chromosome, Chromosome> out{a, b};
    for (int o = 0; o < kLineCount; ++o) {
      if (!bernoulli(rng, cfg_.pc) || a.lines[o].size() < 2) continue;
      const std::size_t cut = 1 + uniform_index(rng, a.lines[o].size() - 1);
      out.first.lines[o] = one_point_order_crossover(a.lines[o], b.lines[o], cut);
      out.second.lines[o] = one_point_order_crossover(b.lines[o], a.lines[o], cut);
    }
    return out;
  }

  Chromosome perturb(const Chromosome& c, Rng& rng) {
    Chromosome out = c;
    for (int o = 0; o < kLineCount; ++o) {
      if (!bernoulli(rng, cfg_.pm) || c.lines[o].empty()) continue;
      const std::size_t from = uniform_index(rng, c.lines[o].size());
      out.lines[o] = reinsert_task(c.lines[o], inst_.lines[static_cast<std::size_t>(o)].precedence, from, rng);
    }
    return out;
  }

 private:
  const Instance& inst_;
  const EvoConfig& cfg_;
  VisitLedger scratch_;  // unused by the uniform rules, required by encode()
};

inline ParetoArchive run_nsga3_vanilla(const Instance& inst, const EvoConfig& cfg,
                                       const GenerationObserver& observer = {}) {
  ClassicVariation variation(inst, cfg);
  return run_reference_point_ga(inst, cfg, variation, "nsga3", observer);
}

// ---------------------------------------------------------------------------
// Random keys

/// One key in [0, 1] per (line, task); keys[o][t - 1] belongs to task t of line o + 1.
struct RandomKeyVector {
  std::array<std::vector<double>, kLineCount> keys;

  std::size_t dimension() const { return keys[0].size() + keys[1].size() + keys[2].size(); }
  double& at(std::size_t flat) {
    for (auto& k : keys) {
      if (flat < k.size()) return k[flat];
      flat -= k.size();
    }
    throw std::out_of_range("random key index");
  }
  double at(std::size_t flat) const { return const_cast<RandomKeyVector*>(this)->at(flat); }
};

inline RandomKeyVector random_keys(const Instance& inst, Rng& rng) {
  RandomKeyVector v;
  for (int o = 0; o < kLineCount; ++o) {
    v.keys[o].resize(static_cast<std::size_t>(inst.lines[o].size()));
    for (double& k : v.keys[o]) k = uniform01(rng);
  }
  return v;
}

/// Emits, at each step, the available task with the smallest (clamped) key;
/// ties go to the smaller id.
inline Sequence decode_keys(const std::vector<double>& keys, const PrecedenceGraph& g) {
  const int n = g.size();
  std::vector<int> remaining(static_cast<std::size_t>(n) + 1, 0);
  for (int t = 1; t <= n; ++t) remaining[t] = static_cast<int>(g.predecessors(t).size());
  std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
  Sequence seq;
  seq.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(seq.size()) < n) {
    int best = 0;
    double best_key = std::numeric_limits<double>::infinity();
    for (int t = 1; t <= n; ++t) {
      if (placed[t] || remaining[t] != 0) continue;
      const double k = std::clamp(keys[static_cast<std::size_t>(t - 1)], 0.0, 1.0);
      if (k < best_key) {
        best_key = k;
        best = t;
      }
    }
    seq.push_back(best);
    placed[best] = true;
    for (int s : g.successors(best)) --remaining[s];
  }
  return seq;
}

inline Chromosome decode_keys(const RandomKeyVector& v, const Instance& inst) {
  Chromosome c;
  for (int o = 0; o < kLineCount; ++o) c.lines[o] = decode_keys(v.keys[o], inst.lines[static_cast<std::size_t>(o)].precedence);
  return c;
}

namespace detail {

struct KeyedSolution {
  RandomKeyVector keys;
  ArchiveEntry entry;
};

inline KeyedSolution evaluate_keys(const RandomKeyVector& keys, const Instance& inst, std::uint64_t decode_seed) {
  Chromosome c = decode_keys(keys, inst);
  Rng r(decode_seed);
  Evaluation e = evaluate(c, inst, r);
  return {keys, {e.objectives, std::move(c), std::move(e.schedule)}};
}

/// Bounded non-dominated archive of key vectors; when full, the most crowded
/// member is evicted.
class KeyArchive {
 public:
  explicit KeyArchive(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  void offer(const KeyedSolution& s) {
    const auto p = s.entry.objectives.as_point();
    for (const auto& m : members_) {
      const auto q = m.entry.objectives.as_point();
      if (points_equal(q, p) || dominates(q, p)) return;
    }
    std::erase_if(members_, [&](const KeyedSolution& m) { return dominates(p, m.entry.objectives.as_point()); });
    members_.push_back(s);
    while (members_.size() > capacity_) {
      const auto crowd = crowding_distance(points());
      const auto worst = std::min_element(crowd.begin(), crowd.end()) - crowd.begin();
      members_.erase(members_.begin() + worst);
    }
  }

  /// Binary tournament preferring the less crowded member.
  const KeyedSolution& pick_leader(Rng& rng) const {
    if (members_.size() == 1) return members_.front();
    const auto crowd = crowding_distance(points());
    const std::size_t a = uniform_index(rng, members_.size());
    const std::size_t b = uniform_index(rng, members_.size());
    return crowd[a] >= crowd[b] ? members_[a] : members_[b];
  }

  const KeyedSolution& random_member(Rng& rng) const { return members_[uniform_index(rng, members_.size())]; }

  ParetoArchive to_archive(Provenance p) const {
    ParetoArchive out(std::move(p));
    for (const auto& m : members_) out.insert(m.entry);
    return out;
  }

  std::size_t size() const { return members_.size(); }

 private:
  std::vector<std::array<double, 3>> points() const {
    std::vector<std::array<double, 3>> pts;
    pts.reserve(members_.size());
    for (const auto& m : members_) pts.push_back(m.entry.objectives.as_point());
    return pts;
  }

  std::size_t capacity_;
  std::vector<KeyedSolution> members_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// MOPSO

struct SwarmConfig {
  std::size_t population = 40;
  std::size_t iterations = 100;
  double c1 = 1.5;       // individual learning factor
  double c2 = 1.5;       // group learning factor
  double inertia = 0.8;
  double max_velocity = 1.0;
  std::size_t archive_capacity = 100;
  std::uint64_t seed = 1;
};

inline ParetoArchive run_mopso(const Instance& inst, const SwarmConfig& cfg) {
  if (cfg.population == 0) throw Error(Errc::InvalidConfig, "population must be positive");
  Rng rng(splitmix64(cfg.seed));
  detail::KeyArchive archive(cfg.archive_capacity);
  const std::size_t n = cfg.population;

  std::vector<detail::KeyedSolution> current(n), best(n);
  std::vector<std::vector<double>> velocity(n);
  for (std::size_t i = 0; i < n; ++i) {
    current[i] = detail::evaluate_keys(random_keys(inst, rng), inst, stream_seed(cfg.seed, 0, i));
    velocity[i].assign(current[i].keys.dimension(), 0.0);
    best[i] = current[i];
    archive.offer(current[i]);
  }

  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const RandomKeyVector& leader = archive.pick_leader(rng).keys;
      RandomKeyVector x = current[i].keys;
      for (std::size_t d = 0; d < velocity[i].size(); ++d) {
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        double v = cfg.inertia * velocity[i][d] + cfg.c1 * r1 * (best[i].keys.at(d) - x.at(d)) +
                   cfg.c2 * r2 * (leader.at(d) - x.at(d));
        v = std::clamp(v, -cfg.max_velocity, cfg.max_velocity);
        velocity[i][d] = v;
        x.at(d) = std::clamp(x.at(d) + v, 0.0, 1.0);
      }
      current[i] = detail::evaluate_keys(x, inst, stream_seed(cfg.seed, it, i));
      const auto p = current[i].entry.objectives.as_point();
      const auto q = best[i].entry.objectives.as_point();
      if (dominates(p, q) || (!dominates(q, p) && bernoulli(rng, 0.5))) best[i] = current[i];
      archive.offer(current[i]);
    }
  }
  return archive.to_archive({"mopso", cfg.seed, instance_hash(inst)});
}

// ---------------------------------------------------------------------------
// NSWOA

struct WhaleConfig {
  std::size_t population = 40;
  std::size_t iterations = 100;
  double spiral_b = 1.0;
  std::size_t archive_capacity = 100;
  std::uint64_t seed = 1;
};

/// Encircling / search move: leader - A * |C * leader - x|, per key.
inline RandomKeyVector whale_encircle(const RandomKeyVector& x, const RandomKeyVector& leader, double a_coef,
                                      double c_coef) {
  RandomKeyVector out = x;
  for (std::size_t d = 0; d < x.dimension(); ++d) {
    out.at(d) = leader.at(d) - a_coef * std::abs(c_coef * leader.at(d) - x.at(d));
  }
  return out;
}

/// Logarithmic spiral around the leader: |leader - x| * e^(b l) * cos(2 pi l) + leader.
inline RandomKeyVector whale_spiral(const RandomKeyVector& x, const RandomKeyVector& leader, double b, double l) {
  RandomKeyVector out = x;
  const double factor = std::exp(b * l) * std::cos(2.0 * std::numbers::pi * l);
  for (std::size_t d = 0; d < x.dimension(); ++d) {
    out.at(d) = std::abs(leader.at(d) - x.at(d)) * factor + leader.at(d);
  }
  return out;
}

inline void clamp_keys(RandomKeyVector& v) {
  for (auto& line : v.keys) {
    for (double& k : line) k = std::clamp(k, 0.0, 1.0);
  }
}

inline ParetoArchive run_nswoa(const Instance& inst, const WhaleConfig& cfg) {
  if (cfg.population == 0) throw Error(Errc::InvalidConfig, "population must be positive");
  Rng rng(splitmix64(cfg.seed));
  detail::KeyArchive archive(cfg.archive_capacity);
  const std::size_t n = cfg.population;

  std::vector<detail::KeyedSolution> pod(n);
  for (std::size_t i = 0; i < n; ++i) {
    pod[i] = detail::evaluate_keys(random_keys(inst, rng), inst, stream_seed(cfg.seed, 0, i));
    archive.offer(pod[i]);
  }

  const double total = static_cast<double>(std::max<std::size_t>(cfg.iterations, 1));
  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    const double a = 2.0 - 2.0 * static_cast<double>(it - 1) / total;  // 2 -> 0
    std::vector<detail::KeyedSolution> offspring(n);
    for (std::size_t i = 0; i < n; ++i) {
      const RandomKeyVector& leader = archive.random_member(rng).keys;
      const double A = 2.0 * a * uniform01(rng) - a;
      const double C = 2.0 * uniform01(rng);
      const double p = uniform01(rng);
      const double l = 2.0 * uniform01(rng) - 1.0;
      RandomKeyVector next;
      if (p < 0.5) {
        next = std::abs(A) < 1.0 ? whale_encircle(pod[i].keys, leader, A, C)
                                 : whale_encircle(pod[i].keys, pod[uniform_index(rng, n)].keys, A, C);
      } else {
        next = whale_spiral(pod[i].keys, leader, cfg.spiral_b, l);
      }
      clamp_keys(next);
      offspring[i] = detail::evaluate_keys(next, inst, stream_seed(cfg.seed, it, i));
      archive.offer(offspring[i]);
    }

    // survivors: non-dominated sorting with crowding distance on the boundary front
    std::vector<detail::KeyedSolution> merged = std::move(pod);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    std::vector<std::array<double, 3>> pts;
    for (const auto& m : merged) pts.push_back(m.entry.objectives.as_point());
    const Fronts fronts = nondominated_sort(pts);
    pod.clear();
    for (const auto& front : fronts) {
      if (pod.size() + front.size() <= n) {
        for (std::size_t i : front) pod.push_back(merged[i]);
        continue;
      }
      std::vector<std::array<double, 3>> fp;
      for (std::size_t i : front) fp.push_back(pts[i]);
      const auto crowd = crowding_distance(fp);
      std::vector<std::size_t> order(front.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return crowd[x] > crowd[y]; });
      for (std::size_t k = 0; pod.size() < n; ++k) pod.push_back(merged[front[order[k]]]);
      break;
    }
  }
  return archive.to_archive({"nswoa", cfg.seed, instance_hash(inst)});
}

}  // namespace mpmdl
