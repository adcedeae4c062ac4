#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "mpmdl/archive.hpp"
#include "mpmdl/codec.hpp"
#include "mpmdl/evaluator.hpp"
#include "mpmdl/instance_io.hpp"
#include "mpmdl/nsga3.hpp"
#include "mpmdl/pareto.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

/// Defaults are the case-study settings: 200 individuals, 20 generations,
/// pc 0.8, pm 0.1, three objectives, five reference divisions.
struct EvoConfig {
  std::size_t population = 200;
  std::size_t generations = 20;
  double pc = 0.8;
  double pm = 0.1;
  std::size_t objectives = 3;
  std::size_t divisions = 5;
  std::uint64_t seed = 1;
  unsigned workers = 1;  // evaluation threads; results do not depend on it
  EncodeRules rules{};
  DecodeOptions decode{};
};

inline void validate_config(const EvoConfig& cfg) {
  if (cfg.population == 0) throw Error(Errc::InvalidConfig, "population must be positive");
  if (cfg.generations == 0) throw Error(Errc::InvalidConfig, "generations must be positive");
  if (!(cfg.pc >= 0.0 && cfg.pc <= 1.0)) throw Error(Errc::InvalidConfig, "pc must lie in [0, 1]");
  if (!(cfg.pm >= 0.0 && cfg.pm <= 1.0)) throw Error(Errc::InvalidConfig, "pm must lie in [0, 1]");
  if (cfg.divisions == 0) throw Error(Errc::InvalidConfig, "divisions must be >= 1");
  if (cfg.objectives != 3) throw Error(Errc::InvalidConfig, "the model has exactly three objectives");
}

struct Individual {
  Chromosome chromosome;
  Schedule schedule;
  ObjectiveVector objectives;
  std::uint64_t decode_seed = 0;
};

// ---------------------------------------------------------------------------
// Equivalent-task-set operators

/// Places two same-cell tasks u (earlier) and v (later) next to each other in
/// swapped order. Tasks strictly between them are moved, in order, to follow
/// the pair; with adjacent tasks this is a plain swap. Same-cell tasks share
/// every predecessor and successor, so nothing between them is ordered
/// relative to either and the result stays a topological order.
inline Sequence exchange_equivalent(const Sequence& seq, int a, int b) {
  auto ia = std::find(seq.begin(), seq.end(), a);
  auto ib = std::find(seq.begin(), seq.end(), b);
  if (ia == seq.end() || ib == seq.end() || ia == ib) return seq;
  if (ib < ia) std::swap(ia, ib);
  Sequence out(seq.begin(), ia);
  out.push_back(*ib);
  out.push_back(*ia);
  out.insert(out.end(), ia + 1, ib);
  out.insert(out.end(), ib + 1, seq.end());
  return out;
}

struct CrossoverOutcome {
  Chromosome first;
  Chromosome second;
  int lines_changed = 0;
  int lines_without_cell = 0;  // crossover drawn but the line has no cell with two tasks
};

/// Per line with probability pc: draw a cell with at least two tasks, draw two
/// of its tasks, and apply the same exchange to both parents.
inline CrossoverOutcome crossover(const Chromosome& a, const Chromosome& b, const EquivalenceCells& cells, double pc,
                                  Rng& rng) {
  CrossoverOutcome out{a, b};
  for (int o = 0; o < kLineCount; ++o) {
    if (!bernoulli(rng, pc)) continue;
    std::vector<const std::vector<int>*> eligible;
    for (const auto& cell : cells[o]) {
      if (cell.size() >= 2) eligible.push_back(&cell);
    }
    if (eligible.empty()) {
      ++out.lines_without_cell;
      continue;
    }
    const auto& cell = *eligible[uniform_index(rng, eligible.size())];
    const std::size_t i = uniform_index(rng, cell.size());
    std::size_t j = uniform_index(rng, cell.size() - 1);
    if (j >= i) ++j;
    out.first.lines[o] = exchange_equivalent(a.lines[o], cell[i], cell[j]);
    out.second.lines[o] = exchange_equivalent(b.lines[o], cell[i], cell[j]);
    ++out.lines_changed;
  }
  return out;
}

/// Keeps seq[0..position) (position is 1-based and inclusive) and re-encodes
/// the rest with the encoder's rules.
inline Sequence reinitialize_after(const LineSpec& line, const Sequence& seq, std::size_t position, VisitLedger& ledger,
                                   Rng& rng, const EncodeRules& rules = {}) {
  const std::size_t keep = std::min(position, seq.size());
  return encode_suffix(line, std::span<const int>(seq.data(), keep), ledger, rng, rules);
}

/// Per line with probability pm: draw a cell, draw one of its tasks, and
/// re-encode everything after that task's position.
inline Chromosome mutate(const Chromosome& c, const Instance& inst, const EquivalenceCells& cells, VisitLedger& ledger,
                         double pm, Rng& rng, const EncodeRules& rules = {}) {
  Chromosome out = c;
  for (int o = 0; o < kLineCount; ++o) {
    if (!bernoulli(rng, pm) || cells[o].empty()) continue;
    const auto& cell = cells[o][uniform_index(rng, cells[o].size())];
    const int task = cell[uniform_index(rng, cell.size())];
    const auto& seq = c.lines[o];
    const std::size_t position = static_cast<std::size_t>(std::find(seq.begin(), seq.end(), task) - seq.begin()) + 1;
    out.lines[o] = reinitialize_after(inst.lines[static_cast<std::size_t>(o)], seq, position, ledger, rng, rules);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared NSGA-III generational loop

/// Variation policy consumed by run_reference_point_ga:
///   Chromosome initialize(Rng&);
///   std::pair<Chromosome, Chromosome> recombine(const Chromosome&, const Chromosome&, Rng&);
///   Chromosome perturb(const Chromosome&, Rng&);
template <class V>
concept VariationPolicy = requires(V v, const Chromosome& c, Rng& rng) {
  { v.initialize(rng) } -> std::same_as<Chromosome>;
  { v.recombine(c, c, rng) } -> std::same_as<std::pair<Chromosome, Chromosome>>;
  { v.perturb(c, rng) } -> std::same_as<Chromosome>;
};

using GenerationObserver = std::function<void(std::size_t generation, const ParetoArchive& elite)>;

namespace detail {

inline void evaluate_all(std::vector<Individual>& pop, const Instance& inst, const DecodeOptions& opts,
                         unsigned workers) {
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng r(pop[i].decode_seed);
      Evaluation e = evaluate(pop[i].chromosome, inst, r, opts);
      pop[i].schedule = std::move(e.schedule);
      pop[i].objectives = e.objectives;
    }
  };
  const std::size_t n = pop.size();
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  if (w == 1) {
    run(0, n);
    return;
  }
  std::vector<std::jthread> threads;
  const std::size_t chunk = (n + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) threads.emplace_back(run, begin, end);
  }
}

inline void absorb(ParetoArchive& elite, const std::vector<Individual>& pop) {
  for (const auto& ind : pop) elite.insert({ind.objectives, ind.chromosome, ind.schedule});
}

}  // namespace detail

/// NSGA-III loop: evaluate the initial population, then per generation
/// produce n offspring by binary tournament on (rank, niche occupancy),
/// recombination and perturbation, and keep n survivors of parents plus
/// offspring by non-dominated sorting and reference-point niching. A
/// cumulative elite archive of every evaluated individual is returned.
template <VariationPolicy V>
ParetoArchive run_reference_point_ga(const Instance& inst, const EvoConfig& cfg, V& variation, std::string algorithm,
                                     const GenerationObserver& observer = {}) {
  validate_config(cfg);
  Rng rng(splitmix64(cfg.seed));
  const auto refs = reference_points(cfg.objectives, cfg.divisions);
  const std::size_t n = cfg.population;
  ParetoArchive elite(Provenance{std::move(algorithm), cfg.seed, instance_hash(inst)});

  std::vector<Individual> pop(n);
  for (std::size_t i = 0; i < n; ++i) {
    pop[i].chromosome = variation.initialize(rng);
    pop[i].decode_seed = stream_seed(cfg.seed, 0, i);
  }
  detail::evaluate_all(pop, inst, cfg.decode, cfg.workers);
  detail::absorb(elite, pop);
  if (observer) observer(0, elite);

  std::vector<std::size_t> rank(n, 0);
  std::vector<std::size_t> crowd(n, 0);
  {
    std::vector<std::array<double, 3>> pts;
    for (const auto& ind : pop) pts.push_back(ind.objectives.as_point());
    rank = front_ranks(nondominated_sort(pts), n);
  }

  auto tournament = [&]() -> std::size_t {
    const std::size_t a = uniform_index(rng, pop.size());
    const std::size_t b = uniform_index(rng, pop.size());
    if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
    if (crowd[a] != crowd[b]) return crowd[a] < crowd[b] ? a : b;
    return bernoulli(rng, 0.5) ? a : b;
  };

  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(n + 1);
    while (offspring.size() < n) {
      const Chromosome& p1 = pop[tournament()].chromosome;
      const Chromosome& p2 = pop[tournament()].chromosome;
      auto [c1, c2] = variation.recombine(p1, p2, rng);
      offspring.push_back({variation.perturb(c1, rng), {}, {}, 0});
      if (offspring.size() < n) offspring.push_back({variation.perturb(c2, rng), {}, {}, 0});
    }
    for (std::size_t i = 0; i < n; ++i) offspring[i].decode_seed = stream_seed(cfg.seed, gen, i);
    detail::evaluate_all(offspring, inst, cfg.decode, cfg.workers);
    detail::absorb(elite, offspring);

    std::vector<Individual> merged = std::move(pop);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()), std::make_move_iterator(offspring.end()));
    std::vector<std::array<double, 3>> pts;
    pts.reserve(merged.size());
    for (const auto& ind : merged) pts.push_back(ind.objectives.as_point());
    const Fronts fronts = nondominated_sort(pts);
    const auto merged_rank = front_ranks(fronts, merged.size());
    NicheSelection sel = niche_select(pts, fronts, refs, n, rng);

    pop.clear();
    rank.assign(sel.selected.size(), 0);
    crowd.assign(sel.selected.size(), 0);
    for (std::size_t k = 0; k < sel.selected.size(); ++k) {
      rank[k] = merged_rank[sel.selected[k]];
      crowd[k] = sel.niche_count[k];
      pop.push_back(std::move(merged[sel.selected[k]]));
    }
    if (observer) observer(gen, elite);
  }
  return elite;
}

// ---------------------------------------------------------------------------
// INSGA-III

/// Ledger-guided initialization, equivalent-task-set crossover, and
/// suffix re-encoding mutation. The ledger persists across the whole run.
class EquivalentSetVariation {
 public:
  EquivalentSetVariation(const Instance& inst, const EvoConfig& cfg, VisitLedger ledger)
      : inst_(inst), cfg_(cfg), cells_(equivalence_cells(inst)), ledger_(std::move(ledger)) {}

  Chromosome initialize(Rng& rng) { return encode(inst_, ledger_, rng, cfg_.rules); }

  std::pair<Chromosome, Chromosome> recombine(const Chromosome& a, const Chromosome& b, Rng& rng) {
    auto out = crossover(a, b, cells_, cfg_.pc, rng);
    return {std::move(out.first), std::move(out.second)};
  }

  Chromosome perturb(const Chromosome& c, Rng& rng) {
    return mutate(c, inst_, cells_, ledger_, cfg_.pm, rng, cfg_.rules);
  }

  const VisitLedger& ledger() const noexcept { return ledger_; }
  const EquivalenceCells& cells() const noexcept { return cells_; }

 private:
  const Instance& inst_;
  const EvoConfig& cfg_;
  EquivalenceCells cells_;
  VisitLedger ledger_;
};

struct InsgaRun {
  ParetoArchive archive;
  VisitLedger ledger;
};

/// Full run returning the final ledger as well, optionally warm-started from
/// an earlier run's ledger on the same instance shape.
inline InsgaRun run_insga3_with_ledger(const Instance& inst, const EvoConfig& cfg,
                                       std::optional<VisitLedger> warm_ledger = std::nullopt,
                                       const GenerationObserver& observer = {}) {
  VisitLedger ledger = warm_ledger && warm_ledger->compatible_with(inst) ? *warm_ledger : VisitLedger(inst);
  EquivalentSetVariation variation(inst, cfg, std::move(ledger));
  ParetoArchive archive = run_reference_point_ga(inst, cfg, variation, "insga3", observer);
  return {std::move(archive), variation.ledger()};
}

inline ParetoArchive run_insga3(const Instance& inst, const EvoConfig& cfg) {
  return run_insga3_with_ledger(inst, cfg).archive;
}

}  // namespace mpmdl
