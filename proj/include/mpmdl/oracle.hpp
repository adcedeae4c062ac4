#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mpmdl/archive.hpp"
#include "mpmdl/codec.hpp"
#include "mpmdl/evaluator.hpp"
#include "mpmdl/instance_io.hpp"
#include "mpmdl/model.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

inline constexpr std::size_t kOracleOrderLimit = 200;

/// Exhaustive front: every combination of per-line topological orders,
/// decoded `decode_samples` times under distinct seeds, Pareto-filtered.
/// Throws TooLarge when a line has more than `order_limit` orders.
inline ParetoArchive brute_force_front(const Instance& inst, std::size_t decode_samples, std::uint64_t seed,
                                       std::size_t order_limit = kOracleOrderLimit) {
  std::array<std::vector<Sequence>, kLineCount> orders;
  for (int o = 0; o < kLineCount; ++o) {
    orders[o] = enumerate_topological_orders(inst.lines[static_cast<std::size_t>(o)].precedence, order_limit);
  }
  ParetoArchive front(Provenance{"oracle", seed, instance_hash(inst)});
  std::uint64_t combo = 0;
  for (const auto& s1 : orders[0]) {
    for (const auto& s2 : orders[1]) {
      for (const auto& s3 : orders[2]) {
        Chromosome c{{s1, s2, s3}};
        for (std::size_t k = 0; k < std::max<std::size_t>(decode_samples, 1); ++k) {
          Rng rng(stream_seed(seed, combo, k));
          Evaluation e = evaluate(c, inst, rng);
          front.insert({e.objectives, c, std::move(e.schedule)});
        }
        ++combo;
      }
    }
  }
  return front;
}

}  // namespace mpmdl
