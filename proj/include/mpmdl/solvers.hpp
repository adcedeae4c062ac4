#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mpmdl/baselines.hpp"
#include "mpmdl/generator.hpp"
#include "mpmdl/insga3.hpp"

namespace mpmdl {

enum class Algorithm { Insga3, Nsga3, Mopso, Nswoa };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{Algorithm::Insga3, Algorithm::Nsga3, Algorithm::Mopso,
                                                         Algorithm::Nswoa};

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Insga3: return "insga3";
    case Algorithm::Nsga3: return "nsga3";
    case Algorithm::Mopso: return "mopso";
    case Algorithm::Nswoa: return "nswoa";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (Algorithm a : kAllAlgorithms) {
    if (s == algorithm_name(a)) return a;
  }
  return std::nullopt;
}

/// Parameters shared by every optimizer; each one reads the fields it uses.
struct AlgorithmParams {
  std::size_t population = 40;
  std::size_t iterations = 100;
  double pc = 0.7;
  double pm = 0.1;
  double c1 = 1.5;
  double c2 = 1.5;
  double inertia = 0.8;
  std::size_t divisions = 5;
  unsigned workers = 1;
};

/// Comparison parameter sets per problem scale; 100 iterations throughout.
inline AlgorithmParams algorithm_preset(ScalePreset scale) {
  AlgorithmParams p;
  switch (scale) {
    case ScalePreset::Small:
      p.population = 20;
      p.pc = 0.5;
      p.pm = 0.05;
      p.c1 = p.c2 = 0.8;
      p.inertia = 0.5;
      break;
    case ScalePreset::Medium:
      p.population = 40;
      p.pc = 0.7;
      p.pm = 0.1;
      p.c1 = p.c2 = 1.5;
      p.inertia = 0.8;
      break;
    case ScalePreset::Large:
      p.population = 80;
      p.pc = 0.9;
      p.pm = 0.15;
      p.c1 = p.c2 = 3.0;
      p.inertia = 1.2;
      break;
  }
  p.iterations = 100;
  return p;
}

inline EvoConfig evo_config(const AlgorithmParams& p, std::uint64_t seed) {
  EvoConfig cfg;
  cfg.population = p.population;
  cfg.generations = p.iterations;
  cfg.pc = p.pc;
  cfg.pm = p.pm;
  cfg.divisions = p.divisions;
  cfg.seed = seed;
  cfg.workers = p.workers;
  return cfg;
}

/// (instance, parameters, seed) -> archive, identical for every algorithm.
inline ParetoArchive run_algorithm(Algorithm algo, const Instance& inst, const AlgorithmParams& p, std::uint64_t seed) {
  switch (algo) {
    case Algorithm::Insga3: return run_insga3(inst, evo_config(p, seed));
    case Algorithm::Nsga3: return run_nsga3_vanilla(inst, evo_config(p, seed));
    case Algorithm::Mopso: {
      SwarmConfig cfg;
      cfg.population = p.population;
      cfg.iterations = p.iterations;
      cfg.c1 = p.c1;
      cfg.c2 = p.c2;
      cfg.inertia = p.inertia;
      cfg.seed = seed;
      return run_mopso(inst, cfg);
    }
    case Algorithm::Nswoa: {
      WhaleConfig cfg;
      cfg.population = p.population;
      cfg.iterations = p.iterations;
      cfg.seed = seed;
      return run_nswoa(inst, cfg);
    }
  }
  throw Error(Errc::InvalidConfig, "unknown algorithm");
}

}  // namespace mpmdl
