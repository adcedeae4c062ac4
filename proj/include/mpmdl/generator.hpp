#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpmdl/error.hpp"
#include "mpmdl/model.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

struct GeneratorConfig {
  std::array<int, kLineCount> tasks_per_line{20, 20, 20};
  std::array<VehicleModel, kLineCount> models{VehicleModel::Fuel, VehicleModel::Mixed, VehicleModel::Fuel};
  double edge_density = 0.1;  // probability of an edge i->j for each i < j, before transitive reduction
  double time_min_s = 30.0;
  double time_max_s = 240.0;
  double energy_rate_min = 0.02;
  double energy_rate_max = 0.12;
  double hazardous_fraction = 0.1;
  double high_value_fraction = 0.2;
  double takt_s = 650.0;
  EnergyRates rates{20.0, 40.0, 90.0, 55.0};
};

enum class ScalePreset { Small, Medium, Large };

inline std::optional<ScalePreset> parse_scale(const std::string& s) {
  if (s == "small") return ScalePreset::Small;
  if (s == "medium") return ScalePreset::Medium;
  if (s == "large") return ScalePreset::Large;
  return std::nullopt;
}

inline const char* scale_name(ScalePreset s) {
  switch (s) {
    case ScalePreset::Small: return "small";
    case ScalePreset::Medium: return "medium";
    case ScalePreset::Large: return "large";
  }
  return "?";
}

/// 20 / 40 / 80 tasks per line.
inline GeneratorConfig generator_preset(ScalePreset scale) {
  GeneratorConfig cfg;
  const int n = scale == ScalePreset::Small ? 20 : scale == ScalePreset::Medium ? 40 : 80;
  cfg.tasks_per_line = {n, n, n};
  // keep the expected number of raw edges per task roughly constant
  cfg.edge_density = scale == ScalePreset::Small ? 0.1 : scale == ScalePreset::Medium ? 0.05 : 0.025;
  return cfg;
}

namespace detail {

// Drops every edge implied by a longer path. Nodes are numbered so that all
// edges go from lower to higher id.
inline std::vector<Edge> transitive_reduction(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n) + 1,
                                       std::vector<bool>(static_cast<std::size_t>(n) + 1, false));
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n) + 1);
  for (const auto& [a, b] : edges) succ[a].push_back(b);
  for (int v = n; v >= 1; --v) {
    for (int s : succ[v]) {
      reach[v][s] = true;
      for (int w = s + 1; w <= n; ++w) {
        if (reach[s][w]) reach[v][w] = true;
      }
    }
  }
  std::vector<Edge> kept;
  for (const auto& [a, b] : edges) {
    bool implied = false;
    for (int s : succ[a]) {
      if (s != b && s < b && reach[s][b]) {
        implied = true;
        break;
      }
    }
    if (!implied) kept.emplace_back(a, b);
  }
  return kept;
}

inline double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace detail

/// Seeded synthetic instance. Times are whole seconds and energy rates are
/// rounded to 1e-3 so the JSON form is compact and round-trips exactly.
inline Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
  if (!(cfg.takt_s > 0.0)) throw Error(Errc::InfeasibleSpec, "takt must be positive");
  if (!(cfg.time_min_s > 0.0) || cfg.time_min_s > cfg.time_max_s) {
    throw Error(Errc::InfeasibleSpec, "time range must satisfy 0 < min <= max");
  }
  if (std::ceil(cfg.time_min_s) > cfg.time_max_s || std::floor(cfg.time_max_s) > cfg.takt_s) {
    throw Error(Errc::InfeasibleSpec, "time range [" + std::to_string(cfg.time_min_s) + ", " +
                                          std::to_string(cfg.time_max_s) + "] does not fit under takt " +
                                          std::to_string(cfg.takt_s));
  }
  if (cfg.edge_density < 0.0 || cfg.edge_density > 1.0 || cfg.hazardous_fraction < 0.0 ||
      cfg.hazardous_fraction > 1.0 || cfg.high_value_fraction < 0.0 || cfg.high_value_fraction > 1.0) {
    throw Error(Errc::InfeasibleSpec, "densities and fractions must lie in [0, 1]");
  }
  if (cfg.energy_rate_min < 0.0 || cfg.energy_rate_min > cfg.energy_rate_max) {
    throw Error(Errc::InfeasibleSpec, "energy rate range must satisfy 0 <= min <= max");
  }
  if (cfg.models[0] == VehicleModel::Mixed || cfg.models[2] == VehicleModel::Mixed) {
    throw Error(Errc::InfeasibleSpec, "side lines cannot carry the mixed model");
  }

  Rng rng(splitmix64(seed));
  std::uniform_int_distribution<long> time_dist(static_cast<long>(std::ceil(cfg.time_min_s)),
                                                static_cast<long>(std::floor(cfg.time_max_s)));
  std::uniform_real_distribution<double> rate_dist(cfg.energy_rate_min, cfg.energy_rate_max);

  Instance inst;
  inst.takt_s = cfg.takt_s;
  inst.rates = cfg.rates;
  for (int o = 0; o < kLineCount; ++o) {
    const int n = cfg.tasks_per_line[static_cast<std::size_t>(o)];
    if (n < 0) throw Error(Errc::InfeasibleSpec, "negative task count");
    LineSpec line;
    line.line_index = o + 1;
    line.vehicle_model = cfg.models[static_cast<std::size_t>(o)];
    for (int id = 1; id <= n; ++id) {
      Task t;
      t.id = id;
      t.time_s = static_cast<double>(time_dist(rng));
      t.energy_rate = std::max(cfg.energy_rate_min, detail::round_to(rate_dist(rng), 1e-3));
      t.hazardous = bernoulli(rng, cfg.hazardous_fraction);
      t.high_value = bernoulli(rng, cfg.high_value_fraction);
      line.tasks.push_back(t);
    }
    std::vector<Edge> edges;
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        if (bernoulli(rng, cfg.edge_density)) edges.emplace_back(a, b);
      }
    }
    line.precedence = PrecedenceGraph(n, detail::transitive_reduction(n, edges));
    inst.lines.push_back(std::move(line));
  }
  return validate_instance(std::move(inst));
}

/// A single line of the given model, drawn from the generator. Used to build
/// task templates for vehicle models an instance does not carry.
inline LineSpec generate_line(const GeneratorConfig& cfg, VehicleModel model, int line_index, std::uint64_t seed) {
  GeneratorConfig one = cfg;
  one.models = {VehicleModel::Fuel, model, VehicleModel::Fuel};
  one.tasks_per_line = {0, cfg.tasks_per_line[1], 0};
  LineSpec line = generate_instance(one, splitmix64(seed ^ (static_cast<std::uint64_t>(model) + 1))).lines[1];
  line.line_index = line_index;
  return line;
}

}  // namespace mpmdl
