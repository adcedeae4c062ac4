#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "mpmdl/error.hpp"
#include "mpmdl/insga3.hpp"
#include "mpmdl/model.hpp"

namespace mpmdl {

/// Monthly recycling volumes (vehicles) and single-line monthly capacity.
struct RecyclingVolumes {
  double fuel = 0.0;      // DA_fv
  double electric = 0.0;  // DA_pev
  double single_line = 0.0;  // DA_sl

  double total() const { return fuel + electric; }
};

/// Side-line vehicle models; the middle line always runs mixed.
struct LineAssignment {
  VehicleModel line1 = VehicleModel::Fuel;
  VehicleModel line3 = VehicleModel::Fuel;
  int stage = 1;

  std::array<VehicleModel, kLineCount> models() const { return {line1, VehicleModel::Mixed, line3}; }
  bool same_models(const LineAssignment& o) const { return line1 == o.line1 && line3 == o.line3; }
};

/// Available seconds per line-month (650 s x 451 vehicles).
inline constexpr double kDefaultAvailableSeconds = 293150.0;
inline constexpr double kStageOneBand = 0.25;

/// available / units, floored to whole seconds.
inline double takt_time(double available_s, double units) {
  if (!(units > 0.0)) throw Error(Errc::ZeroDemand, "takt needs a positive demand");
  if (available_s < 0.0) throw Error(Errc::InvalidConfig, "available time must be >= 0");
  return std::floor(available_s / units);
}

/// Vehicles each line must process per month: total volume over three lines,
/// rounded to the nearest vehicle.
inline double units_per_line(const RecyclingVolumes& v) { return std::round(v.total() / kLineCount); }

/// Side-line models from the volume rule table. The minority vehicle type is
/// absorbed by the mixed middle line when it fits one line's capacity;
/// between one and two lines' worth, each side takes one type; two lines'
/// worth or more is outside the table and reported as Overload.
inline LineAssignment assign_line_models(const RecyclingVolumes& v,
                                         const std::optional<LineAssignment>& current = std::nullopt) {
  if (!(v.single_line > 0.0)) throw Error(Errc::InvalidConfig, "single-line capacity must be positive");
  if (v.fuel < 0.0 || v.electric < 0.0) throw Error(Errc::InvalidConfig, "volumes must be >= 0");
  const double minority = std::min(v.fuel, v.electric);
  LineAssignment out;
  if (minority <= v.single_line) {
    // equal volumes: the fuel-minority rule is checked first
    if (v.fuel <= v.electric) {
      out.line1 = out.line3 = VehicleModel::PureElectric;
    } else {
      out.line1 = out.line3 = VehicleModel::Fuel;
    }
  } else if (minority < 2.0 * v.single_line) {
    out.line1 = VehicleModel::Fuel;
    out.line3 = VehicleModel::PureElectric;
  } else {
    throw Error(Errc::Overload, "min(fuel, electric) = " + std::to_string(minority) +
                                    " reaches twice the single-line capacity " + std::to_string(v.single_line));
  }
  out.stage = current && current->same_models(out) ? 1 : 2;
  return out;
}

/// Every vehicle type with volume is accepted by at least one line.
inline bool vehicle_type_cover(const std::array<VehicleModel, kLineCount>& models, const std::set<VehicleModel>& types) {
  for (VehicleModel type : types) {
    bool covered = false;
    for (VehicleModel m : models) covered = covered || m == type || m == VehicleModel::Mixed;
    if (!covered) return false;
  }
  return true;
}

inline bool vehicle_type_cover(const LineAssignment& a, const std::set<VehicleModel>& types) {
  return vehicle_type_cover(a.models(), types);
}

/// Relative drift of each vehicle type; zero-to-zero is no drift, anything
/// from zero is unbounded.
inline double volume_drift(double current, double forecast) {
  if (current == 0.0) return forecast == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(forecast - current) / current;
}

inline bool within_stage_one_band(const RecyclingVolumes& current, const RecyclingVolumes& forecast) {
  return volume_drift(current.fuel, forecast.fuel) <= kStageOneBand &&
         volume_drift(current.electric, forecast.electric) <= kStageOneBand;
}

struct ReplanConfig {
  EvoConfig evo{};
  double available_s = kDefaultAvailableSeconds;
};

/// Stage-one re-plan: same line models, takt recomputed from the forecast,
/// INSGA-III rerun with the previous run's visit ledger as a warm start.
inline InsgaRun stage1_replan(const RecyclingVolumes& current, const RecyclingVolumes& forecast, const Instance& inst,
                              const ReplanConfig& cfg, std::optional<VisitLedger> previous_ledger = std::nullopt) {
  if (!within_stage_one_band(current, forecast)) {
    throw Error(Errc::FluctuationTooLarge,
                "forecast drifts more than 25% from current volumes; reassign line models instead");
  }
  Instance replanned = inst;
  replanned.takt_s = takt_time(cfg.available_s, units_per_line(forecast));
  replanned = validate_instance(std::move(replanned));
  return run_insga3_with_ledger(replanned, cfg.evo, std::move(previous_ledger));
}

}  // namespace mpmdl
