#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mpmdl/archive.hpp"
#include "mpmdl/error.hpp"
#include "mpmdl/pareto.hpp"

namespace mpmdl {

// ---------------------------------------------------------------------------
// Hypervolume

struct HypervolumeResult {
  double volume = 0.0;
  std::vector<std::size_t> beyond_ref;  // input indices excluded for exceeding the reference point
};

namespace detail {

inline double hv_2d(std::vector<std::vector<double>> pts, const std::vector<double>& ref) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); });
  double vol = 0.0;
  double ceiling = ref[1];
  for (const auto& p : pts) {
    if (p[1] < ceiling) {
      vol += (ref[0] - p[0]) * (ceiling - p[1]);
      ceiling = p[1];
    }
  }
  return vol;
}

// Slices along the last of the first `dim` coordinates.
inline double hv_slice(std::vector<std::vector<double>> pts, const std::vector<double>& ref, std::size_t dim) {
  if (pts.empty()) return 0.0;
  if (dim == 1) {
    double lo = ref[0];
    for (const auto& p : pts) lo = std::min(lo, p[0]);
    return ref[0] - lo;
  }
  if (dim == 2) return hv_2d(std::move(pts), ref);
  const std::size_t axis = dim - 1;
  std::sort(pts.begin(), pts.end(), [axis](const auto& a, const auto& b) { return a[axis] < b[axis]; });
  double vol = 0.0;
  std::vector<std::vector<double>> below;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    below.push_back(pts[i]);
    const double z = pts[i][axis];
    const double z_next = i + 1 < pts.size() ? pts[i + 1][axis] : ref[axis];
    if (z_next > z) vol += hv_slice(below, ref, dim - 1) * (z_next - z);
  }
  return vol;
}

}  // namespace detail

/// Exact Lebesgue measure of the union of boxes [p, ref] (minimization).
template <class P>
HypervolumeResult hypervolume(const std::vector<P>& front, const std::vector<double>& ref) {
  HypervolumeResult out;
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < front.size(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < ref.size(); ++k) inside = inside && front[i][k] <= ref[k];
    if (!inside) {
      out.beyond_ref.push_back(i);
      continue;
    }
    pts.emplace_back(front[i].begin(), front[i].end());
  }
  pts = pareto_filter_points(pts);
  out.volume = detail::hv_slice(std::move(pts), ref, ref.size());
  return out;
}

// ---------------------------------------------------------------------------
// IGD

/// Mean distance from each reference point to its nearest front point.
template <class P, class Q>
double igd(const std::vector<P>& front, const std::vector<Q>& reference) {
  if (reference.empty()) throw Error(Errc::EmptyFront, "IGD needs a non-empty reference front");
  if (front.empty()) throw Error(Errc::EmptyFront, "IGD of an empty front is undefined");
  double total = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : front) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < r.size(); ++k) {
        const double diff = static_cast<double>(r[k]) - static_cast<double>(p[k]);
        d2 += diff * diff;
      }
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

// ---------------------------------------------------------------------------
// Comparison-group normalization and reporting

/// Min-max bounds over every point of a comparison group; a flat axis maps to 0.
struct Normalization {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  std::array<double, 3> apply(const std::array<double, 3>& p) const {
    std::array<double, 3> out{};
    for (std::size_t k = 0; k < 3; ++k) {
      const double range = hi[k] - lo[k];
      out[k] = range > 0.0 ? (p[k] - lo[k]) / range : 0.0;
    }
    return out;
  }
  std::vector<std::array<double, 3>> apply(const std::vector<std::array<double, 3>>& pts) const {
    std::vector<std::array<double, 3>> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(apply(p));
    return out;
  }
};

inline Normalization normalization_over(const std::vector<std::array<double, 3>>& pts) {
  Normalization n;
  n.lo.fill(std::numeric_limits<double>::infinity());
  n.hi.fill(-std::numeric_limits<double>::infinity());
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < 3; ++k) {
      n.lo[k] = std::min(n.lo[k], p[k]);
      n.hi[k] = std::max(n.hi[k], p[k]);
    }
  }
  if (pts.empty()) {
    n.lo.fill(0.0);
    n.hi.fill(1.0);
  }
  return n;
}

/// Reference point for HV on normalized objectives.
inline constexpr double kHvReferenceCoordinate = 1.1;

struct ObjectiveStats {
  double max = 0.0;
  double min = 0.0;
  double ave = 0.0;
};

struct RunIndicators {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t front_size = 0;
  double hv = 0.0;
  double igd = 0.0;
};

struct AlgorithmSummary {
  std::string algorithm;
  std::size_t runs = 0;
  std::array<ObjectiveStats, 3> objectives{};
  ObjectiveStats hv;
  ObjectiveStats igd;
  double hv_median = 0.0;
  double igd_median = 0.0;
};

struct IndicatorReport {
  std::vector<RunIndicators> runs;
  std::vector<AlgorithmSummary> algorithms;  // in order of first appearance
  std::vector<std::array<double, 3>> reference_front;  // raw objective values
  Normalization normalization;
  std::vector<double> hv_reference{kHvReferenceCoordinate, kHvReferenceCoordinate, kHvReferenceCoordinate};
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

inline ObjectiveStats stats_of(const std::vector<double>& v) {
  ObjectiveStats s;
  if (v.empty()) return s;
  s.max = *std::max_element(v.begin(), v.end());
  s.min = *std::min_element(v.begin(), v.end());
  double sum = 0.0;
  for (double x : v) sum += x;
  s.ave = sum / static_cast<double>(v.size());
  return s;
}

/// HV and IGD for every run against the non-dominated union of all runs,
/// on objectives min-max normalized over that union; plus per-algorithm
/// Max / Min / Ave of each objective over all archive points of its runs.
inline IndicatorReport summarize(const std::vector<ParetoArchive>& runs) {
  IndicatorReport report;
  std::vector<std::array<double, 3>> all;
  for (const auto& r : runs) {
    for (const auto& p : r.points()) all.push_back(p);
  }
  report.reference_front = pareto_filter_points(all);
  report.normalization = normalization_over(report.reference_front);
  const auto ref_norm = report.normalization.apply(report.reference_front);

  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> by_algo;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& name = runs[i].provenance().algorithm;
    if (!by_algo.contains(name)) order.push_back(name);
    by_algo[name].push_back(i);

    RunIndicators ri;
    ri.algorithm = name;
    ri.seed = runs[i].provenance().seed;
    ri.front_size = runs[i].size();
    const auto pts = report.normalization.apply(runs[i].points());
    ri.hv = hypervolume(pts, report.hv_reference).volume;
    ri.igd = pts.empty() ? std::numeric_limits<double>::infinity() : igd(pts, ref_norm);
    report.runs.push_back(ri);
  }

  for (const auto& name : order) {
    AlgorithmSummary s;
    s.algorithm = name;
    std::array<std::vector<double>, 3> values;
    std::vector<double> hvs, igds;
    for (std::size_t i : by_algo[name]) {
      ++s.runs;
      for (const auto& p : runs[i].points()) {
        for (std::size_t k = 0; k < 3; ++k) values[k].push_back(p[k]);
      }
      hvs.push_back(report.runs[i].hv);
      igds.push_back(report.runs[i].igd);
    }
    for (std::size_t k = 0; k < 3; ++k) s.objectives[k] = stats_of(values[k]);
    s.hv = stats_of(hvs);
    s.igd = stats_of(igds);
    s.hv_median = median(hvs);
    s.igd_median = median(igds);
    report.algorithms.push_back(std::move(s));
  }
  return report;
}

}  // namespace mpmdl
