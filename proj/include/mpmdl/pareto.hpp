#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace mpmdl {

/// Relative tolerance under which two objective values count as equal.
/// Integer-valued objectives (station counts) compare exactly under it.
inline constexpr double kObjectiveRelEps = 1e-9;

inline bool objective_equal(double a, double b, double rel_eps = kObjectiveRelEps) {
  if (a == b) return true;
  return std::abs(a - b) <= rel_eps * std::max(std::abs(a), std::abs(b));
}

template <class P>
bool points_equal(const P& a, const P& b, double rel_eps = kObjectiveRelEps) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!objective_equal(a[i], b[i], rel_eps)) return false;
  }
  return true;
}

/// Minimization dominance: a is no worse everywhere and strictly better somewhere.
template <class P>
bool dominates(const P& a, const P& b, double rel_eps = kObjectiveRelEps) {
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (objective_equal(a[i], b[i], rel_eps)) continue;
    if (a[i] > b[i]) return false;
    strictly_better = true;
  }
  return strictly_better;
}

using Fronts = std::vector<std::vector<std::size_t>>;

/// Fast non-dominated sort; front members keep input order.
template <class P>
Fronts nondominated_sort(const std::vector<P>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominator_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated[i].push_back(j);
        ++dominator_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }
  Fronts fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

/// Rank of every point (0 = first front).
inline std::vector<std::size_t> front_ranks(const Fronts& fronts, std::size_t n) {
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    for (std::size_t i : fronts[f]) rank[i] = f;
  }
  return rank;
}

/// Indices of the non-dominated points with one representative per group of
/// equal points (the earliest), sorted lexicographically by objective value.
template <class P>
std::vector<std::size_t> pareto_filter_indices(const std::vector<P>& points) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j) {
      if (j == i) continue;
      if (dominates(points[j], points[i])) drop = true;
      else if (j < i && points_equal(points[j], points[i])) drop = true;
    }
    if (!drop) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(points[a].begin(), points[a].end(), points[b].begin(), points[b].end());
  });
  return kept;
}

template <class P>
std::vector<P> pareto_filter_points(const std::vector<P>& points) {
  std::vector<P> out;
  for (std::size_t i : pareto_filter_indices(points)) out.push_back(points[i]);
  return out;
}

/// NSGA-II crowding distance within one set of points; boundary points get +inf.
template <class P>
std::vector<double> crowding_distance(const std::vector<P>& points) {
  const std::size_t n = points.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) return std::vector<double>(n, std::numeric_limits<double>::infinity());
  const std::size_t m = points.front().size();
  std::vector<std::size_t> idx(n);
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return points[a][k] < points[b][k]; });
    const double lo = points[idx.front()][k];
    const double hi = points[idx.back()][k];
    dist[idx.front()] = dist[idx.back()] = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dist[idx[i]] += (points[idx[i + 1]][k] - points[idx[i - 1]][k]) / (hi - lo);
    }
  }
  return dist;
}

}  // namespace mpmdl
