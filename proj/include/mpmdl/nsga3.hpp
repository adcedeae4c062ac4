#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "mpmdl/pareto.hpp"
#include "mpmdl/rng.hpp"

namespace mpmdl {

using ReferencePointSet = std::vector<std::vector<double>>;

/// Das-Dennis lattice: every vector with components in {0, 1/M, ..., 1}
/// summing to one. C(M + N - 1, N - 1) points.
inline ReferencePointSet reference_points(std::size_t n_objectives, std::size_t divisions) {
  ReferencePointSet out;
  std::vector<std::size_t> parts(n_objectives, 0);
  auto recurse = [&](auto&& self, std::size_t dim, std::size_t left) -> void {
    if (dim + 1 == n_objectives) {
      parts[dim] = left;
      std::vector<double> p(n_objectives);
      for (std::size_t i = 0; i < n_objectives; ++i) p[i] = static_cast<double>(parts[i]) / static_cast<double>(divisions);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      parts[dim] = k;
      self(self, dim + 1, left - k);
    }
  };
  if (n_objectives >= 1 && divisions >= 1) recurse(recurse, 0, divisions);
  return out;
}

struct NicheSelection {
  std::vector<std::size_t> selected;      // indices into the candidate list
  std::vector<std::size_t> niche_count;   // per selected member: final occupancy of its niche
  bool used_fallback_normalization = false;
};

namespace detail {

// Solves A x = b (square) by Gaussian elimination with partial pivoting.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

}  // namespace detail

/// Reference-point niching. Whole fronts are taken while they fit; the
/// boundary front is split by associating every candidate with its nearest
/// reference direction (perpendicular distance, after translating by the
/// ideal point and scaling by the extreme-point hyperplane intercepts) and
/// repeatedly admitting a member of the least crowded niche. Ties are broken
/// uniformly at random. Degenerate intercepts fall back to (worst - ideal).
template <class P>
NicheSelection niche_select(const std::vector<P>& points, const Fronts& fronts, const ReferencePointSet& refs,
                            std::size_t target, Rng& rng) {
  NicheSelection result;
  std::vector<std::size_t> considered;
  std::size_t last = 0;
  for (; last < fronts.size(); ++last) {
    if (considered.size() + fronts[last].size() > target) break;
    considered.insert(considered.end(), fronts[last].begin(), fronts[last].end());
  }
  result.selected = considered;
  if (considered.size() == target || last == fronts.size() || refs.empty()) {
    result.niche_count.assign(result.selected.size(), 0);
    if (result.selected.size() < target && last < fronts.size()) {
      // no reference directions: admit the boundary front in order
      for (std::size_t i : fronts[last]) {
        if (result.selected.size() == target) break;
        result.selected.push_back(i);
        result.niche_count.push_back(0);
      }
    }
    return result;
  }
  const std::vector<std::size_t>& boundary = fronts[last];
  std::vector<std::size_t> pool = considered;
  pool.insert(pool.end(), boundary.begin(), boundary.end());

  const std::size_t m = points[pool.front()].size();
  std::vector<double> ideal(m, std::numeric_limits<double>::infinity());
  std::vector<double> worst(m, -std::numeric_limits<double>::infinity());
  for (std::size_t i : pool) {
    for (std::size_t k = 0; k < m; ++k) {
      ideal[k] = std::min(ideal[k], static_cast<double>(points[i][k]));
      worst[k] = std::max(worst[k], static_cast<double>(points[i][k]));
    }
  }
  auto translated = [&](std::size_t i, std::size_t k) { return static_cast<double>(points[i][k]) - ideal[k]; };

  // extreme point per axis by achievement scalarizing function
  std::vector<std::vector<double>> extremes;
  for (std::size_t axis = 0; axis < m; ++axis) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = pool.front();
    for (std::size_t i : pool) {
      double asf = 0.0;
      for (std::size_t k = 0; k < m; ++k) asf = std::max(asf, translated(i, k) / (k == axis ? 1.0 : 1e-6));
      if (asf < best) {
        best = asf;
        arg = i;
      }
    }
    std::vector<double> e(m);
    for (std::size_t k = 0; k < m; ++k) e[k] = translated(arg, k);
    extremes.push_back(std::move(e));
  }
  std::vector<double> intercept(m, 0.0);
  std::vector<double> plane;
  bool ok = detail::solve_linear(extremes, std::vector<double>(m, 1.0), plane);
  if (ok) {
    for (std::size_t k = 0; k < m; ++k) {
      intercept[k] = 1.0 / plane[k];
      if (!std::isfinite(intercept[k]) || intercept[k] <= 1e-10) ok = false;
    }
  }
  if (!ok) {
    result.used_fallback_normalization = true;
    for (std::size_t k = 0; k < m; ++k) intercept[k] = worst[k] - ideal[k];
  }
  for (double& a : intercept) {
    if (!(a > 1e-10)) a = 1.0;
  }

  // association
  const std::size_t pool_size = pool.size();
  std::vector<std::size_t> assoc(pool_size);
  std::vector<double> dist(pool_size);
  for (std::size_t pi = 0; pi < pool_size; ++pi) {
    std::vector<double> f(m);
    for (std::size_t k = 0; k < m; ++k) f[k] = translated(pool[pi], k) / intercept[k];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      const auto& w = refs[r];
      double wf = 0.0, ww = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        wf += w[k] * f[k];
        ww += w[k] * w[k];
      }
      double d2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        const double diff = f[k] - wf / ww * w[k];
        d2 += diff * diff;
      }
      if (d2 < best) {
        best = d2;
        assoc[pi] = r;
      }
    }
    dist[pi] = std::sqrt(best);
  }

  std::vector<std::size_t> niche(refs.size(), 0);
  for (std::size_t pi = 0; pi < considered.size(); ++pi) ++niche[assoc[pi]];

  // boundary members still waiting, grouped by niche (positions into pool)
  std::vector<std::vector<std::size_t>> waiting(refs.size());
  for (std::size_t pi = considered.size(); pi < pool_size; ++pi) waiting[assoc[pi]].push_back(pi);

  std::vector<std::size_t> chosen_pool_pos(considered.size());
  for (std::size_t i = 0; i < considered.size(); ++i) chosen_pool_pos[i] = i;

  std::vector<std::size_t> open;
  while (result.selected.size() < target) {
    open.clear();
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < refs.size(); ++r) {
      if (waiting[r].empty()) continue;
      if (niche[r] < fewest) {
        fewest = niche[r];
        open.clear();
      }
      if (niche[r] == fewest) open.push_back(r);
    }
    const std::size_t r = open[uniform_index(rng, open.size())];
    auto& members = waiting[r];
    std::size_t pick_slot;
    if (niche[r] == 0) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<std::size_t> ties;
      for (std::size_t s = 0; s < members.size(); ++s) {
        const double d = dist[members[s]];
        if (d < best) {
          best = d;
          ties.assign(1, s);
        } else if (d == best) {
          ties.push_back(s);
        }
      }
      pick_slot = ties[uniform_index(rng, ties.size())];
    } else {
      pick_slot = uniform_index(rng, members.size());
    }
    const std::size_t pi = members[pick_slot];
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick_slot));
    ++niche[r];
    result.selected.push_back(pool[pi]);
    chosen_pool_pos.push_back(pi);
  }
  result.niche_count.reserve(result.selected.size());
  for (std::size_t pi : chosen_pool_pos) result.niche_count.push_back(niche[assoc[pi]]);
  return result;
}

}  // namespace mpmdl
