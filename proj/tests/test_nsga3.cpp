#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace mpmdl;
using namespace mpmdl::testing;

namespace {

// Published case-study front (f1, f2, f3).
const std::vector<std::array<double, 3>> kCaseFront{{40, 27, 3241}, {39, 25, 3297}, {36, 27, 3460}, {37, 26, 3409},
                                                 {38, 26, 3341}, {41, 24, 3204}, {34, 29, 3641}, {35, 28, 3553}};

// Pairwise brute force: i is dominated iff some j is <= everywhere and < somewhere.
bool brute_dominated(const std::vector<std::array<double, 3>>& pts, std::size_t i) {
  for (std::size_t j = 0; j < pts.size(); ++j) {
    bool le = true, lt = false;
    for (int k = 0; k < 3; ++k) {
      le = le && pts[j][k] <= pts[i][k];
      lt = lt || pts[j][k] < pts[i][k];
    }
    if (j != i && le && lt) return true;
  }
  return false;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(ReferencePoints, Counts) {
  EXPECT_EQ(reference_points(3, 5).size(), 21u);
  for (std::size_t m = 1; m <= 8; ++m) EXPECT_EQ(reference_points(3, m).size(), binomial(m + 2, 2));
  const ReferencePointSet two{{0, 1}, {1, 0}};
  auto r = reference_points(2, 1);
  std::sort(r.begin(), r.end());
  EXPECT_EQ(r, two);
  auto unit = reference_points(3, 1);
  std::sort(unit.begin(), unit.end());
  const ReferencePointSet units{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  EXPECT_EQ(unit, units);
}

TEST(ReferencePoints, OnSimplex) {
  for (const auto& p : reference_points(3, 12)) {
    double s = 0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      s += x;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(NondominatedSort, CaseFrontIsOneFront) {
  const auto fronts = nondominated_sort(kCaseFront);
  ASSERT_EQ(fronts.size(), 1u);
  EXPECT_EQ(fronts[0].size(), 8u);
  for (std::size_t i = 0; i < kCaseFront.size(); ++i) EXPECT_FALSE(brute_dominated(kCaseFront, i));
}

TEST(NondominatedSort, TwoLayers) {
  const std::vector<std::array<double, 3>> pts{{2, 2, 2}, {1, 1, 1}};
  const Fronts expected{{1}, {0}};
  EXPECT_EQ(nondominated_sort(pts), expected);
}

TEST(NondominatedSort, DuplicatesShareFront) {
  std::vector<std::array<double, 3>> pts = kCaseFront;
  pts.push_back({5, 5, 5});
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) pts.push_back(pts[i]);
  const auto ranks = front_ranks(nondominated_sort(pts), pts.size());
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(ranks[i], ranks[i + n]);
}

TEST(NondominatedSort, PropertyMatchesBruteForce) {
  Rng rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::array<double, 3>> pts(30);
    for (auto& p : pts) {
      for (auto& x : p) x = static_cast<double>(uniform_index(rng, 6));
    }
    const auto fronts = nondominated_sort(pts);
    std::vector<bool> first(pts.size(), false);
    for (std::size_t i : fronts[0]) first[i] = true;
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(first[i], !brute_dominated(pts, i));
    // every later-front member is dominated by some member of the previous front
    for (std::size_t f = 1; f < fronts.size(); ++f) {
      for (std::size_t i : fronts[f]) {
        bool found = false;
        for (std::size_t j : fronts[f - 1]) found = found || dominates(pts[j], pts[i]);
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(ParetoFilter, CaseFrontRetained) { EXPECT_EQ(pareto_filter_points(kCaseFront).size(), 8u); }

TEST(ParetoFilter, DuplicateAndChain) {
  const std::vector<std::array<double, 3>> dup{{1, 1, 1}, {1, 1, 1}, {2, 0, 5}};
  const std::vector<std::array<double, 3>> expected{{1, 1, 1}, {2, 0, 5}};
  EXPECT_EQ(pareto_filter_points(dup), expected);
  const std::vector<std::array<double, 3>> chain{{3, 3, 3}, {1, 1, 1}, {2, 2, 2}};
  EXPECT_EQ(pareto_filter_points(chain), (std::vector<std::array<double, 3>>{{1, 1, 1}}));
}

TEST(ParetoArchive, InsertKeepsMutualNonDominance) {
  ParetoArchive a;
  EXPECT_TRUE(a.insert({{3, 3.0, 3.0}, {}, {}}));
  EXPECT_FALSE(a.insert({{3, 3.0, 3.0}, {}, {}}));
  EXPECT_FALSE(a.insert({{4, 3.0, 3.0}, {}, {}}));
  EXPECT_TRUE(a.insert({{2, 4.0, 3.0}, {}, {}}));
  EXPECT_TRUE(a.insert({{2, 2.0, 2.0}, {}, {}}));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.entries()[0].objectives, (ObjectiveVector{2, 2.0, 2.0}));
}

TEST(ParetoArchive, SortedOutput) {
  std::vector<ObjectiveVector> v;
  for (const auto& p : kCaseFront) v.push_back({static_cast<int>(p[0]), p[1], p[2]});
  const auto a = pareto_filter(v);
  const auto pts = a.points();
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  EXPECT_EQ(pts.front()[0], 34);
}

TEST(CrowdingDistance, BoundariesInfinite) {
  const std::vector<std::array<double, 2>> pts{{0, 4}, {1, 2}, {4, 0}};
  const auto d = crowding_distance(pts);
  EXPECT_TRUE(std::isinf(d[0]));
  EXPECT_TRUE(std::isinf(d[2]));
  EXPECT_DOUBLE_EQ(d[1], 1.0 + 1.0);
}

TEST(NicheSelect, ExactFitIsIdentity) {
  const std::vector<std::array<double, 3>> pts{{1, 2, 3}, {3, 2, 1}, {5, 5, 5}, {6, 6, 6}};
  const auto fronts = nondominated_sort(pts);
  Rng rng(1);
  auto sel = niche_select(pts, fronts, reference_points(3, 4), 3, rng);
  std::sort(sel.selected.begin(), sel.selected.end());
  EXPECT_EQ(sel.selected, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(NicheSelect, IdenticalBoundaryIsUniformSubset) {
  // first front {0}; boundary front is eight identical points, two slots left
  std::vector<std::array<double, 3>> pts{{0, 0, 0}};
  for (int i = 0; i < 8; ++i) pts.push_back({1, 1, 1});
  const auto fronts = nondominated_sort(pts);
  ASSERT_EQ(fronts.size(), 2u);
  std::vector<int> hits(pts.size(), 0);
  const int trials = 8000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(static_cast<std::uint64_t>(t));
    const auto sel = niche_select(pts, fronts, reference_points(3, 5), 3, rng);
    ASSERT_EQ(sel.selected.size(), 3u);
    ASSERT_EQ(std::count(sel.selected.begin(), sel.selected.end(), 0u), 1);
    std::set<std::size_t> distinct(sel.selected.begin(), sel.selected.end());
    ASSERT_EQ(distinct.size(), 3u);
    for (std::size_t i : sel.selected) ++hits[i];
  }
  // each boundary member picked with probability 2/8
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_NEAR(hits[i] / static_cast<double>(trials), 0.25, 0.03);
}

TEST(NicheSelect, DistinctDirectionsEachAdmittedOnce) {
  // 21 candidates lying exactly on the 21 reference directions, scaled to a
  // common plane, plus a dominating point that fixes the ideal at the origin
  const auto refs = reference_points(3, 5);
  std::vector<std::array<double, 3>> pts;
  for (const auto& r : refs) pts.push_back({1 + 10 * r[0], 1 + 10 * r[1], 1 + 10 * r[2]});
  pts.push_back({0, 0, 0});
  const auto fronts = nondominated_sort(pts);
  ASSERT_EQ(fronts.size(), 2u);
  ASSERT_EQ(fronts[1].size(), 21u);
  Rng rng(4);
  const auto sel = niche_select(pts, fronts, refs, 22, rng);
  std::set<std::size_t> distinct(sel.selected.begin(), sel.selected.end());
  EXPECT_EQ(distinct.size(), 22u);
}

TEST(NicheSelect, SpreadPrefersEmptyNiches) {
  // candidates cluster on one direction except one outlier on another: when
  // only two of the boundary may enter, the outlier must be one of them
  std::vector<std::array<double, 3>> pts{{0, 0, 0}};
  for (int i = 0; i < 6; ++i) pts.push_back({10.0 + 0.01 * i, 1.0 - 0.001 * i, 10.0});
  pts.push_back({1, 10, 10});
  const auto fronts = nondominated_sort(pts);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto sel = niche_select(pts, fronts, reference_points(3, 4), 3, rng);
    EXPECT_NE(std::find(sel.selected.begin(), sel.selected.end(), pts.size() - 1), sel.selected.end());
  }
}

TEST(SolveLinear, Identity) {
  std::vector<double> x;
  ASSERT_TRUE(detail::solve_linear({{2, 0}, {0, 4}}, {2, 2}, x));
  EXPECT_DOUBLE_EQ(x[0], 1.0);
  EXPECT_DOUBLE_EQ(x[1], 0.5);
  EXPECT_FALSE(detail::solve_linear({{1, 1}, {1, 1}}, {1, 2}, x));
}
