/*
 * Copyright 2026 The finset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "finset/analysis/constant.hpp"
#include "finset/analysis/obstruction.hpp"
#include "finset/analysis/paths.hpp"
#include "finset/generators.hpp"
#include "finset/line.hpp"

namespace finset {
namespace {

using Rational = boost::multiprecision::cpp_rational;

TEST(EstimateConstantTest, ExhaustiveIsOrderIndependent) {
  const std::vector<double> grid{0, 1, 2, 4, 5, 9, 10};
  auto sets = enumerate_subsets(grid, 3);
  auto f = [](const LineSet& A) { return line_retract(A, 3); };
  const auto a = estimate_constant_exhaustive(sets, f, AbsDistance{});
  std::mt19937_64 rng(1);
  std::shuffle(sets.begin(), sets.end(), rng);
  const auto b = estimate_constant_exhaustive(sets, f, AbsDistance{});
  EXPECT_EQ(a.constant, b.constant);
  ASSERT_TRUE(b.witness);
  const auto& [A, B] = *b.witness;
  EXPECT_DOUBLE_EQ(hausdorff(f(A), f(B)) / hausdorff(A, B), b.constant);
  EXPECT_EQ(a.pairs_examined, sets.size() * (sets.size() - 1) / 2);
}

TEST(EstimateConstantTest, IdentityHasConstantOne) {
  const SubsetDomain<double> dom(std::vector<double>{0, 1, 3, 7}, 2);
  const auto r = estimate_constant(dom, [](const LineSet& A) { return A; }, AbsDistance{});
  EXPECT_DOUBLE_EQ(r.constant, 1.0);
  EXPECT_EQ(r.kind(), "lipschitz");
}

TEST(EstimateConstantTest, SampledModeIsReportedAndBounded) {
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(i * 0.5 + (i % 3) * 0.1);
  const SubsetDomain<double> dom(grid, 3);
  EstimateOptions opts;
  opts.seed = 3;
  opts.samples = 4000;
  const auto r = estimate_constant(dom, [](const LineSet& A) { return line_retract(A, 3); }, AbsDistance{}, opts);
  EXPECT_EQ(r.mode, SearchMode::sampled);
  EXPECT_GT(r.constant, 1.0);
  EXPECT_LE(r.constant, 9.0 + 1e-9);
  const auto again = estimate_constant(dom, [](const LineSet& A) { return line_retract(A, 3); }, AbsDistance{}, opts);
  EXPECT_EQ(r.constant, again.constant);
}

TEST(EstimateConstantTest, RejectsBadExponent) {
  const std::vector<LineSet> sets{LineSet{0}, LineSet{1}};
  EXPECT_THROW(estimate_constant_exhaustive(sets, [](const LineSet& A) { return A; }, AbsDistance{}, 1.5), Error);
}

TEST(EstimateConstantTest, RescalingLeavesConstantUnchanged) {
  const std::vector<double> grid{0, 1, 2.5, 4, 4.5, 8};
  const std::vector<double> scaled{0, 3, 7.5, 12, 13.5, 24};
  auto f = [](const LineSet& A) { return line_retract(A, 3); };
  const auto a = estimate_constant_exhaustive(enumerate_subsets(grid, 3), f, AbsDistance{});
  const auto b = estimate_constant_exhaustive(enumerate_subsets(scaled, 3), f, AbsDistance{});
  EXPECT_NEAR(a.constant, b.constant, 1e-9);
}

TEST(DisplacementTest, DetectsViolations) {
  const std::vector<double> grid{0, 1, 2, 5};
  const auto sets = enumerate_subsets(grid, 3);
  const auto good = check_displacement_factor(
      std::span<const LineSet>(sets), [](const LineSet& A) { return line_retract(A, 3); }, 3, 2.0, AbsDistance{});
  EXPECT_TRUE(good.ok);
  const auto bad = check_displacement_factor(
      std::span<const LineSet>(sets), [](const LineSet& A) { return line_retract(A, 3); }, 3, 0.5, AbsDistance{});
  EXPECT_FALSE(bad.ok);
  ASSERT_TRUE(bad.worst);
}

SampledPath<double> two_cluster_path(double far) {
  SampledPath<double> f;
  for (int i = 0; i <= 10; ++i) {
    const double t = i / 10.0;
    f.t.push_back(t);
    f.values.emplace_back(std::vector<double>{0.2 * t, 0.5 - 0.1 * t, far + 0.5 * t});
  }
  return f;
}

TEST(SplitGhTest, SplitsTwoClusters) {
  const auto f = two_cluster_path(20.0);
  const auto s = split_gh(f, 0, LineSet{0.0, 0.5}, 1.0, 1.0, 3, AbsDistance{});
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(s.g.values[i].size(), 2u);
    EXPECT_EQ(s.h.values[i].size(), 1u);
  }
  EXPECT_LE(s.g_lipschitz, 1.0);
  EXPECT_LE(s.h_lipschitz, 1.0);
}

TEST(SplitGhTest, Preconditions) {
  const auto f = two_cluster_path(20.0);
  // not maximal: {0} can be extended by 0.5
  EXPECT_THROW(split_gh(f, 0, LineSet{0.0}, 1.0, 1.0, 3, AbsDistance{}), Error);
  // not wide enough
  EXPECT_THROW(split_gh(two_cluster_path(4.0), 0, LineSet{0.0, 0.5}, 1.0, 1.0, 3, AbsDistance{}), Error);
  // E not inside f(z0)
  EXPECT_THROW(split_gh(f, 0, LineSet{0.0, 0.7}, 1.0, 1.0, 3, AbsDistance{}), Error);
  // D below the domain diameter
  EXPECT_THROW(split_gh(f, 0, LineSet{0.0, 0.5}, 1.0, 0.5, 3, AbsDistance{}), Error);
}

TEST(DecomposePathTest, RecoversPlanarBranches) {
  SampledPath<Point2> f;
  std::vector<std::vector<Point2>> truth(3);
  for (int i = 0; i < 200; ++i) {
    const double t = i / 199.0;
    f.t.push_back(t);
    const Point2 a{std::cos(t), std::sin(t)}, b{3 + t, 0.5 * t}, c{-2.0, 4 - t};
    truth[0].push_back(a);
    truth[1].push_back(b);
    truth[2].push_back(c);
    f.values.emplace_back(std::vector<Point2>{a, b, c});
  }
  const auto dec = decompose_path(f, EuclideanDistance{});
  ASSERT_EQ(dec.branches.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& first = dec.branches[k].front();
    const auto it = std::find_if(truth.begin(), truth.end(), [&](const auto& tr) { return tr.front() == first; });
    ASSERT_NE(it, truth.end());
    EXPECT_EQ(dec.branches[k], *it);
  }
}

TEST(DecomposePathTest, RejectsCoarseSampling) {
  SampledPath<double> f;
  f.t = {0, 1};
  f.values = {LineSet{0, 1}, LineSet{0.6, 1.4}};
  EXPECT_THROW(decompose_path(f, AbsDistance{}), Error);
  f.values = {LineSet{0, 1}, LineSet{0.5}};
  EXPECT_THROW(decompose_path(f, AbsDistance{}), Error);
}

TEST(MergeCurveTest, TightCase) {
  SampledPath<double> g;
  for (int i = 0; i <= 50; ++i) {
    const double t = i / 50.0;
    g.t.push_back(t);
    g.values.emplace_back(std::vector<double>{-1 + t, 1 - t});
  }
  const auto m = merge_curve(g, AbsDistance{});
  EXPECT_NEAR(m.length, 2.0, 1e-9);
  EXPECT_NEAR(m.ell, 1.0, 1e-9);
  EXPECT_EQ(m.points.front(), -1.0);
  EXPECT_EQ(m.points.back(), 1.0);
}

TEST(MergeCurveTest, NeedsSingleton) {
  SampledPath<double> g;
  g.t = {0, 1};
  g.values = {LineSet{0, 1}, LineSet{0, 1}};
  try {
    merge_curve(g, AbsDistance{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_singleton);
  }
}

TEST(QcBoundsTest, ValuesAndMonotonicity) {
  const auto b = qc_bounds(1.0);
  EXPECT_EQ(b.r, 1.0 / 1536.0);
  EXPECT_EQ(b.M, 16.0);
  double r = b.r, M = b.M;
  for (double L : {1.5, 2.0, 4.0}) {
    const auto c = qc_bounds(L);
    EXPECT_LT(c.r, r);
    EXPECT_GT(c.M, M);
    r = c.r;
    M = c.M;
  }
  EXPECT_THROW(qc_bounds(0.5), Error);
}

TEST(QuasiconvexityTest, SegmentIsNearlyOne) {
  const auto seg = as_metric_space(generate("grid:lo=0,hi=1,N=51"));
  const auto r = quasiconvexity_constant(seg, 0.02);
  EXPECT_TRUE(r.connected);
  EXPECT_NEAR(r.constant, 1.0, 1e-9);
}

TEST(QuasiconvexityTest, SmallGapDisconnects) {
  const auto s = as_metric_space(generate("interval_union:intervals=-1:0;0.1:1,step=0.05"));
  const auto r = quasiconvexity_constant(s, 0.05);
  EXPECT_FALSE(r.connected);
  EXPECT_EQ(r.components, 2u);
  EXPECT_NEAR(r.gap, 0.1, 1e-12);
  EXPECT_TRUE(std::isinf(r.constant));
}

TEST(QuasiconvexityTest, ParallelLinesDisconnect) {
  const auto s = as_metric_space(generate("lattice_lines:W=2,step=0.25,rows=2"));
  const auto r = quasiconvexity_constant(s, 0.3);
  EXPECT_FALSE(r.connected);
  EXPECT_NEAR(r.gap, 1.0, 1e-12);
}

TEST(WitnessTest, LeastKAndValidation) {
  for (double L : {1.0, 2.0, 5.0}) {
    const auto w = nonlcp_witness(L);
    EXPECT_TRUE(validate_chain_witness(w).ok);
    // Independent scan for the least admissible k.
    std::uint64_t k = 2;
    for (;; ++k) {
      const Rational x(1, k * k * k), y(1, k * k + 1), z(1, k * k), Lr(static_cast<long>(L));
      if (2 * x < y && 2 * Lr * x * x < y * y && 2 * (Lr + 1) * (z - y) < x) break;
    }
    EXPECT_EQ(w.k, k);
    EXPECT_EQ(w.x, k * k * k);
    EXPECT_LE(w.max_step, (1 + 1e-12) / static_cast<double>(w.x * w.x));
  }
}

TEST(WitnessTest, ValidatorRejectsTampering) {
  auto w = nonlcp_witness(1.0);
  auto broken = w;
  broken.chain.erase(broken.chain.begin() + 1);
  EXPECT_FALSE(validate_chain_witness(broken).ok);
  broken = w;
  broken.chain.back() = broken.chain.front();
  EXPECT_FALSE(validate_chain_witness(broken).ok);
  broken = w;
  broken.y = broken.z;
  EXPECT_FALSE(validate_chain_witness(broken).ok);
  broken = w;
  broken.L = 1000;
  EXPECT_FALSE(validate_chain_witness(broken).ok);
}

}  // namespace
}  // namespace finset
