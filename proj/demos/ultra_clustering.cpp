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

// Clusters a small planar point cloud: subdominant ultrametric, center family,
// then the retraction X(4) -> X(2) applied to a few sets.

#include <cstdio>
#include <vector>

#include "finset/finset.hpp"

int main() {
  using namespace finset;
  const std::vector<Point2> pts{{0, 0}, {0.3, 0.1}, {0.2, 0.4}, {5, 5}, {5.2, 5.1}, {9, 0}, {9.4, 0.3}};
  const auto X = FiniteMetricSpace::from_points(pts, EuclideanDistance{});
  const auto rho = subdominant_ultrametric(X);
  const auto c = disconnection_constant(X);
  std::printf("disconnection constant %.4f between points %zu and %zu\n", c.constant, c.endpoints.first,
              c.endpoints.second);

  const auto family = build_centers(rho);
  std::printf("center family: %zu levels, verified %s\n", family.levels.size(),
              verify_center_family(rho, family).ok() ? "yes" : "no");
  for (const IndexSet& A : {IndexSet{0, 1, 3, 5}, IndexSet{0, 3, 4, 6}, IndexSet{1, 2, 5, 6}}) {
    const auto r = generic_retract(family, A, 4, 2);
    std::printf("%s -> %s\n", io::set_token(A).c_str(), io::set_token(r).c_str());
  }

  const auto sets = enumerate_subsets(index_universe(X.size()), 4);
  const auto lip = estimate_constant_exhaustive(
      sets, [&](const IndexSet& A) { return generic_retract(family, A, 4, 2); }, X);
  std::printf("Lipschitz constant in the original metric: %.4f (ultrametric bound 5, scaled by 1/c = %.4f)\n",
              lip.constant, 5.0 / c.constant);
}
