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

// Prints exhaustive Lipschitz constants of the line retraction on a few grids
// next to the bound 4n - 3.

#include <cstdio>
#include <vector>

#include "finset/finset.hpp"

int main() {
  using namespace finset;
  const std::vector<std::vector<double>> grids{
      {0, 1, 2, 3, 4, 5, 6, 7},
      {0, 1, 3, 7, 15, 31, 63},
      {0, 0.1, 0.15, 2, 2.05, 7, 7.5, 7.6, 9},
  };
  std::printf("%-6s %-3s %-10s %-6s %s\n", "grid", "n", "constant", "bound", "witness");
  for (std::size_t g = 0; g < grids.size(); ++g)
    for (std::size_t n : {2, 3, 4}) {
      const auto sets = enumerate_subsets(grids[g], n);
      const auto r = estimate_constant_exhaustive(
          sets, [n](const LineSet& A) { return line_retract(A, n); }, AbsDistance{});
      std::printf("%-6zu %-3zu %-10.6f %-6.0f %s | %s\n", g, n, r.constant, line_retract_constant(n),
                  io::set_token(r.witness->first).c_str(), io::set_token(r.witness->second).c_str());
    }
}
