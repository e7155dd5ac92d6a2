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

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/metric_space.hpp"

namespace finset {

/// dist(p, B) = min over b in B of d(p, b).
template <class P, class Metric>
double point_to_set(const P& p, const FSet<P>& B, const Metric& d) {
  double best = std::numeric_limits<double>::infinity();
  for (const P& b : B) best = std::min(best, static_cast<double>(d(p, b)));
  return best;
}

/// Hausdorff distance: the larger of the two directed sup-inf distances.
template <class P, class Metric>
double hausdorff(const FSet<P>& A, const FSet<P>& B, const Metric& d) {
  double h = 0.0;
  for (const P& a : A) h = std::max(h, point_to_set(a, B, d));
  for (const P& b : B) h = std::max(h, point_to_set(b, A, d));
  return h;
}

template <class P>
  requires std::is_arithmetic_v<P>
double hausdorff(const FSet<P>& A, const FSet<P>& B) {
  return hausdorff(A, B, AbsDistance{});
}

/// Minimum separation of A in X(n): the least pairwise distance when |A| = n,
/// and 0 when |A| < n.
template <class P, class Metric>
double min_separation(const FSet<P>& A, std::size_t n, const Metric& d) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "min_separation needs n >= 2");
  if (A.size() > n) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
  if (A.size() < n) return 0.0;
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) m = std::min(m, static_cast<double>(d(A[i], A[j])));
  return m;
}

template <class P>
  requires std::is_arithmetic_v<P>
double min_separation(const FSet<P>& A, std::size_t n) {
  return min_separation(A, n, AbsDistance{});
}

/// Which candidate sets B the distance to X(n-1) ranges over.
enum class CandidateUniverse {
  within_space,  // B drawn from the ground points only
  ambient_line,  // ground points plus midpoints of pairs of A (exact on the line)
};

/// inf { Delta(A, B) : B in X(n-1) } with B drawn from `universe`, by brute force.
template <class P, class Metric>
double dist_to_lower(const FSet<P>& A, std::span<const P> universe, std::size_t n,
                     const Metric& d, std::size_t cap = kDefaultEnumerationCap) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "dist_to_lower needs n >= 2");
  if (A.size() > n) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
  if (A.size() < n) return 0.0;
  if (universe.empty()) throw Error(ErrorCode::empty_set, "empty candidate universe");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& B : enumerate_subsets(universe, n - 1, cap)) best = std::min(best, hausdorff(A, B, d));
  return best;
}

/// dist_to_lower over a finite metric space (candidates within the space).
inline double dist_to_lower(const IndexSet& A, const FiniteMetricSpace& space, std::size_t n,
                            std::size_t cap = kDefaultEnumerationCap) {
  const auto universe = index_universe(space.size());
  return dist_to_lower(A, std::span<const std::size_t>(universe), n, space, cap);
}

/// dist_to_lower for a subset of the line, in either candidate universe.
inline double dist_to_lower(const LineSet& A, const RealLineSpace& space, std::size_t n,
                            CandidateUniverse mode, std::size_t cap = kDefaultEnumerationCap) {
  std::vector<double> universe = space.values();
  if (mode == CandidateUniverse::ambient_line) {
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = i + 1; j < A.size(); ++j) universe.push_back(0.5 * (A[i] + A[j]));
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  }
  return dist_to_lower(A, std::span<const double>(universe), n, AbsDistance{}, cap);
}

/// A bijection between two equal-size sets, with its largest displacement.
template <class P>
struct Matching {
  std::vector<std::pair<P, P>> pairs;
  double max_displacement = 0.0;
};

namespace detail {

template <class P, class Metric>
void require_separated(const FSet<P>& A, const FSet<P>& B, const Metric& d, double h) {
  if (A.size() != B.size())
    throw Error(ErrorCode::precondition_violated, "matching needs |A| = |B|");
  if (A.size() == 1) return;
  const std::size_t n = A.size();
  const double sep = std::max(min_separation(A, n, d), min_separation(B, n, d));
  if (!(sep > 2.0 * h))
    throw Error(ErrorCode::precondition_violated,
                "max(delta_n(A), delta_n(B)) must exceed 2 * Hausdorff distance");
}

}  // namespace detail

/// Bijection phi: A -> B with d(a, phi(a)) <= Delta(A, B), valid when
/// max(delta_n(A), delta_n(B)) > 2 Delta(A, B). Built by nearest-neighbour
/// assignment and then verified.
template <class P, class Metric>
Matching<P> match_bijection(const FSet<P>& A, const FSet<P>& B, const Metric& d,
                            double tol = kDefaultTolerance) {
  const double h = hausdorff(A, B, d);
  detail::require_separated(A, B, d, h);
  Matching<P> m;
  std::vector<bool> used(B.size(), false);
  for (const P& a : A) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < B.size(); ++j)
      if (d(a, B[j]) < d(a, B[best])) best = j;
    if (used[best])
      throw Error(ErrorCode::precondition_violated, "nearest-neighbour assignment is not injective");
    used[best] = true;
    const double disp = d(a, B[best]);
    if (disp > h + tol * std::max(1.0, h))
      throw Error(ErrorCode::precondition_violated, "matched pair farther than Hausdorff distance");
    m.max_displacement = std::max(m.max_displacement, disp);
    m.pairs.emplace_back(a, B[best]);
  }
  return m;
}

/// Increasing bijection between equal-size subsets of the line with
/// |a - phi(a)| <= Delta(A, B), under the same separation precondition.
template <class T>
  requires std::is_arithmetic_v<T>
Matching<T> match_order_preserving(const FSet<T>& A, const FSet<T>& B,
                                   double tol = kDefaultTolerance) {
  const AbsDistance d;
  const double h = hausdorff(A, B, d);
  detail::require_separated(A, B, d, h);
  Matching<T> m;
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double disp = d(A[i], B[i]);
    if (disp > h + tol * std::max(1.0, h))
      throw Error(ErrorCode::precondition_violated, "order-preserving matching exceeds Hausdorff distance");
    m.max_displacement = std::max(m.max_displacement, disp);
    m.pairs.emplace_back(A[i], B[i]);
  }
  return m;
}

}  // namespace finset
