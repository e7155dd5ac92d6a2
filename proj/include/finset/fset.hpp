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
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "finset/error.hpp"

namespace finset {

namespace detail {

// Scale-aware closeness used to canonicalize floating-point sets.
inline bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// A nonempty finite set of points, stored sorted and duplicate-free.
///
/// The sorted canonical form makes set equality structural. For floating-point
/// points, values closer than `tol * max(1, |x|)` are merged on construction so
/// that rounding in retraction formulas cannot create spurious extra points.
template <class P>
class FSet {
 public:
  using value_type = P;
  using const_iterator = typename std::vector<P>::const_iterator;

  explicit FSet(std::vector<P> elems, double tol = kDefaultTolerance)
      : elems_(std::move(elems)) {
    if (elems_.empty()) throw Error(ErrorCode::empty_set, "FSet must be nonempty");
    std::sort(elems_.begin(), elems_.end());
    if constexpr (std::is_floating_point_v<P>) {
      std::vector<P> merged;
      merged.reserve(elems_.size());
      for (const P& x : elems_) {
        if (merged.empty() || !detail::nearly_equal(merged.back(), x, tol)) merged.push_back(x);
      }
      elems_ = std::move(merged);
    } else {
      elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }
  }

  FSet(std::initializer_list<P> elems) : FSet(std::vector<P>(elems)) {}

  std::size_t size() const noexcept { return elems_.size(); }
  const_iterator begin() const noexcept { return elems_.begin(); }
  const_iterator end() const noexcept { return elems_.end(); }
  const P& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<P>& elements() const noexcept { return elems_; }

  const P& min() const { return elems_.front(); }
  const P& max() const { return elems_.back(); }

  bool contains(const P& p) const { return std::binary_search(elems_.begin(), elems_.end(), p); }

  /// The set with its least element removed; requires at least two elements.
  FSet without_min() const {
    if (elems_.size() < 2) throw Error(ErrorCode::empty_set, "cannot remove the only element");
    return FSet(std::vector<P>(elems_.begin() + 1, elems_.end()));
  }

  friend bool operator==(const FSet&, const FSet&) = default;
  friend auto operator<=>(const FSet& a, const FSet& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.elems_.begin(), a.elems_.end(),
                                                  b.elems_.begin(), b.elems_.end());
  }

 private:
  std::vector<P> elems_;
};

using LineSet = FSet<double>;
using IndexSet = FSet<std::size_t>;

/// Set equality up to `tol` (element-wise, after canonicalization).
template <class P>
bool approx_equal(const FSet<P>& a, const FSet<P>& b, double tol = kDefaultTolerance) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (std::is_floating_point_v<P>) {
      if (!detail::nearly_equal(a[i], b[i], tol)) return false;
    } else {
      if (!(a[i] == b[i])) return false;
    }
  }
  return true;
}

/// Number of subsets of an `universe_size`-element set with 1..max_size
/// elements, saturating at SIZE_MAX.
inline std::size_t count_subsets(std::size_t universe_size, std::size_t max_size) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  double binom = 1.0;
  for (std::size_t k = 1; k <= std::min(max_size, universe_size); ++k) {
    binom = binom * static_cast<double>(universe_size - k + 1) / static_cast<double>(k);
    if (binom + static_cast<double>(total) >= static_cast<double>(kMax)) return kMax;
    total += static_cast<std::size_t>(std::llround(binom));
  }
  return total;
}

/// All subsets of `universe` with 1..max_size elements, ordered by size and then
/// lexicographically by universe position. Throws when more than `cap` would be
/// produced.
template <class P>
std::vector<FSet<P>> enumerate_subsets(std::span<const P> universe, std::size_t max_size,
                                       std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t total = count_subsets(universe.size(), max_size);
  if (total > cap) {
    throw Error(ErrorCode::enumeration_cap,
                "enumeration of " + std::to_string(total) + " subsets exceeds cap " +
                    std::to_string(cap));
  }
  std::vector<FSet<P>> out;
  out.reserve(total);
  const std::size_t N = universe.size();
  for (std::size_t k = 1; k <= std::min(max_size, N); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<P> elems;
      elems.reserve(k);
      for (std::size_t i : idx) elems.push_back(universe[i]);
      out.emplace_back(std::move(elems), 0.0);
      // advance to the next combination
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == N - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

template <class P>
std::vector<FSet<P>> enumerate_subsets(const std::vector<P>& universe, std::size_t max_size,
                                       std::size_t cap = kDefaultEnumerationCap) {
  return enumerate_subsets(std::span<const P>(universe), max_size, cap);
}

/// Indices 0..n-1, the universe of a finite metric space.
inline std::vector<std::size_t> index_universe(std::size_t n) {
  std::vector<std::size_t> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = i;
  return u;
}

}  // namespace finset
