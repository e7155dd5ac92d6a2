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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/hausdorff.hpp"

namespace finset {

/// Number of elements of A strictly below x.
template <class T>
  requires std::is_arithmetic_v<T>
std::size_t rank_below(const FSet<T>& A, T x) {
  return static_cast<std::size_t>(std::lower_bound(A.begin(), A.end(), x) - A.begin());
}

namespace detail {

// delta_n(A) in the value type of A, so integer inputs stay exact.
template <class T>
T line_separation(const FSet<T>& A, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "retraction needs n >= 2");
  if (A.size() > n) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
  if (A.size() < n) return T{0};
  T gap = A[1] - A[0];
  for (std::size_t i = 2; i < A.size(); ++i) gap = std::min<T>(gap, A[i] - A[i - 1]);
  return gap;
}

}  // namespace detail

/// The explicit retraction of R(n) onto R(n-1):
///   r(A) = { x - delta_n(A) * s_A(x) : x in A },  s_A(x) = |A ∩ (-inf, x)|.
/// It is (4n-3)-Lipschitz, keeps min A, and moves no point by more than
/// (n-1) delta_n(A). For an integer value type the output stays in the same
/// additive subgroup.
template <class T>
  requires std::is_arithmetic_v<T>
FSet<T> line_retract(const FSet<T>& A, std::size_t n) {
  const T delta = detail::line_separation(A, n);
  if (delta == T{0}) return A;
  std::vector<T> out;
  out.reserve(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) out.push_back(A[i] - delta * static_cast<T>(i));
  return FSet<T>(std::move(out));
}

/// Lipschitz bound 4n - 3 of `line_retract`.
inline double line_retract_constant(std::size_t n) { return 4.0 * static_cast<double>(n) - 3.0; }

/// Symmetric variant: x -> x + delta_n(A) * sigma_A(x) with
/// sigma_A(x) = (1/2) sum_{y in A} sgn(y - x). Points move toward the median;
/// consecutive points approach each other by exactly delta_n(A), so the
/// closest pair(s) collapse. Half-integer sigma means integer inputs can
/// leave Z when |A| is even.
template <class T>
  requires std::is_arithmetic_v<T>
LineSet median_retract(const FSet<T>& A, std::size_t n) {
  const double delta = static_cast<double>(detail::line_separation(A, n));
  std::vector<double> out;
  out.reserve(A.size());
  const double k = static_cast<double>(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    // sigma at the i-th smallest element: ((k - 1 - i) - i) / 2
    const double sigma = 0.5 * ((k - 1.0 - static_cast<double>(i)) - static_cast<double>(i));
    out.push_back(static_cast<double>(A[i]) + delta * sigma);
  }
  LineSet result(std::move(out));
  if (delta > 0.0 && result.size() >= n)
    throw Error(ErrorCode::precondition_violated, "median retraction failed to collapse a pair");
  return result;
}

/// A compact interval [lo, hi]; lo == hi is a degenerate point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of disjoint compact intervals, sorted left to right.
class IntervalUnion {
 public:
  explicit IntervalUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    if (intervals_.empty()) throw Error(ErrorCode::empty_set, "interval union needs an interval");
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
      if (!(intervals_[k].hi >= intervals_[k].lo))
        throw Error(ErrorCode::invalid_argument, "interval with hi < lo");
      if (k > 0 && !(intervals_[k].lo > intervals_[k - 1].hi))
        throw Error(ErrorCode::invalid_argument, "intervals must be disjoint");
      max_diameter_ = std::max(max_diameter_, intervals_[k].length());
    }
  }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  double max_diameter() const noexcept { return max_diameter_; }

  /// Index of the interval containing x (within tolerance), if any.
  std::optional<std::size_t> component_of(double x, double tol = kDefaultTolerance) const {
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
      const double slack = tol * std::max(1.0, std::abs(x));
      if (x >= intervals_[k].lo - slack && x <= intervals_[k].hi + slack) return k;
    }
    return std::nullopt;
  }

  bool contains(double x, double tol = kDefaultTolerance) const {
    return component_of(x, tol).has_value();
  }

  /// Grid discretization: each interval sampled at spacing <= step, endpoints included.
  std::vector<double> sample(double step) const {
    if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "sample step must be positive");
    std::vector<double> pts;
    for (const auto& I : intervals_) {
      const auto pieces = static_cast<std::size_t>(std::ceil(I.length() / step - 1e-12));
      if (pieces == 0) {
        pts.push_back(I.lo);
        continue;
      }
      for (std::size_t i = 0; i <= pieces; ++i)
        pts.push_back(i == pieces ? I.hi : I.lo + I.length() * static_cast<double>(i) / static_cast<double>(pieces));
    }
    return pts;
  }

 private:
  std::vector<Interval> intervals_;
  double max_diameter_ = 0.0;
};

/// Increasing piecewise-linear bijection of R that keeps every interval of an
/// IntervalUnion rigid (slope 1) and stretches each gap to at least 3nM.
class GapExpansion {
 public:
  GapExpansion(std::vector<double> knots, std::vector<double> images)
      : knots_(std::move(knots)), images_(std::move(images)) {
    if (knots_.size() != images_.size() || knots_.empty())
      throw Error(ErrorCode::invalid_argument, "gap expansion needs matching knots and images");
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      const double dx = knots_[i] - knots_[i - 1];
      const double slope = dx > 0.0 ? (images_[i] - images_[i - 1]) / dx : 1.0;
      slopes_.push_back(slope);
      lipschitz_ = std::max(lipschitz_, slope);
    }
  }

  double forward(double x) const { return eval(knots_, images_, x); }
  double inverse(double y) const { return eval(images_, knots_, y); }

  /// Bi-Lipschitz constant: F is L-Lipschitz and F^-1 is 1-Lipschitz (slopes >= 1).
  double lipschitz() const noexcept { return lipschitz_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& images() const noexcept { return images_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < knots_.size(); ++i)
      if (knots_[i] != images_[i]) return false;
    return true;
  }

 private:
  static double eval(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front() + (x - xs.front());
    if (x >= xs.back()) return ys.back() + (x - xs.back());
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double dx = xs[i] - xs[i - 1];
    if (dx <= 0.0) return ys[i];
    return ys[i - 1] + (x - xs[i - 1]) * (ys[i] - ys[i - 1]) / dx;
  }

  std::vector<double> knots_;
  std::vector<double> images_;
  std::vector<double> slopes_;
  double lipschitz_ = 1.0;
};

/// Gap expansion for X(n): slope max(1, 3nM / gap) on each gap, slope 1 elsewhere.
inline GapExpansion build_gap_expansion(const IntervalUnion& X, std::size_t n) {
  const double required = 3.0 * static_cast<double>(n) * X.max_diameter();
  std::vector<double> knots, images;
  double y = X.intervals().front().lo;
  for (std::size_t k = 0; k < X.size(); ++k) {
    const auto& I = X.intervals()[k];
    if (k > 0) {
      const double gap = I.lo - X.intervals()[k - 1].hi;
      y += std::max(gap, required);
    }
    knots.push_back(I.lo);
    images.push_back(y);
    if (I.hi > I.lo) {
      y += I.length();
      knots.push_back(I.hi);
      images.push_back(y);
    }
  }
  return GapExpansion(std::move(knots), std::move(images));
}

/// Retraction of X(n) onto X(n-1) for X a finite union of disjoint compact
/// intervals. Sets meeting n distinct intervals lose their minimum; all other
/// sets are pushed through line_retract in gap-expanded coordinates and
/// projected back onto X.
class IntervalUnionRetraction {
 public:
  IntervalUnionRetraction(IntervalUnion X, std::size_t n)
      : X_(std::move(X)), n_(n), F_(build_gap_expansion(X_, n)) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "retraction needs n >= 2");
    for (const auto& I : X_.intervals()) expanded_.push_back({F_.forward(I.lo), F_.forward(I.hi)});
  }

  const IntervalUnion& space() const noexcept { return X_; }
  const GapExpansion& expansion() const noexcept { return F_; }
  std::size_t n() const noexcept { return n_; }

  /// True when A has n points in n distinct intervals (the delete-min branch).
  bool in_separated_branch(const LineSet& A, double tol = kDefaultTolerance) const {
    if (A.size() != n_) return false;
    std::vector<std::size_t> comps;
    for (double a : A) comps.push_back(require_component(a, tol));
    std::sort(comps.begin(), comps.end());
    return std::adjacent_find(comps.begin(), comps.end()) == comps.end();
  }

  LineSet operator()(const LineSet& A, double tol = kDefaultTolerance) const {
    if (A.size() > n_) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
    for (double a : A) require_component(a, tol);
    if (A.size() < n_) return A;
    if (in_separated_branch(A, tol)) return A.without_min();
    std::vector<double> fa;
    for (double a : A) fa.push_back(F_.forward(a));
    const LineSet moved = line_retract(LineSet(std::move(fa)), n_);
    std::vector<double> out;
    for (double y : moved) out.push_back(project_back(y));
    return LineSet(std::move(out));
  }

  /// Lipschitz bound on the conjugated branch: 3 (4n - 3) L_F^2, where 3 is the
  /// projection constant and L_F the expansion constant.
  double conjugated_branch_bound() const {
    return 3.0 * line_retract_constant(n_) * F_.lipschitz() * F_.lipschitz();
  }

 private:
  std::size_t require_component(double a, double tol) const {
    const auto c = X_.component_of(a, tol);
    if (!c) throw Error(ErrorCode::not_a_subset, "point " + std::to_string(a) + " is not in X");
    return *c;
  }

  // Nearest point of F(X), ties toward the left component, then F^-1.
  double project_back(double y) const {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    double best_pt = 0.0;
    for (std::size_t k = 0; k < expanded_.size(); ++k) {
      const double p = std::clamp(y, expanded_[k].lo, expanded_[k].hi);
      const double dist = std::abs(y - p);
      if (dist < best_dist) {
        best = k;
        best_dist = dist;
        best_pt = p;
      }
    }
    const auto& I = X_.intervals()[best];
    return std::clamp(F_.inverse(best_pt), I.lo, I.hi);
  }

  IntervalUnion X_;
  std::size_t n_;
  GapExpansion F_;
  std::vector<Interval> expanded_;
};

inline LineSet interval_union_retract(const IntervalUnion& X, const LineSet& A, std::size_t n) {
  return IntervalUnionRetraction(X, n)(A);
}

/// The set {0} ∪ {1/k : 1 <= k <= K}; K unset means the infinite set.
class HarmonicSet {
 public:
  explicit HarmonicSet(std::optional<std::uint64_t> K = std::nullopt) : K_(K) {
    if (K_ && *K_ == 0) throw Error(ErrorCode::invalid_argument, "harmonic truncation K must be >= 1");
  }

  std::optional<std::uint64_t> truncation() const noexcept { return K_; }

  bool contains(double x, double tol = kDefaultTolerance) const {
    if (std::abs(x) <= tol) return true;
    if (x <= 0.0 || x > 1.0 + tol) return false;
    const double k = std::round(1.0 / x);
    if (k < 1.0 || (K_ && k > static_cast<double>(*K_))) return false;
    return std::abs(x - 1.0 / k) <= tol * x;
  }

  /// Ascending values {0, 1/K, ..., 1/2, 1}; finite truncations only.
  std::vector<double> values() const {
    if (!K_) throw Error(ErrorCode::invalid_argument, "cannot list the infinite harmonic set");
    std::vector<double> v{0.0};
    for (std::uint64_t k = *K_; k >= 1; --k) v.push_back(1.0 / static_cast<double>(k));
    return v;
  }

  /// Distances from t = 1/k (k >= 2) to its lower and upper neighbours:
  /// t^2/(1+t) and t^2/(1-t).
  static std::pair<double, double> neighbor_gaps(double t) {
    return {t * t / (1.0 + t), t * t / (1.0 - t)};
  }

 private:
  std::optional<std::uint64_t> K_;
};

/// Drops min A when |A| = n; Hölder-1/2 retraction of X(n) onto X(n-1) for X
/// the harmonic set, with Delta(r(A), A) <= sqrt(delta_n(A)).
inline LineSet delete_min_retract(const LineSet& A, std::size_t n,
                                  const HarmonicSet& X = HarmonicSet{}) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "retraction needs n >= 2");
  if (A.size() > n) throw Error(ErrorCode::capacity_exceeded, "set has more than n elements");
  for (double a : A)
    if (!X.contains(a)) throw Error(ErrorCode::not_a_subset, "point is not in the harmonic set");
  return A.size() == n ? A.without_min() : A;
}

}  // namespace finset
