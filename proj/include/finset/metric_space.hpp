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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "finset/error.hpp"

namespace finset {

/// |x - y| on the real line.
struct AbsDistance {
  template <class T>
  double operator()(T x, T y) const {
    return std::abs(static_cast<double>(x) - static_cast<double>(y));
  }
};

/// Euclidean distance between fixed-dimension points.
struct EuclideanDistance {
  template <std::size_t D>
  double operator()(const std::array<double, D>& x, const std::array<double, D>& y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < D; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(s);
  }
};

using Point2 = std::array<double, 2>;

/// Outcome of an exhaustive triangle-inequality scan.
struct MetricCheckReport {
  bool ok = true;
  double worst_violation = 0.0;  // max of d(i,k) - d(i,j) - d(j,k), clipped at 0
  std::array<std::size_t, 3> worst_triple{0, 0, 0};
};

/// A finite metric space: points 0..size()-1 with a dense symmetric distance
/// matrix. Construction checks the O(N^2) axioms (symmetry, zero diagonal,
/// positive off-diagonal); the O(N^3) triangle inequality is checked by
/// `check_triangle()` or the `validated` factory.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  FiniteMetricSpace(std::vector<std::vector<double>> dist, std::vector<std::string> labels = {},
                    double tol = kDefaultTolerance) {
    const std::size_t n = dist.size();
    if (n == 0) throw Error(ErrorCode::empty_set, "metric space needs at least one point");
    n_ = n;
    d_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i].size() != n) throw Error(ErrorCode::not_a_metric, "distance matrix is not square");
      for (std::size_t j = 0; j < n; ++j) d_[i * n + j] = dist[i][j];
    }
    labels_ = std::move(labels);
    check_axioms(tol);
  }

  /// Builds the space of `points` under `metric`.
  template <class P, class Metric>
  static FiniteMetricSpace from_points(const std::vector<P>& points, const Metric& metric,
                                       std::vector<std::string> labels = {}) {
    FiniteMetricSpace s;
    s.n_ = points.size();
    if (s.n_ == 0) throw Error(ErrorCode::empty_set, "metric space needs at least one point");
    s.d_.assign(s.n_ * s.n_, 0.0);
    for (std::size_t i = 0; i < s.n_; ++i)
      for (std::size_t j = i + 1; j < s.n_; ++j) {
        const double v = metric(points[i], points[j]);
        s.d_[i * s.n_ + j] = v;
        s.d_[j * s.n_ + i] = v;
      }
    s.labels_ = std::move(labels);
    s.check_axioms(kDefaultTolerance);
    return s;
  }

  /// Construct and additionally require the triangle inequality.
  static FiniteMetricSpace validated(std::vector<std::vector<double>> dist,
                                     std::vector<std::string> labels = {},
                                     double tol = kDefaultTolerance) {
    FiniteMetricSpace s(std::move(dist), std::move(labels), tol);
    const auto report = s.check_triangle(tol);
    if (!report.ok) {
      throw Error(ErrorCode::not_a_metric,
                  "triangle inequality fails by " + std::to_string(report.worst_violation));
    }
    return s;
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(std::size_t i) const {
    return i < labels_.size() ? labels_[i] : std::to_string(i);
  }

  double diameter() const {
    double m = 0.0;
    for (double v : d_) m = std::max(m, v);
    return m;
  }

  /// Smallest positive distance; 0 for a single point.
  double min_positive_distance() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double v = (*this)(i, j);
        if (m == 0.0 || v < m) m = v;
      }
    return m;
  }

  std::vector<std::vector<double>> matrix() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  /// Exhaustive triangle check; the tolerance is relative to the diameter.
  MetricCheckReport check_triangle(double tol = kDefaultTolerance) const {
    MetricCheckReport r;
    const double slack = tol * std::max(1.0, diameter());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t j = 0; j < n_; ++j) {
          const double excess = (*this)(i, k) - (*this)(i, j) - (*this)(j, k);
          if (excess > r.worst_violation) {
            r.worst_violation = excess;
            r.worst_triple = {i, j, k};
          }
        }
    r.ok = r.worst_violation <= slack;
    return r;
  }

 private:
  void check_axioms(double tol) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if ((*this)(i, i) != 0.0) throw Error(ErrorCode::not_a_metric, "nonzero diagonal entry");
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double a = (*this)(i, j), b = (*this)(j, i);
        if (!std::isfinite(a) || std::abs(a - b) > tol * std::max(1.0, std::abs(a)))
          throw Error(ErrorCode::not_a_metric, "distance matrix is not symmetric");
        if (!(a > 0.0))
          throw Error(ErrorCode::not_a_metric,
                      "distinct points " + std::to_string(i) + "," + std::to_string(j) +
                          " at distance zero");
      }
    }
  }

  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> labels_;
};

/// A finite subset of the real line, kept sorted and distinct.
///
/// When `scale` is set, every value is an integer multiple of 1/scale and
/// `scaled()` returns the exact integer numerators.
class RealLineSpace {
 public:
  RealLineSpace() = default;

  explicit RealLineSpace(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    if (values_.empty()) throw Error(ErrorCode::empty_set, "line space needs at least one point");
    if (std::adjacent_find(values_.begin(), values_.end()) != values_.end())
      throw Error(ErrorCode::invalid_argument, "line space values must be distinct");
  }

  /// Values numerators[i] / scale, with the exact representation retained.
  static RealLineSpace from_scaled(std::vector<std::int64_t> numerators, std::int64_t scale) {
    if (scale <= 0) throw Error(ErrorCode::invalid_argument, "scale must be positive");
    std::sort(numerators.begin(), numerators.end());
    std::vector<double> v;
    v.reserve(numerators.size());
    for (auto k : numerators) v.push_back(static_cast<double>(k) / static_cast<double>(scale));
    RealLineSpace s(std::move(v));
    s.scaled_ = std::move(numerators);
    s.scale_ = scale;
    return s;
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::optional<std::int64_t> scale() const noexcept { return scale_; }
  const std::vector<std::int64_t>& scaled() const noexcept { return scaled_; }

  bool contains(double x, double tol = kDefaultTolerance) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), x - tol * std::max(1.0, std::abs(x)));
    return it != values_.end() && std::abs(*it - x) <= tol * std::max(1.0, std::abs(x));
  }

  FiniteMetricSpace to_metric_space() const {
    std::vector<std::string> labels;
    labels.reserve(values_.size());
    for (double v : values_) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      labels.emplace_back(buf);
    }
    return FiniteMetricSpace::from_points(values_, AbsDistance{}, std::move(labels));
  }

 private:
  std::vector<double> values_;
  std::vector<std::int64_t> scaled_;
  std::optional<std::int64_t> scale_;
};

}  // namespace finset
