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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/hausdorff.hpp"
#include "finset/metric_space.hpp"

namespace finset {

/// phi(t) = t^alpha.
struct PowerForm {
  double alpha = 1.0;
};

/// Piecewise-linear phi through (t_i, phi_i), extended past the last knot
/// with the last slope. The first knot must be (0, 0).
struct TableForm {
  std::vector<std::pair<double, double>> pairs;
};

/// A nondecreasing phi : [0, inf) -> [0, inf) with phi(0) = 0, applied to distances.
class MetricTransform {
 public:
  explicit MetricTransform(PowerForm f, std::optional<double> doubling = std::nullopt)
      : form_(f), doubling_(doubling) {
    if (!(f.alpha > 0.0)) throw Error(ErrorCode::invalid_argument, "power exponent must be positive");
    if (!doubling_) doubling_ = std::pow(2.0, f.alpha);
  }

  explicit MetricTransform(TableForm f, std::optional<double> doubling = std::nullopt)
      : form_(std::move(f)), doubling_(doubling) {
    auto& p = std::get<TableForm>(form_).pairs;
    std::sort(p.begin(), p.end());
    if (p.size() < 2) throw Error(ErrorCode::invalid_argument, "table needs at least two points");
    if (p.front() != std::pair<double, double>{0.0, 0.0})
      throw Error(ErrorCode::invalid_argument, "table must start at (0, 0)");
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (!(p[i].first > p[i - 1].first))
        throw Error(ErrorCode::invalid_argument, "table arguments must be distinct");
      if (p[i].second < p[i - 1].second) throw Error(ErrorCode::invalid_argument, "table must be nondecreasing");
    }
  }

  static MetricTransform power(double alpha) { return MetricTransform(PowerForm{alpha}); }

  double operator()(double t) const {
    if (const auto* pw = std::get_if<PowerForm>(&form_)) return t <= 0.0 ? 0.0 : std::pow(t, pw->alpha);
    const auto& p = std::get<TableForm>(form_).pairs;
    if (t <= 0.0) return 0.0;
    auto it = std::upper_bound(p.begin(), p.end(), t,
                               [](double v, const std::pair<double, double>& q) { return v < q.first; });
    const std::size_t i = it == p.end() ? p.size() - 1 : static_cast<std::size_t>(it - p.begin());
    const auto& a = p[i - 1];
    const auto& b = p[i];
    return a.second + (t - a.first) * (b.second - a.second) / (b.first - a.first);
  }

  const std::variant<PowerForm, TableForm>& form() const noexcept { return form_; }
  std::optional<double> doubling() const noexcept { return doubling_; }

  /// max phi(2t) / phi(t) over the grid (positive t with phi(t) > 0).
  double doubling_on(std::span<const double> grid) const {
    double m = 0.0;
    for (double t : grid)
      if (t > 0.0 && (*this)(t) > 0.0) m = std::max(m, (*this)(2.0 * t) / (*this)(t));
    return m;
  }

  /// True when phi(2t) <= M phi(t) on the grid for the claimed doubling constant.
  bool doubling_holds(std::span<const double> grid, double tol = kDefaultTolerance) const {
    if (!doubling_) return true;
    for (double t : grid)
      if ((*this)(2.0 * t) > *doubling_ * (*this)(t) * (1.0 + tol) + tol) return false;
    return true;
  }

 private:
  std::variant<PowerForm, TableForm> form_;
  std::optional<double> doubling_;
};

/// The space (X, phi o d); throws unless phi o d is a metric.
inline FiniteMetricSpace apply_transform(const FiniteMetricSpace& space, const MetricTransform& phi,
                                         double tol = kDefaultTolerance) {
  auto dist = space.matrix();
  for (auto& row : dist)
    for (auto& v : row) v = phi(v);
  return FiniteMetricSpace::validated(std::move(dist), space.labels(), tol);
}

/// min L' with phi(L t) <= L' phi(t) over the given distances: the Lipschitz
/// constant that an L-Lipschitz map keeps after the transform.
inline double transport_bound(const MetricTransform& phi, double L, std::span<const double> distances) {
  double m = 0.0;
  for (double t : distances)
    if (t > 0.0) m = std::max(m, phi(L * t) / phi(t));
  return m;
}

/// Every distance multiplied by eps.
inline FiniteMetricSpace rescale(const FiniteMetricSpace& space, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "rescale factor must be positive");
  auto dist = space.matrix();
  for (auto& row : dist)
    for (auto& v : row) v *= eps;
  return FiniteMetricSpace(std::move(dist), space.labels());
}

/// X x Y with the max metric; point (i, j) has index i * |Y| + j.
inline FiniteMetricSpace product(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  const std::size_t nx = X.size(), ny = Y.size();
  std::vector<std::vector<double>> dist(nx * ny, std::vector<double>(nx * ny, 0.0));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) labels.push_back("(" + X.label(i) + "," + Y.label(j) + ")");
  for (std::size_t a = 0; a < nx * ny; ++a)
    for (std::size_t b = 0; b < nx * ny; ++b)
      dist[a][b] = std::max(X(a / ny, b / ny), Y(a % ny, b % ny));
  return FiniteMetricSpace(std::move(dist), std::move(labels));
}

/// X ⊔ Y with every cross distance equal to s; X keeps indices 0..|X|-1.
inline FiniteMetricSpace disjoint_union(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double s,
                                        double tol = kDefaultTolerance) {
  if (!(s > 0.0)) throw Error(ErrorCode::invalid_argument, "cross distance must be positive");
  const std::size_t nx = X.size(), ny = Y.size();
  std::vector<std::vector<double>> dist(nx + ny, std::vector<double>(nx + ny, s));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nx; ++i) labels.push_back("X" + X.label(i));
  for (std::size_t j = 0; j < ny; ++j) labels.push_back("Y" + Y.label(j));
  for (std::size_t i = 0; i < nx + ny; ++i) dist[i][i] = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < nx; ++j) dist[i][j] = X(i, j);
  for (std::size_t i = 0; i < ny; ++i)
    for (std::size_t j = 0; j < ny; ++j) dist[nx + i][nx + j] = Y(i, j);
  // With a constant cross distance the triangle inequality reduces to 2s >= diam.
  if (2.0 * s < std::max(X.diameter(), Y.diameter()) * (1.0 - tol))
    throw Error(ErrorCode::not_a_metric, "cross distance too small for the triangle inequality");
  return FiniteMetricSpace(std::move(dist), std::move(labels));
}

/// f(A) for a point map given as an index table; f must be injective on A.
inline IndexSet induced_subset_map(std::span<const std::size_t> f, const IndexSet& A) {
  std::vector<std::size_t> out;
  for (std::size_t a : A) {
    if (a >= f.size()) throw Error(ErrorCode::invalid_argument, "point outside the map's domain");
    out.push_back(f[a]);
  }
  IndexSet image(out);
  if (image.size() != A.size()) throw Error(ErrorCode::not_injective, "point map is not injective on A");
  return image;
}

inline std::vector<std::size_t> invert_map(std::span<const std::size_t> f, std::size_t target_size) {
  std::vector<std::size_t> inv(target_size, target_size);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= target_size || inv[f[i]] != target_size)
      throw Error(ErrorCode::not_injective, "point map is not a bijection");
    inv[f[i]] = i;
  }
  for (std::size_t v : inv)
    if (v == target_size) throw Error(ErrorCode::not_injective, "point map is not onto");
  return inv;
}

/// Tabulated distortion modulus: eta(t_i) over increasing grid points t_i.
struct QhModulus {
  std::vector<std::pair<double, double>> table;

  /// Value at the least tabulated t_i >= t (the modulus bound for ratio t).
  double operator()(double t) const {
    for (const auto& [ti, eta] : table)
      if (ti >= t * (1.0 - 1e-12)) return eta;
    return std::numeric_limits<double>::infinity();
  }
};

/// For each observed ratio t = d_X(x1,x2)/d_X(x3,x4) over quadruples of
/// distinct points, the largest d_Y ratio among quadruples with X-ratio <= t.
/// The table is nondecreasing by construction.
inline QhModulus estimate_qh_modulus(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                     std::span<const std::size_t> f, double tol = kDefaultTolerance) {
  const std::size_t n = X.size();
  if (n < 4) throw Error(ErrorCode::invalid_argument, "need at least four points");
  invert_map(f, Y.size());
  std::vector<std::pair<double, double>> samples;
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (x2 == x1) continue;
      for (std::size_t x3 = 0; x3 < n; ++x3) {
        if (x3 == x1 || x3 == x2) continue;
        for (std::size_t x4 = 0; x4 < n; ++x4) {
          if (x4 == x1 || x4 == x2 || x4 == x3) continue;
          samples.emplace_back(X(x1, x2) / X(x3, x4), Y(f[x1], f[x2]) / Y(f[x3], f[x4]));
        }
      }
    }
  std::sort(samples.begin(), samples.end());
  QhModulus m;
  double running = 0.0;
  for (const auto& [t, r] : samples) {
    running = std::max(running, r);
    if (!m.table.empty() && detail::nearly_equal(m.table.back().first, t, tol))
      m.table.back().second = running;
    else
      m.table.emplace_back(t, running);
  }
  return m;
}

struct QhTransportReport {
  bool ok = true;
  std::size_t quadruples = 0;
  double worst_excess = 0.0;  // max Delta_Y(B1,B2) - eta(t) Delta_Y(B3,B4)
};

/// Exhaustive check that A -> f(A) transports ratios with modulus eta:
/// Delta_Y(B1,B2) <= eta(t) Delta_Y(B3,B4), t = Delta_X(A1,A2)/Delta_X(A3,A4).
template <class Eta>
QhTransportReport check_induced_qh(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                   std::span<const std::size_t> f, std::span<const IndexSet> sets,
                                   const Eta& eta, double tol = kDefaultTolerance) {
  const std::size_t m = sets.size();
  std::vector<IndexSet> images;
  for (const auto& A : sets) images.push_back(induced_subset_map(f, A));
  std::vector<double> dx(m * m), dy(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      dx[i * m + j] = hausdorff(sets[i], sets[j], X);
      dy[i * m + j] = hausdorff(images[i], images[j], Y);
    }
  QhTransportReport r;
  const double slack = tol * std::max(1.0, Y.diameter());
  for (std::size_t a = 0; a < m * m; ++a)
    for (std::size_t b = 0; b < m * m; ++b) {
      if (dx[b] <= 0.0) continue;
      ++r.quadruples;
      const double excess = dy[a] - eta(dx[a] / dx[b]) * dy[b];
      r.worst_excess = std::max(r.worst_excess, excess);
      if (excess > slack) r.ok = false;
    }
  return r;
}

}  // namespace finset
