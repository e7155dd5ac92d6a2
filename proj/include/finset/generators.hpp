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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "finset/error.hpp"
#include "finset/line.hpp"
#include "finset/metric_space.hpp"
#include "finset/transforms.hpp"
#include "finset/ultra.hpp"

namespace finset {

using AnySpace = std::variant<FiniteMetricSpace, RealLineSpace>;

inline FiniteMetricSpace as_metric_space(const AnySpace& s) {
  if (const auto* line = std::get_if<RealLineSpace>(&s)) return line->to_metric_space();
  return std::get<FiniteMetricSpace>(s);
}

/// A generator call written as "name:key=value,key=value", e.g. "harmonic:K=30".
struct SpaceSpec {
  std::string name;
  std::map<std::string, std::string> params;

  static SpaceSpec parse(std::string_view text) {
    SpaceSpec s;
    const auto colon = text.find(':');
    s.name = std::string(text.substr(0, colon));
    if (s.name.empty()) throw Error(ErrorCode::parse_error, "space spec has no generator name");
    if (colon == std::string_view::npos) return s;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0)
        throw Error(ErrorCode::parse_error, "expected key=value in space spec: " + std::string(item));
      s.params[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return s;
  }

  bool has(const std::string& key) const { return params.count(key) != 0; }

  std::string text(const std::string& key, std::string fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }

  double number(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : parse_number(it->second);
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    const double v = number(key, static_cast<double>(fallback));
    if (v < 0.0 || v != std::floor(v) || v > 1e9)
      throw Error(ErrorCode::invalid_argument, key + " must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  /// Decimal or "p/q".
  static double parse_number(const std::string& s) {
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      }
      const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      std::size_t u2 = 0;
      const double p = std::stod(num, &used), q = std::stod(den, &u2);
      if (used != num.size() || u2 != den.size() || q == 0.0) throw std::invalid_argument(s);
      return p / q;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse_error, "not a number: " + s);
    }
  }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "need at least one sample");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

inline std::vector<double> split_values(const std::string& s, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(sep, start);
    const std::string item = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) out.push_back(SpaceSpec::parse_number(item));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

inline FiniteMetricSpace snowflake_grid(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1]");
  return apply_transform(RealLineSpace(linspace(0.0, 1.0, n)).to_metric_space(), MetricTransform::power(alpha));
}

}  // namespace detail

/// "intervals=-1:0;0.1:1" into an IntervalUnion.
inline IntervalUnion interval_union_from_spec(const SpaceSpec& spec) {
  const std::string text = spec.text("intervals", "");
  if (text.empty()) throw Error(ErrorCode::invalid_argument, "interval_union needs intervals=lo:hi;...");
  std::vector<Interval> parts;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    const auto vals = detail::split_values(text.substr(start, end - start), ':');
    if (vals.size() != 2) throw Error(ErrorCode::parse_error, "interval must be lo:hi");
    parts.push_back(Interval{vals[0], vals[1]});
    start = end + 1;
  }
  return IntervalUnion(std::move(parts));
}

/// Left endpoints of the 2^depth intervals kept after `depth` rounds of
/// keeping the outer fraction `ratio` on each side of [0, 1].
inline std::vector<double> cantor_left_endpoints(double ratio, std::size_t depth) {
  if (!(ratio > 0.0 && ratio < 0.5)) throw Error(ErrorCode::invalid_argument, "cantor ratio must lie in (0, 1/2)");
  if (depth > 20) throw Error(ErrorCode::invalid_argument, "cantor depth at most 20");
  std::vector<double> left{0.0};
  double len = 1.0;
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<double> next;
    const double child = ratio * len;
    for (double a : left) {
      next.push_back(a);
      next.push_back(a + len - child);
    }
    left = std::move(next);
    len = child;
  }
  return left;
}

/// Builds the space named by `spec`. Generators and parameters:
///   grid            lo, hi, N                  N equally spaced reals
///   explicit        values=a;b;c               the given reals
///   interval_union  intervals=l:r;..., step    samples of a union of intervals
///   harmonic        K                          {0} ∪ {1/k : k <= K}
///   cantor          ratio, depth               left endpoints at the given depth
///   snowflake       alpha, N                   grid on [0,1] with |x-y|^alpha
///   parabola        T, N                       (x, x^2), x on a grid of [-T, T]
///   lattice_lines   W, step, rows              [-W, W] x {0..rows-1} sampled at step
///   dendrogram      leaves, seed               random ultrametric
///   rug             N, alpha                   grid x snowflaked grid, max-metric
inline AnySpace generate(const SpaceSpec& spec) {
  const std::string& g = spec.name;
  if (g == "grid") {
    return RealLineSpace(detail::linspace(spec.number("lo", 0.0), spec.number("hi", 1.0), spec.count("N", 8)));
  }
  if (g == "explicit") {
    return RealLineSpace(detail::split_values(spec.text("values", ""), ';'));
  }
  if (g == "interval_union") {
    const double step = spec.number("step", 0.1);
    if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "step must be positive");
    return RealLineSpace(interval_union_from_spec(spec).sample(step));
  }
  if (g == "harmonic") {
    const std::size_t K = spec.count("K", 10);
    if (K == 0) throw Error(ErrorCode::invalid_argument, "K must be positive");
    return RealLineSpace(HarmonicSet(K).values());
  }
  if (g == "cantor") {
    return RealLineSpace(cantor_left_endpoints(spec.number("ratio", 1.0 / 3.0), spec.count("depth", 3)));
  }
  if (g == "snowflake") {
    return detail::snowflake_grid(spec.count("N", 9), spec.number("alpha", 0.5));
  }
  if (g == "parabola") {
    const double T = spec.number("T", 1.0);
    if (!(T > 0.0)) throw Error(ErrorCode::invalid_argument, "T must be positive");
    std::vector<Point2> pts;
    for (double x : detail::linspace(-T, T, spec.count("N", 21))) pts.push_back({x, x * x});
    return FiniteMetricSpace::from_points(pts, EuclideanDistance{});
  }
  if (g == "lattice_lines") {
    const double W = spec.number("W", 2.0), step = spec.number("step", 0.25);
    const std::size_t rows = spec.count("rows", 2);
    if (!(W > 0.0 && step > 0.0) || rows == 0)
      throw Error(ErrorCode::invalid_argument, "lattice_lines needs W > 0, step > 0, rows >= 1");
    const auto xs = detail::linspace(-W, W, static_cast<std::size_t>(std::llround(2.0 * W / step)) + 1);
    std::vector<Point2> pts;
    for (std::size_t r = 0; r < rows; ++r)
      for (double x : xs) pts.push_back({x, static_cast<double>(r)});
    return FiniteMetricSpace::from_points(pts, EuclideanDistance{});
  }
  if (g == "dendrogram") {
    return dendrogram_space(random_dendrogram(spec.count("leaves", 8), spec.count("seed", 1)));
  }
  if (g == "rug") {
    const std::size_t N = spec.count("N", 9);
    return product(RealLineSpace(detail::linspace(0.0, 1.0, N)).to_metric_space(),
                   detail::snowflake_grid(N, spec.number("alpha", 0.5)));
  }
  throw Error(ErrorCode::invalid_argument, "unknown generator: " + g);
}

inline AnySpace generate(std::string_view spec) { return generate(SpaceSpec::parse(spec)); }

}  // namespace finset
