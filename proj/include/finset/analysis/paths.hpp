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
#include <utility>
#include <vector>

#include "finset/error.hpp"
#include "finset/fset.hpp"
#include "finset/hausdorff.hpp"

namespace finset {

/// A map from a sampled parameter interval into finite subsets: values[i] = f(t[i]).
template <class P>
struct SampledPath {
  std::vector<double> t;
  std::vector<FSet<P>> values;

  std::size_t size() const { return t.size(); }

  void check_shape() const {
    if (t.empty() || t.size() != values.size())
      throw Error(ErrorCode::invalid_argument, "path needs matching, nonempty samples");
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!(t[i] > t[i - 1])) throw Error(ErrorCode::invalid_argument, "sample grid must increase");
  }

  /// Largest consecutive ratio Delta(f(t_i), f(t_i+1)) / (t_i+1 - t_i): a lower
  /// bound of the true Lipschitz constant.
  template <class Metric>
  double lipschitz(const Metric& d) const {
    check_shape();
    double L = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      L = std::max(L, hausdorff(values[i - 1], values[i], d) / (t[i] - t[i - 1]));
    return L;
  }

  double max_step() const {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) s = std::max(s, t[i] - t[i - 1]);
    return s;
  }
};

/// Lipschitz constant of a sampled point curve on the grid t.
template <class P, class Metric>
double curve_lipschitz(const std::vector<double>& t, const std::vector<P>& pts, const Metric& d) {
  double L = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) L = std::max(L, d(pts[i - 1], pts[i]) / (t[i] - t[i - 1]));
  return L;
}

template <class P, class Metric>
double set_diameter(const FSet<P>& A, const Metric& d) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) m = std::max(m, static_cast<double>(d(A[i], A[j])));
  return m;
}

template <class P>
struct GhSplit {
  SampledPath<P> g;  // points within L*D of E
  SampledPath<P> h;  // the rest
  double g_lipschitz = 0.0;
  double h_lipschitz = 0.0;
};

/// Splits an L-Lipschitz path f into X(n) whose value at z0 is wide
/// (diam f(z0) > 3(n-1)LD) into g(z) = {x in f(z) : dist(x, E) <= LD} and
/// h(z) = f(z) \ g(z). E must be a subset of f(z0) that is maximal among
/// subsets with diam E <= 3LD(|E|-1).
template <class P, class Metric>
GhSplit<P> split_gh(const SampledPath<P>& f, std::size_t z0, const FSet<P>& E, double L, double D,
                    std::size_t n, const Metric& d, double tol = kDefaultTolerance) {
  f.check_shape();
  if (z0 >= f.size()) throw Error(ErrorCode::invalid_argument, "z0 outside the sample");
  const double span = f.t.back() - f.t.front();
  if (!(D > 0.0) || D < span * (1.0 - tol))
    throw Error(ErrorCode::precondition_violated, "D must be at least the diameter of the domain");
  for (const auto& v : f.values)
    if (v.size() > n) throw Error(ErrorCode::capacity_exceeded, "path leaves X(n)");
  if (f.lipschitz(d) > L * (1.0 + tol))
    throw Error(ErrorCode::precondition_violated, "path is not L-Lipschitz on the sample");

  const FSet<P>& base = f.values[z0];
  if (!(set_diameter(base, d) > 3.0 * static_cast<double>(n - 1) * L * D))
    throw Error(ErrorCode::precondition_violated, "diam f(z0) must exceed 3(n-1)LD");
  for (const P& e : E)
    if (!base.contains(e)) throw Error(ErrorCode::precondition_violated, "E is not a subset of f(z0)");
  if (E.size() == base.size()) throw Error(ErrorCode::precondition_violated, "E must be a proper subset");

  auto admissible = [&](const FSet<P>& S) {
    return set_diameter(S, d) <= 3.0 * L * D * static_cast<double>(S.size() - 1) * (1.0 + tol);
  };
  if (!admissible(E)) throw Error(ErrorCode::precondition_violated, "diam E exceeds 3LD(|E|-1)");

  // Maximality: no strictly larger subset of f(z0) containing E is admissible.
  std::vector<P> rest;
  for (const P& x : base)
    if (!E.contains(x)) rest.push_back(x);
  if (rest.size() > 20) throw Error(ErrorCode::enumeration_cap, "f(z0) too large for the maximality check");
  for (std::size_t mask = 1; mask < (std::size_t{1} << rest.size()); ++mask) {
    std::vector<P> s = E.elements();
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(rest[i]);
    if (admissible(FSet<P>(std::move(s), 0.0)))
      throw Error(ErrorCode::precondition_violated, "E is not maximal");
  }

  GhSplit<P> out;
  out.g.t = out.h.t = f.t;
  const double radius = L * D;
  for (const auto& v : f.values) {
    std::vector<P> gz, hz;
    for (const P& x : v) (point_to_set(x, E, d) <= radius ? gz : hz).push_back(x);
    if (gz.empty() || hz.empty())
      throw Error(ErrorCode::precondition_violated, "split produced an empty part");
    out.g.values.emplace_back(std::move(gz), 0.0);
    out.h.values.emplace_back(std::move(hz), 0.0);
  }
  out.g_lipschitz = out.g.lipschitz(d);
  out.h_lipschitz = out.h.lipschitz(d);
  return out;
}

template <class P>
struct PathDecomposition {
  std::vector<std::vector<P>> branches;  // branches[k][i] = f_k(t_i)
  double lipschitz = 0.0;                // sample Lipschitz constant of f
};

/// Decomposes a path of constant cardinality n into n point curves with
/// f(t) = {f_1(t), ..., f_n(t)}. Requires max grid step below
/// delta_min / (3 L (n-1)); labels carry across samples by nearest neighbour.
template <class P, class Metric>
PathDecomposition<P> decompose_path(const SampledPath<P>& f, const Metric& d) {
  f.check_shape();
  const std::size_t n = f.values.front().size();
  for (const auto& v : f.values)
    if (v.size() != n) throw Error(ErrorCode::precondition_violated, "cardinality changes along the path");

  PathDecomposition<P> out;
  out.lipschitz = f.lipschitz(d);
  out.branches.assign(n, {});
  for (std::size_t k = 0; k < n; ++k) out.branches[k].push_back(f.values.front()[k]);
  if (n == 1) {
    for (std::size_t i = 1; i < f.size(); ++i) out.branches[0].push_back(f.values[i][0]);
    return out;
  }

  double delta_min = std::numeric_limits<double>::infinity();
  for (const auto& v : f.values) delta_min = std::min(delta_min, min_separation(v, n, d));
  if (out.lipschitz > 0.0 &&
      !(f.max_step() < delta_min / (3.0 * out.lipschitz * static_cast<double>(n - 1))))
    throw Error(ErrorCode::precondition_violated, "sample step too coarse for the separation");

  for (std::size_t i = 1; i < f.size(); ++i) {
    const auto& next = f.values[i];
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      const P& prev = out.branches[k].back();
      std::size_t best = 0;
      for (std::size_t j = 1; j < n; ++j)
        if (d(prev, next[j]) < d(prev, next[best])) best = j;
      if (used[best]) throw Error(ErrorCode::precondition_violated, "relabeling is not a bijection");
      used[best] = true;
      out.branches[k].push_back(next[best]);
    }
  }
  return out;
}

template <class P>
struct MergeCurve {
  std::vector<P> points;  // p = points.front(), q = points.back()
  double length = 0.0;    // sampled length of the curve
  double ell = 0.0;       // sampled length of the set path up to its first singleton
};

/// Joins the two points of Gamma(0) = {p, q} by following both points until
/// the first singleton sample and concatenating the two tracks. Each step uses
/// the 2x2 matching with the smaller largest displacement, which is at most the
/// Hausdorff step, so length <= 2 * ell.
template <class P, class Metric>
MergeCurve<P> merge_curve(const SampledPath<P>& gamma, const Metric& d) {
  gamma.check_shape();
  for (const auto& v : gamma.values)
    if (v.size() > 2) throw Error(ErrorCode::capacity_exceeded, "merge_curve needs a path in X(2)");
  MergeCurve<P> out;
  const auto& start = gamma.values.front();
  if (start.size() == 1) {
    out.points = {start[0]};
    return out;
  }
  std::size_t j = 1;
  while (j < gamma.size() && gamma.values[j].size() != 1) ++j;
  if (j == gamma.size()) throw Error(ErrorCode::no_singleton, "path never reaches a singleton");

  std::vector<P> first{start[0]}, second{start[1]};
  for (std::size_t i = 1; i < j; ++i) {
    const auto& v = gamma.values[i];
    const double keep = std::max(d(first.back(), v[0]), d(second.back(), v[1]));
    const double swap = std::max(d(first.back(), v[1]), d(second.back(), v[0]));
    if (keep <= swap) {
      first.push_back(v[0]);
      second.push_back(v[1]);
    } else {
      first.push_back(v[1]);
      second.push_back(v[0]);
    }
  }
  for (std::size_t i = 0; i < j; ++i) out.ell += hausdorff(gamma.values[i], gamma.values[i + 1], d);

  out.points = first;
  out.points.push_back(gamma.values[j][0]);
  out.points.insert(out.points.end(), second.rbegin(), second.rend());
  for (std::size_t i = 1; i < out.points.size(); ++i) out.length += d(out.points[i - 1], out.points[i]);
  return out;
}

}  // namespace finset
