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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "finset/finset.hpp"
#include "oracles.hpp"

using namespace finset;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::vector<double>> line_grids() {
  std::vector<std::vector<double>> grids;
  for (std::size_t N : {4, 6, 8, 10}) {
    std::vector<double> v;
    for (std::size_t i = 0; i < N; ++i) v.push_back(static_cast<double>(i));
    grids.push_back(v);
  }
  for (std::uint64_t seed : {1, 2, 3}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> v;
    for (int i = 0; i < 10; ++i) v.push_back(u(rng));
    grids.push_back(v);
  }
  grids.push_back({0, 1, 3, 7, 15, 31, 63, 127, 255, 511});
  grids.push_back({0, 0.001, 0.002, 1, 1.001, 5, 5.5, 6, 9.999, 10});
  return grids;
}

FiniteMetricSpace dendrogram8(std::uint64_t seed) { return dendrogram_space(random_dendrogram(8, seed)); }

std::vector<IndexSet> index_sets(std::size_t N, std::size_t n) {
  return enumerate_subsets(index_universe(N), n, 1u << 20);
}

// 1. Line retraction constant.
void criterion_line_constant() {
  bool ok = true;
  double worst_ratio = 0.0, slowest = 0.0;
  for (const auto& grid : line_grids())
    for (std::size_t n : {2, 3, 4}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto sets = enumerate_subsets(grid, n, 1u << 20);
      const auto r = estimate_constant_exhaustive(
          sets, [n](const LineSet& A) { return line_retract(A, n); }, AbsDistance{});
      const double bound = line_retract_constant(n);
      worst_ratio = std::max(worst_ratio, r.constant / bound);
      slowest = std::max(slowest, seconds_since(t0));
      ok = ok && r.constant <= bound + 1e-6;
    }
  ok = ok && slowest < 30.0;
  report(1, ok, "line_retract constant / (4n-3) max " + fmt("%.6f", worst_ratio) + ", slowest config " +
                    fmt("%.3f", slowest) + " s");
}

// 2. Retraction axioms: fixes the lower stratum pointwise and maps into it.
void criterion_axioms() {
  std::size_t failures = 0, checked = 0;
  auto expect = [&](bool c) {
    ++checked;
    if (!c) ++failures;
  };

  for (const auto& grid : line_grids())
    for (std::size_t n : {2, 3, 4})
      for (const auto& A : enumerate_subsets(grid, n, 1u << 20)) {
        const auto r = line_retract(A, n);
        expect(r.size() <= n - 1 || A.size() < n);
        if (A.size() < n) expect(approx_equal(r, A, 1e-9));
      }

  const IntervalUnion X({{-1.0, 0.0}, {0.5, 1.5}, {3.0, 3.2}});
  const auto samples = X.sample(0.25);
  for (std::size_t n : {2, 3}) {
    const IntervalUnionRetraction retr(X, n);
    for (const auto& A : enumerate_subsets(samples, n, 1u << 20)) {
      const auto r = retr(A);
      expect(r.size() <= n - 1 || A.size() < n);
      for (double x : r) expect(X.contains(x, 1e-9));
      if (A.size() < n) expect(r == A);
    }
  }

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto space = dendrogram8(seed);
    const auto family = build_centers(space);
    for (std::size_t n : {2, 3, 4})
      for (std::size_t m = 1; m < n; ++m)
        for (const auto& A : index_sets(space.size(), n)) {
          const auto r = generic_retract(family, A, n, m);
          expect(r.size() <= m);
          for (std::size_t x : r) expect(x < space.size());
          if (A.size() <= m) expect(r == A);
        }
  }

  const HarmonicSet H(12);
  for (std::size_t n : {2, 3, 4})
    for (const auto& A : enumerate_subsets(H.values(), n, 1u << 20)) {
      const auto r = delete_min_retract(A, n, H);
      expect(r.size() <= n - 1 || A.size() < n);
      for (double x : r) expect(H.contains(x, 1e-9));
      if (A.size() < n) expect(r == A);
    }

  report(2, failures == 0,
         std::to_string(checked) + " checks over line, interval-union, ultrametric and delete-min retractions, " +
             std::to_string(failures) + " failures");
}

// 3. Displacement bounds.
void criterion_displacement() {
  bool ok = true;
  double worst_line = -1e300, worst_generic = -1e300;
  for (const auto& grid : line_grids())
    for (std::size_t n : {2, 3, 4}) {
      const auto sets = enumerate_subsets(grid, n, 1u << 20);
      const auto r = check_displacement_factor(
          std::span<const LineSet>(sets), [n](const LineSet& A) { return line_retract(A, n); }, n,
          static_cast<double>(n - 1), AbsDistance{}, 1e-9);
      ok = ok && r.ok;
      worst_line = std::max(worst_line, r.worst_excess);
    }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto space = dendrogram8(seed);
    const auto family = build_centers(space);
    for (std::size_t n : {2, 3, 4}) {
      const auto sets = index_sets(space.size(), n);
      const auto r = check_displacement(
          std::span<const IndexSet>(sets), [&](const IndexSet& A) { return generic_retract(family, A, n, n - 1); },
          n, family.retraction_constant(), space, 1e-9);
      ok = ok && r.ok;
      worst_generic = std::max(worst_generic, r.worst_excess);
    }
  }
  report(3, ok, "max excess over bound: line (n-1)delta " + fmt("%.3g", worst_line) + ", generic (L+1)delta " +
                    fmt("%.3g", worst_generic));
}

// 4. delta_n is 2-Lipschitz and sandwiches the distance to the lower stratum.
void criterion_separation() {
  std::size_t failures = 0, pairs = 0;
  auto run = [&](const FiniteMetricSpace& space) {
    const auto d = oracle::matrix_of(space);
    for (std::size_t n : {2, 3, 4}) {
      const auto sets = index_sets(space.size(), n);
      std::vector<double> delta;
      for (const auto& A : sets) delta.push_back(min_separation(A, n, space));
      for (std::size_t i = 0; i < sets.size(); ++i) {
        const double lower = dist_to_lower(sets[i], space, n);
        if (lower < delta[i] / 2 - 1e-9 || lower > delta[i] + 1e-9) ++failures;
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
          ++pairs;
          const double h = oracle::hausdorff(sets[i].elements(), sets[j].elements(), d);
          if (std::abs(delta[i] - delta[j]) > 2 * h + 1e-9) ++failures;
        }
      }
    }
  };
  for (const auto& grid : line_grids()) run(RealLineSpace(grid).to_metric_space());
  run(dendrogram8(7));
  run(FiniteMetricSpace::from_points(oracle::random_points(9, 11), EuclideanDistance{}));
  run(as_metric_space(generate("parabola:T=2,N=7")));

  // Ambient-line candidates on the real line.
  for (const auto& grid : line_grids()) {
    const RealLineSpace line(grid);
    for (std::size_t n : {2, 3, 4})
      for (const auto& A : enumerate_subsets(grid, n, 1u << 20)) {
        const double delta = min_separation(A, n);
        const double lower = dist_to_lower(A, line, n, CandidateUniverse::ambient_line);
        if (lower < delta / 2 - 1e-9 || lower > delta + 1e-9) ++failures;
      }
  }
  report(4, failures == 0,
         std::to_string(pairs) + " Lipschitz pairs plus sandwich checks, " + std::to_string(failures) + " failures");
}

// 5. Ultrametric generic retraction constant and its snowflake refinement.
void criterion_ultrametric() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0, worst_snow = 0.0;
  int alpha = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto space = dendrogram8(seed);
    ok = ok && validate_ultrametric(space).is_ultrametric;
    const auto family = build_centers(space);
    const SnowflakeRetraction snow(space, 1.25);
    alpha = snow.alpha();
    for (std::size_t n : {2, 3, 4})
      for (std::size_t m = 1; m < n; ++m) {
        const auto sets = index_sets(space.size(), n);
        const auto r = estimate_constant_exhaustive(
            sets, [&](const IndexSet& A) { return generic_retract(family, A, n, m); }, space);
        const auto s = estimate_constant_exhaustive(sets, [&](const IndexSet& A) { return snow(A, n, m); }, space);
        worst = std::max(worst, r.constant);
        worst_snow = std::max(worst_snow, s.constant);
      }
  }
  const double secs = seconds_since(t0);
  ok = ok && worst <= 5.0 + 1e-9 && worst_snow <= 1.25 + 1e-9 && secs < 60.0;
  report(5, ok, "20 dendrograms: generic max " + fmt("%.6f", worst) + " (<= 5), snowflake alpha=" +
                    std::to_string(alpha) + " max " + fmt("%.6f", worst_snow) + " (<= 1.25), " + fmt("%.2f", secs) +
                    " s");
}

// 6. Subdominant ultrametric against the brute-force chain oracle.
void criterion_subdominant() {
  std::size_t spaces = 0, failures = 0;
  auto run = [&](const FiniteMetricSpace& space) {
    ++spaces;
    const auto rho = subdominant_ultrametric(space);
    const auto brute = oracle::chain_minimax(oracle::matrix_of(space));
    const auto c = disconnection_constant(space).constant;
    if (!validate_ultrametric(rho).is_ultrametric) ++failures;
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = 0; j < space.size(); ++j) {
        if (rho(i, j) != brute[i][j]) ++failures;
        if (rho(i, j) > space(i, j) || rho(i, j) < c * space(i, j) * (1 - 1e-12)) ++failures;
      }
  };
  for (std::size_t n = 1; n <= 7; ++n)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      run(FiniteMetricSpace::from_points(oracle::random_points(n, seed * 31 + n), EuclideanDistance{}));
      run(dendrogram_space(random_dendrogram(n, seed)));
    }
  run(RealLineSpace({0.0, 1.0, 2.0}).to_metric_space());
  run(RealLineSpace(cantor_left_endpoints(1.0 / 3.0, 2)).to_metric_space());
  report(6, failures == 0, std::to_string(spaces) + " spaces with <= 7 points, " + std::to_string(failures) +
                               " mismatches against chain minimax");
}

// 7. Delete-min on the truncated harmonic set.
void criterion_delete_min() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = 4;
  auto map_for = [n](const HarmonicSet& H) { return [n, H](const LineSet& A) { return delete_min_retract(A, n, H); }; };

  const HarmonicSet H30(30);
  const SubsetDomain<double> d30(H30.values(), n);
  EstimateOptions exhaustive;
  exhaustive.exponent = 0.5;
  exhaustive.cap = d30.count();
  const auto hoelder = estimate_constant(d30, map_for(H30), AbsDistance{}, exhaustive);
  bool ok = hoelder.mode == SearchMode::exhaustive && hoelder.constant <= 4.0 + 1e-6;

  std::string trend;
  double previous = 0.0;
  for (std::uint64_t K : {10, 20, 40, 80}) {
    const HarmonicSet H(K);
    const SubsetDomain<double> dom(H.values(), n);
    EstimateOptions opts;
    opts.seed = 7;
    opts.cap = 10000;
    const auto r = estimate_constant(dom, map_for(H), AbsDistance{}, opts);
    ok = ok && r.constant > previous;
    previous = r.constant;
    trend += " K=" + std::to_string(K) + ":" + fmt("%.3f", r.constant) + "(" + std::string(to_string(r.mode)) + ")";
  }
  report(7, ok, "K=30 exhaustive Hoelder-1/2 constant " + fmt("%.6f", hoelder.constant) + " over " +
                    std::to_string(hoelder.pairs_examined) + " pairs; Lipschitz" + trend + "; " +
                    fmt("%.1f", seconds_since(t0)) + " s");
}

// 8. Non-LCP chain witnesses.
void criterion_witness() {
  bool ok = true;
  std::string detail;
  for (double L : {1.0, 2.0, 5.0}) {
    const auto w = nonlcp_witness(L);
    const auto v = validate_chain_witness(w);
    ok = ok && v.ok;
    detail += " L=" + fmt("%g", L) + ":k=" + std::to_string(w.k) + ",chain=" + std::to_string(w.chain.size()) +
              (v.ok ? "" : ",INVALID");
  }
  report(8, ok, "witnesses validated exactly:" + detail);
}

// 9. Paths in X(2): split, decomposition, merge curve.
void criterion_paths() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t samples = 101;
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i) t[i] = static_cast<double>(i) / (samples - 1);

  // Random walks with speed at most `speed` per unit parameter.
  auto walk = [&](double start, double speed) {
    std::vector<double> x{start};
    for (std::size_t i = 1; i < samples; ++i) x.push_back(x.back() + speed * u(rng) * (t[i] - t[i - 1]));
    return x;
  };

  std::size_t split_ok = 0;
  const double L = 1.0, D = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double offset = 20.0 + 10.0 * (u(rng) + 1.0);
    const auto a = walk(0.0, 0.9 * L), b = walk(0.5 + 0.5 * u(rng), 0.9 * L), c = walk(offset, 0.9 * L);
    SampledPath<double> f;
    f.t = t;
    for (std::size_t i = 0; i < samples; ++i) f.values.emplace_back(std::vector<double>{a[i], b[i], c[i]});
    const std::size_t z0 = static_cast<std::size_t>(trial) % samples;
    const LineSet E(std::vector<double>{a[z0], b[z0]});
    try {
      const auto s = split_gh(f, z0, E, L, D, 3, AbsDistance{});
      bool good = s.g_lipschitz <= L * (1 + 1e-9) && s.h_lipschitz <= L * (1 + 1e-9);
      for (std::size_t i = 0; i < samples; ++i) {
        std::vector<double> both = s.g.values[i].elements();
        both.insert(both.end(), s.h.values[i].begin(), s.h.values[i].end());
        std::sort(both.begin(), both.end());
        good = good && both == f.values[i].elements();
      }
      split_ok += good;
    } catch (const Error&) {
    }
  }

  std::size_t decomp_ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 200;
    std::vector<double> tt(m);
    for (std::size_t i = 0; i < m; ++i) tt[i] = static_cast<double>(i) / (m - 1);
    std::vector<double> lo(m), hi(m);
    const double phase = u(rng);
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::sin(3 * tt[i] + phase) + 0.01 * u(rng);
      hi[i] = lo[i] + 1.5 + 0.3 * std::cos(5 * tt[i]) + 0.01 * u(rng);
    }
    SampledPath<double> f;
    f.t = tt;
    for (std::size_t i = 0; i < m; ++i) f.values.emplace_back(std::vector<double>{hi[i], lo[i]});
    try {
      const auto dec = decompose_path(f, AbsDistance{});
      decomp_ok += dec.branches.size() == 2 && dec.branches[0] == lo && dec.branches[1] == hi;
    } catch (const Error&) {
    }
  }

  bool merge_ok = true;
  SampledPath<double> tight;
  for (std::size_t i = 0; i < samples; ++i) {
    tight.t.push_back(t[i]);
    tight.values.emplace_back(std::vector<double>{-1.0 + t[i], 1.0 - t[i]});
  }
  const auto mc = merge_curve(tight, AbsDistance{});
  const bool tight_ok = std::abs(mc.length - 2 * mc.ell) <= 1e-9;
  for (int trial = 0; trial < 50; ++trial) {
    auto a = walk(-1.0, 2.0), b = walk(1.0, 2.0);
    SampledPath<double> g;
    const std::size_t meet = 10 + static_cast<std::size_t>(trial);
    for (std::size_t i = 0; i < samples; ++i) {
      g.t.push_back(t[i]);
      if (i < meet)
        g.values.emplace_back(std::vector<double>{a[i], b[i]});
      else
        g.values.emplace_back(std::vector<double>{a[meet]});
    }
    const auto r = merge_curve(g, AbsDistance{});
    merge_ok = merge_ok && r.length <= 2 * r.ell + 1e-9;
  }

  report(9, split_ok == 100 && decomp_ok == 20 && merge_ok && tight_ok,
         "split_gh " + std::to_string(split_ok) + "/100, decompose_path " + std::to_string(decomp_ok) +
             "/20, merge_curve bound " + (merge_ok ? "holds" : "violated") + ", tight case length/ell " +
             fmt("%.12f", mc.length / mc.ell));
}

// 10. Quasiconvexity probes.
void criterion_obstruction() {
  // Smallest radius that keeps the epsilon-graph connected: the largest MST edge.
  auto eps_for = [](const FiniteMetricSpace& s) { return subdominant_ultrametric(s).diameter(); };
  bool ok = true;
  std::string parabola;
  double previous = 0.0;
  for (int T : {1, 2, 4, 8}) {
    const auto space = as_metric_space(generate("parabola:T=" + std::to_string(T) + ",N=" + std::to_string(20 * T + 1)));
    const double eps = eps_for(space);
    const auto r = quasiconvexity_constant(space, eps);
    ok = ok && r.connected && r.constant > previous;
    previous = r.constant;
    parabola += " T=" + std::to_string(T) + ":" + fmt("%.3f", r.constant);
  }

  const double gap = 0.05;
  const auto small = as_metric_space(generate("interval_union:intervals=-1:0;0.05:1,step=0.01"));
  const auto split = quasiconvexity_constant(small, 0.5 * gap);
  const auto joined = quasiconvexity_constant(small, gap * 1.001);
  ok = ok && !split.connected && split.components == 2 && std::abs(split.gap - gap) <= 1e-9 && joined.connected;

  std::string rug;
  previous = 0.0;
  for (int N : {9, 17, 33}) {
    const auto space = as_metric_space(generate("rug:N=" + std::to_string(N) + ",alpha=1/2"));
    const auto r = quasiconvexity_constant(space, eps_for(space));
    ok = ok && r.connected && r.constant > previous;
    previous = r.constant;
    rug += " " + std::to_string(N) + ":" + fmt("%.3f", r.constant);
  }
  report(10, ok, "parabola" + parabola + "; small gap disconnected below " + fmt("%g", gap) + " (gap " +
                     fmt("%.6f", split.gap) + "); rug" + rug);
}

// 11. Quasiconvexity constants.
void criterion_qc_bounds() {
  const auto b = qc_bounds(1.0);
  report(11, b.r == 1.0 / 1536.0 && b.M == 16.0, "qc_bounds(1) = (" + fmt("%.17g", b.r) + ", " + fmt("%g", b.M) + ")");
}

// 12. Quasihomogeneous transport under bi-Lipschitz maps.
void criterion_transport() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool ok = true;
  double worst_qh = -1e300, worst_conj = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = oracle::random_points(6, 500 + static_cast<std::uint64_t>(trial), 0.1);
    const double th1 = 6.283185307179586 * u(rng), th2 = 6.283185307179586 * u(rng);
    const double s1 = 1.0 + u(rng), s2 = 1.0 + u(rng);
    std::vector<std::size_t> f{0, 1, 2, 3, 4, 5};
    std::shuffle(f.begin(), f.end(), rng);
    std::vector<Point2> image(6);
    for (std::size_t i = 0; i < 6; ++i) {
      const double x = std::cos(th2) * pts[i][0] - std::sin(th2) * pts[i][1];
      const double y = std::sin(th2) * pts[i][0] + std::cos(th2) * pts[i][1];
      image[f[i]] = {std::cos(th1) * s1 * x - std::sin(th1) * s2 * y, std::sin(th1) * s1 * x + std::cos(th1) * s2 * y};
    }
    const auto X = FiniteMetricSpace::from_points(pts, EuclideanDistance{});
    const auto Y = FiniteMetricSpace::from_points(image, EuclideanDistance{});
    double L = 1.0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i + 1; j < 6; ++j)
        L = std::max({L, Y(f[i], f[j]) / X(i, j), X(i, j) / Y(f[i], f[j])});
    const auto eta = [L](double t) { return L * L * t; };

    const auto sets = index_sets(6, 3);
    const auto qh = check_induced_qh(X, Y, f, sets, eta);
    ok = ok && qh.ok;
    worst_qh = std::max(worst_qh, qh.worst_excess);

    const auto family = build_centers(subdominant_ultrametric(X));
    auto retr = [&](const IndexSet& A) { return generic_retract(family, A, 3, 2); };
    const auto inv = invert_map(f, 6);
    auto conj = [&](const IndexSet& B) { return induced_subset_map(f, retr(induced_subset_map(inv, B))); };
    const double lip_r = estimate_constant_exhaustive(sets, retr, X).constant;
    const double lip_c = estimate_constant_exhaustive(sets, conj, Y).constant;
    ok = ok && lip_c <= eta(lip_r) * (1 + 1e-9);
    worst_conj = std::max(worst_conj, lip_c / eta(lip_r));
  }
  report(12, ok, "20 bi-Lipschitz maps on X(3): worst quadruple excess " + fmt("%.3g", worst_qh) +
                     ", max conjugated constant / eta(Lip r) " + fmt("%.6f", worst_conj));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{
      criterion_line_constant, criterion_axioms,      criterion_displacement, criterion_separation,
      criterion_ultrametric,   criterion_subdominant, criterion_delete_min,   criterion_witness,
      criterion_paths,         criterion_obstruction, criterion_qc_bounds,    criterion_transport};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", g_failures, criteria.size());
  return g_failures;
}
