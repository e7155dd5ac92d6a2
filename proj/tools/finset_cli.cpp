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

// finset: command-line front end. Reports go to --out (or stdout); errors go
// to stderr as {"error": code, "message": text} with a nonzero exit status.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finset/finset.hpp"

namespace {

using namespace finset;
using io::json;

struct Options {
  std::string space;
  std::string set_a, set_b;
  std::string kind = "line";
  std::size_t n = 3;
  std::size_t m = 0;  // 0 means n - 1
  double alpha = 1.0;
  double L = 1.0;
  double eps = 0.0;
  double step = 0.25;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultEnumerationCap;
  std::string out;
  std::string phi;
  std::string witness;
  std::string format = "csv";
  double rescale = 0.0;
  double tol = kDefaultTolerance;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + o.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(SpaceSpec::parse_number(item));
  if (v.empty()) throw Error(ErrorCode::parse_error, "empty set: '" + s + "'");
  return v;
}

IndexSet parse_index_set(const std::string& s, std::size_t size) {
  std::vector<std::size_t> v;
  for (double x : parse_list(s)) {
    if (x < 0 || x != static_cast<double>(static_cast<std::size_t>(x)) || x >= static_cast<double>(size))
      throw Error(ErrorCode::not_a_subset, "index out of range: " + std::to_string(x));
    v.push_back(static_cast<std::size_t>(x));
  }
  return IndexSet(std::move(v));
}

AnySpace load(const Options& o) {
  if (o.space.empty()) throw Error(ErrorCode::invalid_argument, "--space is required");
  return io::load_space(o.space, o.tol);
}

// An interval union from a JSON file or an interval_union spec, with its samples.
std::pair<IntervalUnion, std::vector<double>> load_intervals(const Options& o) {
  std::ifstream probe(o.space);
  if (probe) {
    const auto X = io::interval_union_from_json(io::parse_json(io::read_file(o.space)));
    return {X, X.sample(o.step)};
  }
  const auto spec = SpaceSpec::parse(o.space);
  if (spec.name != "interval_union") throw Error(ErrorCode::invalid_argument, "--kind intervals needs an interval union");
  const auto X = interval_union_from_spec(spec);
  return {X, X.sample(spec.number("step", o.step))};
}

std::size_t lower(const Options& o) {
  if (o.m != 0) return o.m;
  if (o.n < 2) throw Error(ErrorCode::invalid_argument, "--n must be at least 2");
  return o.n - 1;
}

HarmonicSet harmonic_for(const RealLineSpace& s) {
  for (double v : s.values())
    if (!HarmonicSet{}.contains(v, 1e-12)) throw Error(ErrorCode::not_a_subset, "space is not a harmonic truncation");
  return HarmonicSet(s.size() - 1);
}

const RealLineSpace& need_line(const AnySpace& s, const std::string& what) {
  if (const auto* line = std::get_if<RealLineSpace>(&s)) return *line;
  throw Error(ErrorCode::invalid_argument, what + " needs a subset of the real line");
}

int cmd_generate(const Options& o) {
  emit(o, io::to_json(load(o)).dump(2));
  return 0;
}

int cmd_hausdorff(const Options& o) {
  const auto space = load(o);
  double h = 0.0;
  if (const auto* line = std::get_if<RealLineSpace>(&space)) {
    const LineSet A(parse_list(o.set_a), o.tol), B(parse_list(o.set_b), o.tol);
    for (double x : A)
      if (!line->contains(x, o.tol)) throw Error(ErrorCode::not_a_subset, "A is not inside the space");
    for (double x : B)
      if (!line->contains(x, o.tol)) throw Error(ErrorCode::not_a_subset, "B is not inside the space");
    h = hausdorff(A, B);
  } else {
    const auto& X = std::get<FiniteMetricSpace>(space);
    h = hausdorff(parse_index_set(o.set_a, X.size()), parse_index_set(o.set_b, X.size()), X);
  }
  emit(o, json{{"hausdorff", h}}.dump());
  return 0;
}

int cmd_retract(const Options& o) {
  json out;
  if (o.kind == "intervals") {
    const auto [X, samples] = load_intervals(o);
    const LineSet A(parse_list(o.set_a), o.tol);
    out = json{{"input", io::to_json(A)}, {"output", io::to_json(IntervalUnionRetraction(X, o.n)(A, o.tol))}};
  } else if (o.kind == "ultra" || o.kind == "snowflake") {
    const auto X = as_metric_space(load(o));
    const auto A = parse_index_set(o.set_a, X.size());
    const auto r = o.kind == "ultra" ? generic_retract(build_centers(X, std::nullopt, o.tol), A, o.n, lower(o))
                                     : snowflake_retract(X, A, o.n, lower(o), o.L);
    out = json{{"input", io::to_json(A)}, {"output", io::to_json(r)}};
  } else {
    const LineSet A(parse_list(o.set_a), o.tol);
    LineSet r = A;
    if (o.kind == "line") r = line_retract(A, o.n);
    else if (o.kind == "median") r = median_retract(A, o.n);
    else if (o.kind == "delete-min") r = delete_min_retract(A, o.n);
    else throw Error(ErrorCode::invalid_argument, "unknown retraction kind: " + o.kind);
    out = json{{"input", io::to_json(A)}, {"output", io::to_json(r)}};
  }
  out["kind"] = o.kind;
  out["n"] = o.n;
  emit(o, out.dump());
  return 0;
}

template <class P, class Map, class Metric>
std::string constant_report(const Options& o, const SubsetDomain<P>& domain, const Map& f, const Metric& d) {
  EstimateOptions opts;
  opts.exponent = o.alpha;
  opts.cap = o.cap;
  opts.seed = o.seed;
  const auto r = estimate_constant(domain, f, d, opts);
  if (o.format == "json") return io::to_json(r).dump(2);
  return std::string(io::kReportHeader) + "\n" + io::csv_row(r) + "\n";
}

int cmd_estimate(const Options& o) {
  std::string text;
  const std::string& map = o.kind;
  if (map == "intervals") {
    const auto [X, samples] = load_intervals(o);
    const IntervalUnionRetraction retr(X, o.n);
    text = constant_report(o, SubsetDomain<double>(samples, o.n), [&](const LineSet& A) { return retr(A, o.tol); },
                           AbsDistance{});
  } else if (map == "ultra" || map == "snowflake") {
    const auto X = as_metric_space(load(o));
    const std::size_t m = lower(o);
    const SubsetDomain<std::size_t> domain(index_universe(X.size()), o.n);
    if (map == "ultra") {
      const auto family = build_centers(X, std::nullopt, o.tol);
      text = constant_report(o, domain, [&](const IndexSet& A) { return generic_retract(family, A, o.n, m); }, X);
    } else {
      const SnowflakeRetraction snow(X, o.L);
      text = constant_report(o, domain, [&](const IndexSet& A) { return snow(A, o.n, m); }, X);
    }
  } else {
    const auto space = load(o);
    const auto& line = need_line(space, "--map " + map);
    const SubsetDomain<double> domain(line.values(), o.n);
    if (map == "line")
      text = constant_report(o, domain, [&](const LineSet& A) { return line_retract(A, o.n); }, AbsDistance{});
    else if (map == "median")
      text = constant_report(o, domain, [&](const LineSet& A) { return median_retract(A, o.n); }, AbsDistance{});
    else if (map == "delete-min") {
      const auto H = harmonic_for(line);
      text = constant_report(o, domain, [&](const LineSet& A) { return delete_min_retract(A, o.n, H); }, AbsDistance{});
    } else
      throw Error(ErrorCode::invalid_argument, "unknown map: " + map);
  }
  emit(o, text);
  return 0;
}

int cmd_witness(const Options& o) {
  const auto w = nonlcp_witness(o.L);
  const auto v = validate_chain_witness(w);
  if (!v.ok) throw Error(ErrorCode::precondition_violated, "generated witness failed validation: " + v.failures.front());
  emit(o, io::to_json(w).dump());
  return 0;
}

int cmd_quasiconvexity(const Options& o) {
  const auto X = as_metric_space(load(o));
  const double eps = o.eps > 0 ? o.eps : subdominant_ultrametric(X).diameter();
  const auto r = quasiconvexity_constant(X, eps);
  std::string text = "eps,constant,connected,components,gap,witness\n";
  text += io::format_double(eps) + "," + (r.connected ? io::format_double(r.constant) : std::string("inf")) + "," +
          (r.connected ? "true" : "false") + "," + std::to_string(r.components) + "," + io::format_double(r.gap) +
          ",";
  const auto w = r.connected ? r.witness : r.gap_witness;
  text += "{" + X.label(w.first) + "}|{" + X.label(w.second) + "}\n";
  emit(o, text);
  return 0;
}

int cmd_transform(const Options& o) {
  auto X = as_metric_space(load(o));
  if (!o.phi.empty()) X = apply_transform(X, io::transform_from_json(io::parse_json(io::read_file(o.phi))), o.tol);
  else if (o.alpha != 1.0) X = apply_transform(X, MetricTransform::power(o.alpha), o.tol);
  if (o.rescale > 0) X = rescale(X, o.rescale);
  emit(o, io::to_json(X).dump(2));
  return 0;
}

int cmd_ultra_build(const Options& o) {
  const auto X = as_metric_space(load(o));
  const auto family = build_centers(X, std::nullopt, o.tol);
  auto j = io::to_json(family);
  j["verified"] = verify_center_family(X, family, o.tol).ok();
  emit(o, j.dump());
  return 0;
}

int cmd_validate(const Options& o) {
  json j;
  if (!o.witness.empty()) {
    const auto w = io::witness_from_json(io::parse_json(io::read_file(o.witness)));
    const auto v = validate_chain_witness(w);
    j = json{{"valid", v.ok}, {"failures", v.failures}};
    emit(o, j.dump());
    return v.ok ? 0 : 1;
  }
  const auto X = as_metric_space(load(o));
  const auto tri = X.check_triangle(o.tol);
  const auto ultra = validate_ultrametric(X, o.tol);
  j = json{{"points", X.size()},
           {"is_metric", tri.ok},
           {"triangle_violation", tri.worst_violation},
           {"is_ultrametric", ultra.is_ultrametric},
           {"ultrametric_violation", ultra.violation},
           {"worst_triple", ultra.worst_triple}};
  emit(o, j.dump());
  return 0;
}

void print_error(const Error& e) { std::cerr << io::error_json(e).dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("FINSET_TOLERANCE")) {
    try {
      o.tol = std::stod(env);
    } catch (const std::exception&) {
      print_error(Error(ErrorCode::parse_error, "FINSET_TOLERANCE is not a number"));
      return 2;
    }
  }

  CLI::App app{"Lipschitz retractions of finite subset spaces"};
  app.require_subcommand(1);
  auto space_opt = [&](CLI::App* c) { c->add_option("--space", o.space, "JSON file or generator spec"); };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default stdout)"); };

  auto* gen = app.add_subcommand("generate", "write a generated space as JSON");
  space_opt(gen);
  out_opt(gen);

  auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance of two subsets");
  space_opt(hd);
  hd->add_option("--a", o.set_a, "first set (values, or indices for finite spaces)")->required();
  hd->add_option("--b", o.set_b, "second set")->required();
  out_opt(hd);

  auto* rt = app.add_subcommand("retract", "apply a retraction to one set");
  space_opt(rt);
  rt->add_option("--kind", o.kind, "line|median|intervals|delete-min|ultra|snowflake");
  rt->add_option("--set", o.set_a, "the set")->required();
  rt->add_option("--n", o.n);
  rt->add_option("--m", o.m, "target cardinality for ultra/snowflake (default n-1)");
  rt->add_option("--L", o.L, "target constant for snowflake");
  rt->add_option("--step", o.step, "sampling step for interval unions");
  out_opt(rt);

  auto* est = app.add_subcommand("estimate-lip", "sup-ratio constant of a retraction");
  space_opt(est);
  est->add_option("--map", o.kind, "line|median|intervals|delete-min|ultra|snowflake");
  est->add_option("--n", o.n);
  est->add_option("--m", o.m);
  est->add_option("--alpha", o.alpha, "exponent: 1 for Lipschitz, < 1 for Hoelder");
  est->add_option("--L", o.L, "target constant for snowflake");
  est->add_option("--seed", o.seed);
  est->add_option("--cap", o.cap, "largest subset count searched exhaustively");
  est->add_option("--step", o.step);
  est->add_option("--format", o.format, "csv|json");
  out_opt(est);

  auto* wit = app.add_subcommand("witness", "chain witness for the harmonic set");
  wit->add_option("--L", o.L);
  out_opt(wit);

  auto* qc = app.add_subcommand("quasiconvexity", "epsilon-graph quasiconvexity probe");
  space_opt(qc);
  qc->add_option("--eps", o.eps, "neighbour radius (default: least radius keeping the graph connected)");
  out_opt(qc);

  auto* tr = app.add_subcommand("transform", "metric transform of a space");
  space_opt(tr);
  tr->add_option("--alpha", o.alpha, "power transform t^alpha");
  tr->add_option("--map", o.phi, "transform JSON file");
  tr->add_option("--rescale", o.rescale, "multiply distances by this factor");
  out_opt(tr);

  auto* ub = app.add_subcommand("ultra-build", "center family of an ultrametric space");
  space_opt(ub);
  out_opt(ub);

  auto* val = app.add_subcommand("validate", "metric and ultrametric checks, or witness validation");
  space_opt(val);
  val->add_option("--witness", o.witness, "ChainWitness JSON file");
  out_opt(val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*hd) return cmd_hausdorff(o);
    if (*rt) return cmd_retract(o);
    if (*est) return cmd_estimate(o);
    if (*wit) return cmd_witness(o);
    if (*qc) return cmd_quasiconvexity(o);
    if (*tr) return cmd_transform(o);
    if (*ub) return cmd_ultra_build(o);
    if (*val) return cmd_validate(o);
  } catch (const Error& e) {
    print_error(e);
    return 2;
  } catch (const std::exception& e) {
    print_error(Error(ErrorCode::invalid_argument, e.what()));
    return 2;
  }
  return 0;
}
