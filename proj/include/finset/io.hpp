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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "finset/analysis/constant.hpp"
#include "finset/analysis/obstruction.hpp"
#include "finset/error.hpp"
#include "finset/generators.hpp"
#include "finset/line.hpp"
#include "finset/metric_space.hpp"
#include "finset/transforms.hpp"
#include "finset/ultra.hpp"

namespace finset::io {

using json = nlohmann::json;

/// Doubles are written by the JSON library in shortest round-trip form; CSV
/// uses 17 significant digits. Both parse back to the identical double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class P>
json to_json(const FSet<P>& A) {
  return json(A.elements());
}

template <class P>
FSet<P> fset_from_json(const json& j) {
  try {
    return FSet<P>(j.get<std::vector<P>>());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

// Spaces: {"kind":"finite","points":[...],"dist":[[...]]} or {"kind":"line","points":[...]}.

inline json to_json(const FiniteMetricSpace& s) {
  json labels = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) labels.push_back(s.label(i));
  return json{{"kind", "finite"}, {"points", labels}, {"dist", s.matrix()}};
}

inline json to_json(const RealLineSpace& s) {
  json j{{"kind", "line"}, {"points", s.values()}};
  if (s.scale()) {
    j["scale"] = *s.scale();
    j["scaled"] = s.scaled();
  }
  return j;
}

inline json to_json(const AnySpace& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

/// Finite spaces without "dist" take points as coordinate arrays (Euclidean)
/// or as reals (absolute difference).
inline AnySpace space_from_json(const json& j, double tol = kDefaultTolerance) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const json& pts = j.at("points");
    if (kind == "line") {
      if (j.contains("scale"))
        return RealLineSpace::from_scaled(j.at("scaled").get<std::vector<std::int64_t>>(),
                                          j.at("scale").get<std::int64_t>());
      return RealLineSpace(pts.get<std::vector<double>>());
    }
    if (kind != "finite") throw Error(ErrorCode::parse_error, "unknown space kind: " + kind);
    if (j.contains("dist")) {
      std::vector<std::string> labels;
      for (const auto& p : pts) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
      auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
      if (dist.size() != labels.size()) throw Error(ErrorCode::parse_error, "points and dist sizes differ");
      return FiniteMetricSpace::validated(std::move(dist), std::move(labels), tol);
    }
    std::vector<std::string> labels;
    for (const auto& p : pts) labels.push_back(p.dump());
    if (!pts.empty() && pts.front().is_array()) {
      const auto coords = pts.get<std::vector<std::vector<double>>>();
      const std::size_t n = coords.size();
      std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (coords[a].size() != coords[b].size()) throw Error(ErrorCode::parse_error, "mixed point dimensions");
          double s = 0.0;
          for (std::size_t c = 0; c < coords[a].size(); ++c) s += (coords[a][c] - coords[b][c]) * (coords[a][c] - coords[b][c]);
          dist[a][b] = std::sqrt(s);
        }
      return FiniteMetricSpace(std::move(dist), std::move(labels), tol);
    }
    return FiniteMetricSpace::from_points(pts.get<std::vector<double>>(), AbsDistance{}, std::move(labels));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

/// A --space argument: a readable JSON file, otherwise a generator spec.
inline AnySpace load_space(const std::string& arg, double tol = kDefaultTolerance) {
  std::ifstream probe(arg);
  if (probe) return space_from_json(parse_json(read_file(arg)), tol);
  return generate(arg);
}

// Interval unions: {"intervals":[[l,r],...]}.

inline json to_json(const IntervalUnion& X) {
  json arr = json::array();
  for (const auto& I : X.intervals()) arr.push_back({I.lo, I.hi});
  return json{{"intervals", arr}};
}

inline IntervalUnion interval_union_from_json(const json& j) {
  try {
    std::vector<Interval> parts;
    for (const auto& p : j.at("intervals")) {
      const auto v = p.get<std::vector<double>>();
      if (v.size() != 2) throw Error(ErrorCode::parse_error, "interval must be [lo, hi]");
      parts.push_back({v[0], v[1]});
    }
    return IntervalUnion(std::move(parts));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

// Dendrograms: {"merge_height":h,"children":[...]}; leaves may carry "label".

inline json to_json(const Dendrogram& d) {
  if (d.is_leaf()) {
    json j{{"merge_height", d.merge_height}};
    if (!d.label.empty()) j["label"] = d.label;
    return j;
  }
  json children = json::array();
  for (const auto& c : d.children) children.push_back(to_json(c));
  return json{{"merge_height", d.merge_height}, {"children", children}};
}

inline Dendrogram dendrogram_from_json(const json& j) {
  try {
    Dendrogram d;
    d.merge_height = j.value("merge_height", 0.0);
    d.label = j.value("label", std::string{});
    if (j.contains("children"))
      for (const auto& c : j.at("children")) d.children.push_back(dendrogram_from_json(c));
    return d;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

// Transforms: {"kind":"power","alpha":a} or {"kind":"table","pairs":[[t,phi],...]}.

inline json to_json(const MetricTransform& T) {
  json j;
  if (const auto* p = std::get_if<PowerForm>(&T.form()))
    j = json{{"kind", "power"}, {"alpha", p->alpha}};
  else {
    json pairs = json::array();
    for (const auto& [t, v] : std::get<TableForm>(T.form()).pairs) pairs.push_back({t, v});
    j = json{{"kind", "table"}, {"pairs", pairs}};
  }
  if (T.doubling()) j["doubling"] = *T.doubling();
  return j;
}

inline MetricTransform transform_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    std::optional<double> M;
    if (j.contains("doubling")) M = j.at("doubling").get<double>();
    if (kind == "power") return MetricTransform(PowerForm{j.at("alpha").get<double>()}, M);
    if (kind == "table") {
      TableForm t;
      for (const auto& p : j.at("pairs")) {
        const auto v = p.get<std::vector<double>>();
        if (v.size() != 2) throw Error(ErrorCode::parse_error, "table entry must be [t, phi]");
        t.pairs.emplace_back(v[0], v[1]);
      }
      return MetricTransform(std::move(t), M);
    }
    throw Error(ErrorCode::parse_error, "unknown transform kind: " + kind);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

// Witnesses store harmonic points by denominator: 0 is the point 0, j > 0 is 1/j.

inline json to_json(const ChainWitness& w) {
  return json{{"L", w.L},         {"k", w.k},         {"x", w.x},
              {"y", w.y},         {"z", w.z},         {"encoding", "denominator"},
              {"chain", w.chain}, {"max_step", w.max_step}};
}

inline ChainWitness witness_from_json(const json& j) {
  try {
    ChainWitness w;
    w.L = j.at("L").get<double>();
    w.k = j.at("k").get<std::uint64_t>();
    w.x = j.at("x").get<HarmonicPoint>();
    w.y = j.at("y").get<HarmonicPoint>();
    w.z = j.at("z").get<HarmonicPoint>();
    w.chain = j.at("chain").get<std::vector<std::vector<HarmonicPoint>>>();
    w.max_step = j.at("max_step").get<double>();
    return w;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

inline json to_json(const CenterFamily& f) {
  json levels = json::array();
  for (const auto& l : f.levels) levels.push_back({{"k", l.k}, {"scale", l.scale}, {"center", l.center}});
  return json{{"L", f.L}, {"b", f.b}, {"levels", levels}};
}

inline CenterFamily center_family_from_json(const json& j) {
  try {
    CenterFamily f;
    f.L = j.at("L").get<double>();
    f.b = j.at("b").get<double>();
    for (const auto& l : j.at("levels"))
      f.levels.push_back({l.at("k").get<int>(), l.at("scale").get<double>(),
                          l.at("center").get<std::vector<std::size_t>>()});
    return f;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
}

inline json error_json(const Error& e) {
  return json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
}

// CSV reports: one header line, one row per report.

inline constexpr const char* kReportHeader = "kind,constant,exponent,witness,pairs_examined,mode";

template <class P>
std::string set_token(const FSet<P>& A) {
  std::string s = "{";
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (i) s += ' ';
    if constexpr (std::is_floating_point_v<P>)
      s += format_double(A[i]);
    else
      s += std::to_string(A[i]);
  }
  return s + "}";
}

/// Witness pair as "{a b}|{c d}"; empty when no pair was found.
template <class P>
std::string csv_row(const ConstantReport<P>& r) {
  std::string witness;
  if (r.witness) witness = set_token(r.witness->first) + "|" + set_token(r.witness->second);
  return std::string(r.kind()) + "," + format_double(r.constant) + "," + format_double(r.exponent) + "," +
         witness + "," + std::to_string(r.pairs_examined) + "," + std::string(to_string(r.mode));
}

template <class P>
json to_json(const ConstantReport<P>& r) {
  json j{{"kind", std::string(r.kind())},
         {"constant", r.constant},
         {"exponent", r.exponent},
         {"pairs_examined", r.pairs_examined},
         {"mode", std::string(to_string(r.mode))}};
  if (r.witness) j["witness"] = {to_json(r.witness->first), to_json(r.witness->second)};
  return j;
}

}  // namespace finset::io
