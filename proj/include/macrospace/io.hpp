// Copyright 2026 The Macrospace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "macrospace/components.hpp"
#include "macrospace/covers.hpp"
#include "macrospace/metric_space.hpp"
#include "macrospace/multimap.hpp"
#include "macrospace/tower.hpp"

namespace macrospace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kGenerator = "macrospace 0.1.0";

/// Integers become JSON numbers, everything else a "p/q" string.
inline Json to_json(const Distance& d) {
  if (d.is_integer()) {
    const auto& v = d.value();
    if (numerator(v) <= std::numeric_limits<std::int64_t>::max()) {
      return static_cast<std::int64_t>(numerator(v));
    }
  }
  return d.to_string();
}

/// Accepts integers, "p/q" / decimal strings, and floats. A float is read
/// through its shortest round-trip decimal, so 0.1 means 1/10.
inline Distance distance_from_json(const Json& j) {
  if (j.is_number_unsigned()) {
    return Distance(Rational(j.get<std::uint64_t>()));
  }
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) {
      throw input_error("NegativeDistance", "distance values must be non-negative",
                        {{"value", std::to_string(v)}});
    }
    return Distance(v);
  }
  if (j.is_number_float()) return Distance::parse(j.dump());
  if (j.is_string()) return Distance::parse(j.get<std::string>());
  throw input_error("MalformedInput", "expected a number or a rational string",
                    {{"value", j.dump()}});
}

inline std::vector<Distance> distances_from_json(const Json& j) {
  if (!j.is_array()) throw input_error("MalformedInput", "expected an array of values");
  std::vector<Distance> out;
  for (const auto& v : j) out.push_back(distance_from_json(v));
  return out;
}

inline Json to_json(const std::vector<Distance>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

/// Comma separated scale list, e.g. "1,2,7/2".
inline std::vector<Distance> parse_scale_list(const std::string& text) {
  std::vector<Distance> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(Distance::parse(item));
  }
  return out;
}

inline Json read_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw input_error("MalformedJson", e.what(), {{"file", origin}});
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("FileUnreadable", "cannot open file", {{"file", path}});
  std::stringstream buffer;
  buffer << in.rdbuf();
  return read_json_text(buffer.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("FileUnwritable", "cannot open output", {{"file", path}});
  out << text;
}

inline Json to_json(const FiniteMetricSpace& space) {
  Json dist = Json::array();
  for (PointIndex i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (PointIndex j = 0; j < space.size(); ++j) row.push_back(to_json(space.distance(i, j)));
    dist.push_back(std::move(row));
  }
  return Json{{"labels", space.labels()}, {"dist", std::move(dist)}};
}

/// {"labels": [...], "dist": [[...]]} or {"kappa": {"k", "n", "levels"}}.
inline FiniteMetricSpace space_from_json(const Json& j,
                                         std::size_t point_budget = kDefaultPointBudget) {
  if (!j.is_object()) throw input_error("MalformedInput", "space must be a JSON object");
  try {
    if (j.contains("kappa")) {
      const Json& spec = j.at("kappa");
      KappaSpec kappa;
      kappa.alphabet_size = spec.at("k").get<std::size_t>();
      kappa.depth = spec.at("n").get<std::size_t>();
      if (spec.contains("levels")) kappa.level_values = distances_from_json(spec.at("levels"));
      return gen_kappa_space(kappa, point_budget);
    }
    const Json& dist = j.at("dist");
    if (!dist.is_array()) throw input_error("MalformedInput", "dist must be an array");
    std::vector<std::vector<Distance>> matrix;
    for (const auto& row : dist) matrix.push_back(distances_from_json(row));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      for (const auto& l : j.at("labels")) {
        labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
      }
    } else {
      for (std::size_t i = 0; i < matrix.size(); ++i) labels.push_back(std::to_string(i));
    }
    return validate_metric(std::move(labels), matrix);
  } catch (const Json::exception& e) {
    throw input_error("MalformedInput", e.what());
  }
}

inline FiniteMetricSpace read_space_file(const std::string& path,
                                         std::size_t point_budget = kDefaultPointBudget) {
  return space_from_json(read_json_file(path), point_budget);
}

inline Json to_json(const Tower& tower) {
  Json parent = Json::array();
  for (const auto& level : tower.parents()) parent.push_back(level);
  return Json{{"levels", to_json(tower.level_values())},
              {"nodes", tower.node_ids()},
              {"parent", std::move(parent)}};
}

inline Tower tower_from_json(const Json& j) {
  try {
    std::vector<std::vector<NodeIndex>> parents;
    for (const auto& level : j.at("parent")) {
      parents.push_back(level.get<std::vector<NodeIndex>>());
    }
    return Tower(distances_from_json(j.at("levels")),
                 j.at("nodes").get<std::vector<std::vector<std::string>>>(),
                 std::move(parents));
  } catch (const Json::exception& e) {
    throw input_error("MalformedInput", e.what());
  }
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Graphviz digraph, one rank per level, edges child -> parent.
inline std::string tower_to_dot(const Tower& tower) {
  std::ostringstream out;
  out << "digraph tower {\n  rankdir=BT;\n  node [shape=box];\n";
  for (LevelIndex l = 0; l < tower.level_count(); ++l) {
    out << "  { rank=same;";
    for (NodeIndex i = 0; i < tower.node_count(l); ++i) {
      out << ' ' << detail::dot_quote(tower.node_id(l, i)) << ';';
    }
    out << " }\n";
  }
  for (LevelIndex l = 0; l + 1 < tower.level_count(); ++l) {
    for (NodeIndex i = 0; i < tower.node_count(l); ++i) {
      out << "  " << detail::dot_quote(tower.node_id(l, i)) << " -> "
          << detail::dot_quote(tower.node_id(l + 1, tower.parent(l, i))) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

/// Pairs are written by label.
inline Json to_json(const MultiMap& phi) {
  Json pairs = Json::array();
  for (const auto& [x, y] : phi.pairs()) {
    pairs.push_back(Json::array({phi.source()->label(x), phi.target()->label(y)}));
  }
  return Json{{"pairs", std::move(pairs)}};
}

inline MultiMap multimap_from_json(const Json& j, SpacePtr source, SpacePtr target) {
  std::vector<MultiMap::Pair> pairs;
  try {
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) {
        throw input_error("MalformedInput", "a pair needs two entries");
      }
      pairs.emplace_back(source->index_of(p[0].get<std::string>()),
                         target->index_of(p[1].get<std::string>()));
    }
  } catch (const Json::exception& e) {
    throw input_error("MalformedInput", e.what());
  }
  return MultiMap(std::move(source), std::move(target), std::move(pairs));
}

inline Json to_json(const OscillationTable& table) {
  Json out = Json::array();
  for (const auto& e : table.entries) {
    out.push_back(Json::array({to_json(e.delta), to_json(e.value)}));
  }
  return out;
}

inline OscillationTable oscillation_from_json(const Json& j) {
  OscillationTable table;
  try {
    for (const auto& e : j) {
      table.entries.push_back({distance_from_json(e.at(0)), distance_from_json(e.at(1))});
    }
  } catch (const Json::exception& e) {
    throw input_error("MalformedInput", e.what());
  }
  return table;
}

inline Json to_json(const CoverNumber& c) {
  return Json{{"lower", c.lower}, {"upper", c.upper}, {"exact", c.exact()}};
}

inline Json to_json(const CapacityProfile& p) {
  return Json{{"delta", to_json(p.delta)},
              {"epsilon", to_json(p.epsilon)},
              {"cov_min", to_json(p.min_over_centers)},
              {"cov_max", to_json(p.max_over_centers)}};
}

inline Json to_json(const GeometryVerdict& v) {
  Json witnesses = Json::array();
  for (const auto& p : v.witness_scales) witnesses.push_back(to_json(p));
  Json tested = Json::array();
  for (const auto& p : v.tested) tested.push_back(to_json(p));
  return Json{{"generator", kGenerator},
              {"verdict", to_string(v.kind)},
              {"label", to_string(v.label)},
              {"threshold_k", v.threshold_k},
              {"grid_policy", kGridPolicy},
              {"diameters", to_json(v.diameters)},
              {"budget_exhausted", v.budget_exhausted},
              {"witnesses", std::move(witnesses)},
              {"tested", std::move(tested)}};
}

inline std::string csv_header() { return std::string("# ") + kGenerator + "\n"; }

inline std::string mesh_csv(const std::vector<MeshProfileRow>& rows) {
  std::ostringstream out;
  out << "scale,mesh,blocks\n";
  for (const auto& r : rows) {
    out << r.scale.to_string() << ',' << r.mesh.to_string() << ',' << r.block_count << '\n';
  }
  return out.str();
}

inline std::string profile_csv(const std::vector<CapacityProfile>& rows) {
  std::ostringstream out;
  out << "delta,epsilon,cov_min_lower,cov_min_upper,cov_max_lower,cov_max_upper,exact\n";
  for (const auto& p : rows) {
    out << p.delta.to_string() << ',' << p.epsilon.to_string() << ','
        << p.min_over_centers.lower << ',' << p.min_over_centers.upper << ','
        << p.max_over_centers.lower << ',' << p.max_over_centers.upper << ','
        << (p.exact() ? "true" : "false") << '\n';
  }
  return out.str();
}

/// {"error": kind, "category", "message", fields...} for stderr.
inline Json to_json(const Error& e) {
  Json out{{"error", e.kind()},
           {"category", e.category() == ErrorCategory::input ? "input" : "construction"},
           {"message", e.what()}};
  for (const auto& [k, v] : e.fields()) out[k] = v;
  return out;
}

}  // namespace macrospace
