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

// macrospace: command-line front end.
//
// Exit codes: 0 success, 1 construction failure, 2 input or usage error.
// Failures are printed to stderr as one JSON object.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macrospace/macrospace.hpp"

namespace ms = macrospace;

namespace {

constexpr int kExitConstruction = 1;
constexpr int kExitInput = 2;

std::size_t effort_budget(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("MACROSPACE_EFFORT")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ms::input_error("InvalidEffort", "MACROSPACE_EFFORT must be a positive integer",
                          {{"value", env}});
  }
  return ms::kDefaultEffortBudget;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    ms::write_text_file(out_path, text);
  }
}

std::string dump(const ms::Json& j) { return j.dump(2) + "\n"; }

ms::PointIndex point_or_first(const ms::FiniteMetricSpace& space, const std::string& label) {
  return label.empty() ? 0 : space.index_of(label);
}

ms::SpaceFamily named_family(const std::string& name, std::size_t depth) {
  ms::SpaceFamily family;
  family.first = 1;
  family.last = depth;
  if (name == "binary") {
    family.member = [](std::size_t n) { return ms::gen_kappa_space({2, n, {}}); };
  } else if (name == "growing") {
    family.member = [](std::size_t n) { return ms::gen_kappa_space({n, n, {}}); };
  } else if (name == "singleton") {
    family.member = [](std::size_t) { return ms::gen_kappa_space({1, 0, {}}); };
  } else {
    throw ms::input_error("UnknownFamily", "family must be binary, growing or singleton",
                          {{"family", name}});
  }
  return family;
}

void usage_error(const std::string& message) {
  throw ms::input_error("UsageError", message);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite macro-scale geometry: towers, capacities and certified maps"};
  app.require_subcommand(1);
  std::size_t effort = 0;
  app.add_option("--effort", effort, "search budget (overrides MACROSPACE_EFFORT)");

  // gen
  auto* gen = app.add_subcommand("gen", "write the space k^{<=n}");
  std::size_t gen_k = 2, gen_n = 1;
  std::string gen_levels, gen_out;
  gen->add_option("--k", gen_k, "alphabet size")->required();
  gen->add_option("--n", gen_n, "word length")->required();
  gen->add_option("--levels", gen_levels, "comma separated level values");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "mesh and capacity profiles as CSV");
  std::string an_space, an_scales, an_out;
  analyze->add_option("space,--space", an_space, "space JSON")->required();
  analyze->add_option("--scales", an_scales, "comma separated, increasing")->required();
  analyze->add_option("--out", an_out, "output file (default stdout)");

  // tower
  auto* tower = app.add_subcommand("tower", "canonical component tower");
  std::string tw_space, tw_levels, tw_format = "json", tw_out;
  tower->add_option("space,--space", tw_space, "space JSON")->required();
  tower->add_option("--levels", tw_levels, "level values (default: all distances)");
  tower->add_option("--format", tw_format, "json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  tower->add_option("--out", tw_out, "output file (default stdout)");

  // classify
  auto* classify = app.add_subcommand("classify", "coarse type of a growing family");
  std::string cl_family, cl_out;
  std::vector<std::string> cl_spaces;
  std::size_t cl_k = 4, cl_depth = 4;
  classify->add_option("--family", cl_family, "binary, growing or singleton");
  classify->add_option("--space", cl_spaces, "family members in order (repeatable)");
  classify->add_option("--k", cl_k, "threshold standing in for infinity");
  classify->add_option("--depth", cl_depth, "largest family index for --family");
  classify->add_option("--out", cl_out, "output file (default stdout)");

  // equiv
  auto* equiv = app.add_subcommand("equiv", "certified equivalence with k^{<=n}");
  std::string eq_space, eq_out;
  std::size_t eq_width = 2, eq_depth = 3;
  equiv->add_option("space,--space", eq_space, "space JSON")->required();
  equiv->add_option("--width", eq_width, "branching width")->required();
  equiv->add_option("--depth", eq_depth, "number of levels");
  equiv->add_option("--out", eq_out, "certificate file (default stdout)");

  // embed
  auto* embed = app.add_subcommand("embed", "certified embedding of k^{<=n}");
  std::string em_space, em_base, em_out;
  std::size_t em_width = 2, em_depth = 2;
  embed->add_option("space,--space", em_space, "space JSON")->required();
  embed->add_option("--width", em_width, "branching width")->required();
  embed->add_option("--depth", em_depth, "word length");
  embed->add_option("--base", em_base, "base point label (default: first point)");
  embed->add_option("--out", em_out, "certificate file (default stdout)");

  // surject
  auto* surject = app.add_subcommand("surject", "certified surjection onto a finite space");
  std::string sj_source, sj_target, sj_base, sj_out;
  surject->add_option("--source", sj_source, "source space JSON")->required();
  surject->add_option("--target", sj_target, "target space JSON")->required();
  surject->add_option("--base", sj_base, "base point label (default: first point)");
  surject->add_option("--out", sj_out, "certificate file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  std::string vf_cert;
  verify->add_option("certificate", vf_cert, "certificate JSON")->required();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      usage_error(e.what());
    }
    const std::size_t budget = effort_budget(effort);

    if (*gen) {
      ms::KappaSpec spec{gen_k, gen_n, ms::parse_scale_list(gen_levels)};
      emit(gen_out, dump(ms::to_json(ms::gen_kappa_space(spec))));
    } else if (*analyze) {
      const auto scales = ms::parse_scale_list(an_scales);
      if (scales.empty()) usage_error("--scales needs at least one value");
      const auto space = ms::read_space_file(an_space);
      const auto mesh = ms::mesh_profile(space, scales);
      std::vector<ms::CapacityProfile> rows;
      for (std::size_t i = 0; i < scales.size(); ++i) {
        for (std::size_t j = i + 1; j < scales.size(); ++j) {
          rows.push_back(ms::cov_profile(space, scales[i], scales[j], budget));
        }
      }
      emit(an_out, ms::csv_header() + ms::mesh_csv(mesh) + "\n" + ms::profile_csv(rows));
    } else if (*tower) {
      const auto space = ms::read_space_file(tw_space);
      const auto levels =
          tw_levels.empty() ? space.distance_values() : ms::parse_scale_list(tw_levels);
      const auto t = ms::canonical_tower(space, levels);
      emit(tw_out, tw_format == "dot" ? ms::tower_to_dot(t) : dump(ms::to_json(t)));
    } else if (*classify) {
      ms::SpaceFamily family;
      if (!cl_family.empty() && !cl_spaces.empty()) {
        usage_error("give either --family or --space, not both");
      }
      if (!cl_family.empty()) {
        family = named_family(cl_family, cl_depth);
      } else if (!cl_spaces.empty()) {
        std::vector<ms::FiniteMetricSpace> members;
        for (const auto& path : cl_spaces) members.push_back(ms::read_space_file(path));
        family.first = 0;
        family.last = members.size() - 1;
        family.member = [members](std::size_t i) { return members[i]; };
      } else {
        usage_error("classify needs --family or --space");
      }
      emit(cl_out, dump(ms::to_json(ms::classify_geometry(family, cl_k, budget))));
    } else if (*equiv) {
      auto space = ms::share(ms::read_space_file(eq_space));
      emit(eq_out, dump(ms::to_json(ms::baire_equivalence(space, eq_width, eq_depth, budget))));
    } else if (*embed) {
      auto space = ms::share(ms::read_space_file(em_space));
      const auto base = point_or_first(*space, em_base);
      emit(em_out,
           dump(ms::to_json(ms::embed_baire(space, em_width, em_depth, base, budget))));
    } else if (*surject) {
      auto source = ms::share(ms::read_space_file(sj_source));
      auto target = ms::share(ms::read_space_file(sj_target));
      const auto base = point_or_first(*source, sj_base);
      emit(sj_out, dump(ms::to_json(ms::surjection_onto(source, target, base))));
    } else if (*verify) {
      const auto report = ms::verify(ms::read_json_file(vf_cert), budget);
      std::cout << dump(ms::Json{{"verified", true},
                                 {"kind", report.kind},
                                 {"pairs", report.pairs},
                                 {"checks", report.checks}});
    }
    return 0;
  } catch (const ms::Error& e) {
    std::cerr << ms::to_json(e).dump() << "\n";
    return e.category() == ms::ErrorCategory::input ? kExitInput : kExitConstruction;
  } catch (const std::exception& e) {
    std::cerr << ms::Json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kExitInput;
  }
}
