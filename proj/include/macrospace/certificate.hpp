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
#include <string>
#include <vector>

#include "macrospace/constructions.hpp"
#include "macrospace/io.hpp"
#include "macrospace/tower_morphism.hpp"

namespace macrospace {

inline Json to_json(const ScaleSchedule& s) {
  return Json{{"kind", to_string(s.kind)},
              {"values", to_json(s.values)},
              {"gap_ok", s.gap_ok}};
}

inline Json to_json(const TowerMorphism& m) {
  return Json{{"level_map", m.level_map}, {"node_map", m.node_map}};
}

inline Json to_json(const EquivalenceCertificate& c) {
  const MultiMap& phi = c.multimap;
  return Json{
      {"generator", kGenerator},
      {"kind", "baire_equivalence"},
      {"width", c.width},
      {"depth", c.depth},
      {"schedule", to_json(c.schedule)},
      {"levels", to_json(c.levels)},
      {"source", to_json(*phi.source())},
      {"target", to_json(*phi.target())},
      {"multimap", to_json(phi)},
      {"tower_iso", to_json(c.tower_iso)},
      {"oscillation_fwd", to_json(c.oscillation_fwd)},
      {"oscillation_bwd", to_json(c.oscillation_bwd)},
      {"predicates",
       {{"total", phi.is_total()},
        {"surjective", phi.is_surjective()},
        {"single_valued", phi.is_single_valued()},
        {"injective", phi.is_injective()}}}};
}

inline Json to_json(const EmbeddingCertificate& c) {
  const MultiMap& g = c.multimap;
  Json rows = Json::array();
  for (const auto& r : c.separation) {
    rows.push_back(Json{{"index", r.index},
                        {"required", to_json(r.required)},
                        {"floor", to_json(r.floor)},
                        {"min_observed", to_json(r.min_observed)}});
  }
  return Json{
      {"generator", kGenerator},
      {"kind", "baire_embedding"},
      {"width", c.width},
      {"depth", c.depth},
      {"base_point", g.target()->label(c.base_point)},
      {"schedule", to_json(c.schedule)},
      {"source", to_json(*g.source())},
      {"target", to_json(*g.target())},
      {"multimap", to_json(g)},
      {"separation", std::move(rows)},
      {"containment",
       {{"radius", to_json(c.containment_radius)},
        {"observed", to_json(c.containment_observed)}}},
      {"oscillation_fwd", to_json(c.oscillation_fwd)},
      {"oscillation_bwd", to_json(c.oscillation_bwd)},
      {"predicates",
       {{"total", g.is_total()},
        {"single_valued", g.is_single_valued()},
        {"injective", c.injective}}}};
}

inline Json to_json(const SurjectionCertificate& c) {
  const MultiMap& psi_total = c.multimap;
  const auto& source = *psi_total.source();
  Json chain = Json::array();
  for (PointIndex x : c.chain) chain.push_back(source.label(x));
  return Json{
      {"generator", kGenerator},
      {"kind", "surjection"},
      {"width", psi_total.target()->size()},
      {"depth", c.chain.size()},
      {"base_point", source.label(c.base_point)},
      {"schedule",
       {{"kind", "escape_schedule"}, {"values", to_json(c.radii)}, {"gap_ok", Json::array()}}},
      {"chain", std::move(chain)},
      {"target_radius", to_json(c.target_radius)},
      {"source", to_json(source)},
      {"target", to_json(*psi_total.target())},
      {"squares", to_json(*c.squares)},
      {"psi", to_json(c.psi)},
      {"phi", to_json(c.phi)},
      {"multimap", to_json(psi_total)},
      {"oscillation_fwd", to_json(c.oscillation)},
      {"oscillation_bwd", to_json(oscillation(invert(psi_total),
                                              psi_total.target()->distance_values()))},
      {"oscillation_psi", to_json(c.oscillation_psi)},
      {"predicates",
       {{"total", psi_total.is_total()},
        {"surjective", psi_total.is_surjective()},
        {"psi_single_valued", c.psi.is_single_valued()}}}};
}

struct VerifyReport {
  std::string kind;
  std::size_t pairs = 0;
  std::size_t checks = 0;
};

namespace detail {

class Verifier {
 public:
  explicit Verifier(const Json& cert) : cert_(cert) {}

  VerifyReport run(std::size_t budget) {
    report_.kind = text("kind");
    source_ = share(space_from_json(field("source")));
    target_ = share(space_from_json(field("target")));
    phi_ = multimap_from_json(field("multimap"), source_, target_);
    report_.pairs = phi_.pairs().size();

    if (report_.kind == "baire_equivalence") {
      baire_equivalence(budget);
    } else if (report_.kind == "baire_embedding") {
      baire_embedding(budget);
    } else if (report_.kind == "surjection") {
      surjection();
    } else {
      throw input_error("UnknownCertificate", "unrecognized certificate kind",
                        {{"kind", report_.kind}});
    }
    return report_;
  }

 private:
  const Json& field(const char* name) const {
    if (!cert_.contains(name)) {
      throw input_error("MalformedCertificate", "missing field", {{"field", name}});
    }
    return cert_.at(name);
  }
  std::string text(const char* name) const {
    const Json& j = field(name);
    if (!j.is_string()) throw input_error("MalformedCertificate", "expected a string",
                                          {{"field", name}});
    return j.get<std::string>();
  }
  std::size_t count(const char* name) const {
    const Json& j = field(name);
    if (!j.is_number_unsigned()) {
      throw input_error("MalformedCertificate", "expected a count", {{"field", name}});
    }
    return j.get<std::size_t>();
  }

  void require(bool ok, const char* kind, const std::string& message) {
    ++report_.checks;
    if (!ok) throw construction_error(kind, message, {{"certificate", report_.kind}});
  }

  void require_equal(const Json& recorded, const Json& recomputed, const char* kind,
                     const std::string& what) {
    require(recorded == recomputed, kind, what + " differs from the recomputed value");
  }

  void require_surjective() {
    require(phi_.is_surjective(), "SurjectivityViolated", "some target point has no preimage");
  }
  void require_total() {
    require(phi_.is_total(), "TotalityViolated", "some source point has no image");
  }

  void require_tables(const std::vector<Distance>& scales, const MultiMap& map,
                      const char* forward, const char* backward) {
    require_equal(field(forward), to_json(oscillation(map, scales)), "OscillationMismatch",
                  forward);
    if (backward) {
      const auto back = invert(map);
      const auto& back_scales = report_.kind == "surjection"
                                    ? map.target()->distance_values()
                                    : scales;
      require_equal(field(backward), to_json(oscillation(back, back_scales)),
                    "OscillationMismatch", backward);
    }
  }

  void baire_equivalence(std::size_t budget) {
    require_surjective();
    require_total();
    const std::size_t width = count("width");
    const std::size_t depth = count("depth");
    ScaleSchedule schedule = find_level_schedule(*source_, width, depth, budget);
    require_equal(field("schedule"), to_json(schedule), "ScheduleMismatch", "schedule");
    const std::vector<Distance> levels = equivalence_levels(width, schedule.values);
    require_equal(field("levels"), to_json(levels), "ScheduleMismatch", "levels");
    require(*target_ == gen_kappa_space({width, depth, schedule.values}), "TargetMismatch",
            "target is not the truncated Baire space on the schedule");

    auto source_tower = share(canonical_tower(*source_, levels));
    auto target_tower = share(canonical_tower(*target_, levels));
    TowerMorphism iso{source_tower, target_tower, {}, {}};
    try {
      iso.level_map = field("tower_iso").at("level_map").get<std::vector<LevelIndex>>();
      iso.node_map =
          field("tower_iso").at("node_map").get<std::vector<std::vector<NodeIndex>>>();
    } catch (const Json::exception& e) {
      throw input_error("MalformedCertificate", e.what());
    }
    const auto check = validate_morphism(iso);
    require(check.valid(), "InvalidMorphism",
            check.valid() ? "" : check.violation->kind + ": " + check.violation->detail);
    require(is_bijective(iso), "NotBijective", "tower morphism is not an isomorphism");

    auto source_boundary = share(boundary_space(*source_tower));
    auto target_boundary = share(boundary_space(*target_tower));
    const MultiMap composed =
        compose(compose(canonical_map(source_, *source_tower, source_boundary),
                        boundary_multimap(iso, source_boundary, target_boundary)),
                invert(canonical_map(target_, *target_tower, target_boundary)));
    require(composed.pairs() == phi_.pairs(), "MultiMapMismatch",
            "multimap is not the composite of the recorded tower isomorphism");
    require_tables(levels, phi_, "oscillation_fwd", "oscillation_bwd");
    require_equal(field("predicates"),
                  Json{{"total", phi_.is_total()},
                       {"surjective", phi_.is_surjective()},
                       {"single_valued", phi_.is_single_valued()},
                       {"injective", phi_.is_injective()}},
                  "PredicateMismatch", "predicates");
  }

  void baire_embedding(std::size_t budget) {
    require_total();
    require(phi_.is_single_valued(), "SingleValuednessViolated",
            "an embedding must be a function");
    require(phi_.is_injective(), "InjectivityViolated", "two words share an image");
    const std::size_t width = count("width");
    const std::size_t depth = count("depth");
    const PointIndex base = target_->index_of(text("base_point"));

    ScaleSchedule schedule;
    schedule.kind = ScaleSchedule::Kind::separation_schedule;
    if (depth > 0) {
      schedule.values = grow_schedule(*target_, width, depth + 1, Distance(6), budget);
    }
    schedule.gap_ok = six_fold_gaps(schedule.values);
    require_equal(field("schedule"), to_json(schedule), "ScheduleMismatch", "schedule");
    require(*source_ == embedding_domain(width, depth, schedule.values), "DomainMismatch",
            "source is not the truncated Baire space on the schedule");

    std::vector<PointIndex> g(source_->size());
    for (PointIndex s = 0; s < g.size(); ++s) g[s] = phi_.image(s).front();
    require(g.front() == base, "BasePointMismatch", "the zero word must map to the base point");

    EmbeddingCertificate recomputed;
    measure_embedding(*target_, g, width, depth, schedule.values, base, recomputed);
    for (const auto& r : recomputed.separation) {
      require(!(r.min_observed < r.floor), "SeparationViolated",
              "pair closer than the separation floor");
    }
    recomputed.width = width;
    recomputed.depth = depth;
    recomputed.base_point = base;
    recomputed.schedule = schedule;
    recomputed.multimap = phi_;
    recomputed.oscillation_fwd = oscillation(phi_, source_->distance_values());
    recomputed.oscillation_bwd = oscillation(invert(phi_), source_->distance_values());
    const Json expected = to_json(recomputed);
    require_equal(field("separation"), expected.at("separation"), "SeparationMismatch",
                  "separation rows");
    require_equal(field("containment"), expected.at("containment"), "ContainmentMismatch",
                  "containment");
    require(!(recomputed.containment_radius < recomputed.containment_observed),
            "ContainmentViolated", "image leaves the containment ball");
    require_tables(source_->distance_values(), phi_, "oscillation_fwd", "oscillation_bwd");
    require_equal(field("predicates"), expected.at("predicates"), "PredicateMismatch",
                  "predicates");
  }

  void surjection() {
    require_surjective();
    require_total();
    const PointIndex base = source_->index_of(text("base_point"));
    const SurjectionCertificate expected = surjection_onto(source_, target_, base);
    Json chain = Json::array();
    for (PointIndex x : expected.chain) chain.push_back(source_->label(x));
    require_equal(field("chain"), chain, "ChainMismatch", "escape chain");
    require_equal(field("schedule"),
                  Json{{"kind", "escape_schedule"},
                       {"values", to_json(expected.radii)},
                       {"gap_ok", Json::array()}},
                  "ScheduleMismatch", "escape radii");
    require_equal(field("squares"), to_json(*expected.squares), "IntermediateMismatch",
                  "intermediate line");
    require_equal(field("target_radius"), to_json(expected.target_radius),
                  "IntermediateMismatch", "target radius");
    require_equal(field("psi"), to_json(expected.psi), "MultiMapMismatch", "psi");
    require_equal(field("phi"), to_json(expected.phi), "MultiMapMismatch", "phi");
    require(expected.multimap.pairs() == phi_.pairs(), "MultiMapMismatch",
            "multimap is not phi o psi");
    require_equal(field("width"), Json(target_->size()), "ParameterMismatch", "width");
    require_equal(field("depth"), Json(expected.chain.size()), "ParameterMismatch", "depth");
    require_tables(source_->distance_values(), phi_, "oscillation_fwd", "oscillation_bwd");
    require_equal(field("oscillation_psi"),
                  to_json(oscillation(expected.psi, source_->distance_values())),
                  "OscillationMismatch", "oscillation_psi");
    require_equal(field("predicates"),
                  Json{{"total", phi_.is_total()},
                       {"surjective", phi_.is_surjective()},
                       {"psi_single_valued", expected.psi.is_single_valued()}},
                  "PredicateMismatch", "predicates");
  }

  const Json& cert_;
  VerifyReport report_;
  SpacePtr source_;
  SpacePtr target_;
  MultiMap phi_;
};

}  // namespace detail

/// Re-checks a certificate from its own contents. Throws a construction
/// error naming the first failed check, or an input error if the document
/// is malformed.
inline VerifyReport verify(const Json& certificate,
                           std::size_t budget = kDefaultEffortBudget) {
  if (!certificate.is_object()) {
    throw input_error("MalformedCertificate", "certificate must be a JSON object");
  }
  return detail::Verifier(certificate).run(budget);
}

}  // namespace macrospace
