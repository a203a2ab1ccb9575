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

#include <catch_amalgamated.hpp>

#include "macrospace/covers.hpp"
#include "macrospace/isometry.hpp"
#include "macrospace/multimap.hpp"
#include "macrospace/tower.hpp"
#include "support/oracles.hpp"

using namespace macrospace;

namespace {

std::vector<Distance> values(std::initializer_list<std::int64_t> xs) {
  std::vector<Distance> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("canonical_tower examples") {
  auto s = gen_kappa_space({2, 2, {}});
  auto t = canonical_tower(s, values({1, 2}));
  REQUIRE(t.level_count() == 2);
  CHECK(t.node_count(0) == 2);
  CHECK(t.node_count(1) == 1);
  CHECK(t.parent(0, 0) == 0);
  CHECK(t.parent(0, 1) == 0);
  CHECK(t.node_id(0, 1) == "1:(0,1)");
  CHECK(is_pruned(t));

  auto top = canonical_tower(s, {s.diameter()});
  CHECK(top.level_count() == 1);
  CHECK(top.node_count(0) == 1);

  auto line = canonical_tower(oracle::line({0, 1, 2, 3}), values({0, 1}));
  CHECK(line.node_count(0) == 4);
  CHECK(line.node_count(1) == 1);

  CHECK(kind_of([&] { canonical_tower(s, {}); }) == "EmptyLevelSet");
  CHECK(kind_of([&] { canonical_tower(s, values({1})); }) == "NotDirected");
  CHECK(kind_of([&] { canonical_tower(s, values({2, 1})); }) == "InvalidTower");
}

TEST_CASE("Tower constructor rejects malformed tables") {
  CHECK(kind_of([] { Tower({}, {}, {}); }) == "EmptyLevelSet");
  CHECK(kind_of([] { Tower(values({1, 2}), {{"a"}, {"r", "s"}}, {{0}}); }) == "NotDirected");
  CHECK(kind_of([] { Tower(values({1, 2}), {{"a"}, {"r"}}, {{3}}); }) == "InvalidTower");
  CHECK(kind_of([] { Tower(values({1, 2}), {{"a"}, {"r"}}, {}); }) == "InvalidTower");
  CHECK(kind_of([] { Tower(values({1, 2}), {{}, {"r"}}, {{}}); }) == "InvalidTower");
}

TEST_CASE("boundary_space examples") {
  auto s = gen_kappa_space({2, 2, {}});
  auto b = boundary_space(canonical_tower(s, values({1, 2})));
  REQUIRE(b.size() == 2);
  CHECK(b.distance(0, 1) == Distance(2));

  auto single = boundary_space(Tower(values({4}), {{"only"}}, {}));
  CHECK(single.size() == 1);

  // Three branches need a level that separates them; level 0 does.
  auto three = boundary_space(canonical_tower(gen_kappa_space({3, 1, {}}), values({0, 1})));
  REQUIRE(three.size() == 3);
  for (PointIndex a = 0; a < 3; ++a) {
    for (PointIndex c = a + 1; c < 3; ++c) CHECK(three.distance(a, c) == Distance(1));
  }

  Tower unpruned(values({1, 2, 3}), {{"a"}, {"x", "y"}, {"r"}}, {{0}, {0, 0}});
  CHECK_FALSE(is_pruned(unpruned));
  CHECK(kind_of([&] { boundary_space(unpruned); }) == "NotPruned");
}

TEST_CASE("degrees examples") {
  auto t = canonical_tower(gen_kappa_space({2, 2, {}}), values({1, 2}));
  CHECK(degrees(t, 0, 1) == DegreeRange{2, 2});

  auto t3 = canonical_tower(gen_kappa_space({3, 3, {}}), values({0, 1, 2, 3}));
  for (LevelIndex l = 0; l + 1 < t3.level_count(); ++l) {
    CHECK(degrees(t3, l, l + 1) == DegreeRange{3, 3});
  }

  Tower chain(values({1, 2, 3}), {{"a"}, {"b"}, {"c"}}, {{0}, {0}});
  CHECK(degrees(chain, 0, 1) == DegreeRange{1, 1});
  CHECK(degrees(chain, 1, 2) == DegreeRange{1, 1});
  CHECK(kind_of([&] { degrees(chain, 1, 1); }) == "BadLevelPair");
  CHECK(kind_of([&] { degrees(chain, 0, 7); }) == "BadLevelPair");
}

TEST_CASE("homogeneity and pruning") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto s = gen_kappa_space({k, n, {}});
      auto t = canonical_tower(s, s.distance_values());
      CHECK(is_homogeneous(t));
      CHECK(is_pruned(t));
    }
  }
  Tower lopsided(values({1, 2, 3}), {{"a", "b", "c"}, {"x", "y"}, {"r"}}, {{0, 0, 1}, {0, 0}});
  CHECK_FALSE(is_homogeneous(lopsided));
  CHECK(is_pruned(lopsided));

  Tower single(values({0}), {{"r"}}, {});
  CHECK(is_homogeneous(single));
  CHECK(is_pruned(single));
}

TEST_CASE("level_subtower examples") {
  auto s = gen_kappa_space({2, 3, {}});
  auto t = canonical_tower(s, values({1, 2, 3}));
  CHECK(level_subtower(t, {0, 1, 2}) == t);

  auto skip = level_subtower(t, {0, 2});
  CHECK(skip.level_count() == 2);
  CHECK(degrees(skip, 0, 1) == DegreeRange{4, 4});

  auto top = level_subtower(t, {2});
  CHECK(top.level_count() == 1);
  CHECK(top.node_count(0) == 1);

  CHECK(kind_of([&] { level_subtower(t, {0, 1}); }) == "TopLevelDropped");
  CHECK(kind_of([&] { level_subtower(t, {}); }) == "TopLevelDropped");
}

TEST_CASE("subtower of a canonical tower is the canonical tower of the kept levels") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = oracle::random_ultrametric(rng, 3 + trial % 20, oracle::random_levels(rng, 5));
    const auto& L = s.distance_values();
    auto full = canonical_tower(s, L);
    std::vector<LevelIndex> kept{full.top()};
    std::vector<Distance> kept_values;
    for (LevelIndex l = 0; l + 1 < L.size(); ++l) {
      if (rng() % 2) kept.push_back(l);
    }
    std::sort(kept.begin(), kept.end());
    for (auto l : kept) kept_values.push_back(L[l]);
    CHECK(same_shape(level_subtower(full, kept), canonical_tower(s, kept_values)));
  }
}

TEST_CASE("boundary is an ultrametric on the level values") {
  oracle::Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = trial % 2 ? oracle::random_metric(rng, 2 + trial % 15, 20)
                       : oracle::random_ultrametric(rng, 2 + trial % 30, oracle::random_levels(rng, 5));
    std::vector<Distance> L;
    for (const auto& v : s.distance_values()) {
      if (rng() % 2 || v == s.diameter()) L.push_back(v);
    }
    auto t = canonical_tower(s, L);
    auto b = boundary_space(t);
    CHECK(is_ultrametric(b));
    CHECK(b.size() == t.node_count(0));
    for (const auto& v : b.positive_distances()) {
      CHECK(std::find(L.begin(), L.end(), v) != L.end());
    }
  }
}

TEST_CASE("boundary of the canonical tower round-trips ultrametric spaces") {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_ultrametric(rng, 1 + trial % 12, oracle::random_levels(rng, 5));
    auto b = boundary_space(canonical_tower(s, s.distance_values()));
    auto iso = find_isometry_between(s, b, 1'000'000);
    CHECK(iso.has_value());
  }
}

TEST_CASE("degree and cover duality on random towers") {
  oracle::Rng rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_ultrametric(rng, 2 + trial % 31, oracle::random_levels(rng, 5));
    std::vector<Distance> L{s.distance_values().begin(), s.distance_values().end()};
    auto t = canonical_tower(s, L);
    auto b = boundary_space(t);
    for (LevelIndex lambda = 0; lambda < t.level_count(); ++lambda) {
      for (LevelIndex l = lambda + 1; l < t.level_count(); ++l) {
        auto d = degrees(t, lambda, l);
        auto p = cov_profile(b, t.level_value(lambda), t.level_value(l), kDefaultEffortBudget,
                             CoverMethod::clique_search);
        REQUIRE(p.exact());
        CHECK(d.min == p.min_over_centers.lower);
        CHECK(d.max == p.max_over_centers.lower);
      }
    }
  }
}

TEST_CASE("canonical_map examples") {
  auto s = share(gen_kappa_space({2, 2, {}}));
  auto t = canonical_tower(*s, values({1, 2}));
  auto phi = canonical_map(s, t);
  CHECK(phi.is_total());
  CHECK(phi.is_surjective());
  CHECK(oscillation(phi, values({1})).entries[0].value == Distance(0));
  CHECK(oscillation(invert(phi), values({0})).entries[0].value == Distance(1));

  auto fine = canonical_tower(*s, values({0, 1, 2}));
  auto inj = canonical_map(s, fine);
  CHECK(inj.is_injective());
  CHECK(oscillation(invert(inj), values({0})).entries[0].value == Distance(0));

  auto point = share(gen_kappa_space({1, 0, {}}));
  auto pm = canonical_map(point, canonical_tower(*point, values({0})));
  CHECK(pm.pairs().size() == 1);
  for (const auto& e : oscillation(pm, values({0, 5})).entries) CHECK(e.value == Distance());

  auto other = canonical_tower(gen_kappa_space({3, 2, {}}), values({1, 2}));
  CHECK(kind_of([&] { canonical_map(s, other); }) == "TowerMismatch");
}

TEST_CASE("inverse canonical map oscillation at 0 is the bottom mesh") {
  oracle::Rng rng(35);
  for (int trial = 0; trial < 25; ++trial) {
    auto s = share(oracle::random_metric(rng, 2 + trial % 10, 10));
    const auto& v = s->distance_values();
    std::vector<Distance> L{v[trial % v.size()]};
    if (!(L.back() == s->diameter())) L.push_back(s->diameter());
    auto t = canonical_tower(*s, L);
    auto phi = canonical_map(s, t);
    CHECK(oscillation(invert(phi), {Distance()}).entries[0].value ==
          epsilon_components(*s, L.front()).mesh);
  }
}
