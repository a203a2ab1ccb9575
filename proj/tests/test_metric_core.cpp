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

#include "macrospace/components.hpp"
#include "macrospace/isometry.hpp"
#include "macrospace/metric_space.hpp"
#include "support/oracles.hpp"

using namespace macrospace;
using oracle::Matrix;

namespace {

Matrix ints(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  Matrix m;
  for (auto row : rows) {
    m.emplace_back();
    for (auto v : row) m.back().emplace_back(v);
  }
  return m;
}

// Runs `f`, expecting a macrospace::Error of the given kind; returns it.
template <typename F>
Error expect_error(F&& f, const std::string& kind) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    return e;
  }
  FAIL("expected error " << kind);
  throw;  // unreachable
}

std::string field(const Error& e, const char* name) {
  const std::string* v = e.field(name);
  return v ? *v : std::string("<missing>");
}

PointIndex at(const FiniteMetricSpace& s, const char* label) { return s.index_of(label); }

}  // namespace

TEST_CASE("Distance parses integers, fractions and decimals exactly") {
  CHECK(Distance::parse("3") == Distance(3));
  CHECK(Distance::parse("6/4") == Distance::ratio(3, 2));
  CHECK(Distance::parse("0.1") == Distance::ratio(1, 10));
  CHECK(Distance::parse("007") == Distance(7));
  CHECK(Distance::parse("2.50") == Distance::ratio(5, 2));
  CHECK(Distance::parse("1e-05") == Distance::ratio(1, 100000));
  CHECK(Distance::parse("1.5e2") == Distance(150));
  CHECK(Distance::ratio(6, 4).to_string() == "3/2");
  CHECK(Distance(12).to_string() == "12");
  expect_error([] { Distance::parse("-1"); }, "NegativeDistance");
  expect_error([] { Distance::parse("1/0"); }, "InvalidRational");
  expect_error([] { Distance::parse("abc"); }, "InvalidRational");
  expect_error([] { Distance(-2); }, "NegativeDistance");
}

TEST_CASE("Distance arithmetic is exact") {
  const Distance third = Distance::ratio(1, 3);
  CHECK(third + third + third == Distance(1));
  CHECK(Distance(6) * third == Distance(2));
  CHECK(Distance::saturating_sub(Distance(1), Distance(3)) == Distance());
  CHECK(Distance::saturating_sub(Distance(3), Distance(1)) == Distance(2));
  CHECK(Distance::ratio(1, 3) < Distance::ratio(1, 2));
}

TEST_CASE("validate_metric accepts a two point space") {
  auto s = validate_metric({"a", "b"}, ints({{0, 1}, {1, 0}}));
  CHECK(s.size() == 2);
  CHECK(s.distance(0, 1) == Distance(1));
  CHECK(s.ultrametric());
}

TEST_CASE("validate_metric names the witnesses of each failure") {
  auto tri = expect_error(
      [] { validate_metric({"a", "b", "c"}, ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})); },
      "TriangleViolation");
  CHECK(field(tri, "x") == "a");
  CHECK(field(tri, "y") == "b");
  CHECK(field(tri, "z") == "c");

  auto asym =
      expect_error([] { validate_metric({"a", "b"}, ints({{0, 1}, {2, 0}})); }, "AsymmetricMatrix");
  CHECK(field(asym, "x") == "a");
  CHECK(field(asym, "y") == "b");

  auto diag =
      expect_error([] { validate_metric({"a", "b"}, ints({{0, 1}, {1, 5}})); }, "NonzeroDiagonal");
  CHECK(field(diag, "x") == "b");

  auto zero = expect_error([] { validate_metric({"a", "b"}, ints({{0, 0}, {0, 0}})); },
                           "ZeroDistanceDistinctPoints");
  CHECK(field(zero, "y") == "b");

  expect_error([] { validate_metric({}, {}); }, "EmptySpace");
  expect_error([] { validate_metric({"a", "b"}, ints({{0, 1}, {1}})); }, "NonSquareMatrix");
  expect_error([] { validate_metric({"a"}, ints({{0, 1}, {1, 0}})); }, "LabelCountMismatch");
  expect_error([] { validate_metric({"a", "a"}, ints({{0, 1}, {1, 0}})); }, "DuplicateLabel");
}

TEST_CASE("gen_kappa_space follows the coordinate-max formula") {
  SECTION("k=2, n=2 default levels") {
    auto s = gen_kappa_space({2, 2, {}});
    REQUIRE(s.size() == 4);
    CHECK(s.distance(at(s, "(0,0)"), at(s, "(1,0)")) == Distance(1));
    CHECK(s.distance(at(s, "(0,0)"), at(s, "(0,1)")) == Distance(2));
    CHECK(s.distance(at(s, "(0,0)"), at(s, "(1,1)")) == Distance(2));
  }
  SECTION("k=1 is a single point") {
    auto s = gen_kappa_space({1, 5, {}});
    CHECK(s.size() == 1);
    CHECK(s.diameter() == Distance());
  }
  SECTION("scheduled levels") {
    auto s = gen_kappa_space({3, 2, {Distance(7), Distance(49)}});
    CHECK(s.size() == 9);
    CHECK(s.distance(at(s, "(0,0)"), at(s, "(2,0)")) == Distance(7));
    CHECK(s.distance(at(s, "(1,2)"), at(s, "(1,0)")) == Distance(49));
  }
  SECTION("errors") {
    expect_error([] { gen_kappa_space({2, 20, {}}); }, "BudgetExceeded");
    expect_error([] { gen_kappa_space({2, 2, {Distance(3), Distance(2)}}); }, "InvalidKappaSpec");
    expect_error([] { gen_kappa_space({2, 2, {Distance(3)}}); }, "InvalidKappaSpec");
    expect_error([] { gen_kappa_space({0, 2, {}}); }, "InvalidKappaSpec");
  }
}

TEST_CASE("gen_kappa_space matches an independent evaluation and validates") {
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t n = 0; n <= 3; ++n) {
      std::vector<Distance> levels;
      for (std::size_t i = 0; i < n; ++i) levels.emplace_back(static_cast<std::int64_t>(3 * i + 2));
      auto s = gen_kappa_space({k, n, levels});
      CHECK(oracle::matrix_of(s) == oracle::kappa_matrix(k, n, levels));
      auto checked = validate_metric(s.labels(), oracle::matrix_of(s));
      CHECK(checked.ultrametric());
      CHECK(is_ultrametric(s));
    }
  }
}

TEST_CASE("is_ultrametric") {
  CHECK(is_ultrametric(gen_kappa_space({2, 3, {}})));
  CHECK_FALSE(is_ultrametric(oracle::line({0, 1, 2})));
  CHECK(is_ultrametric(oracle::line({0, 5})));
}

TEST_CASE("epsilon_components examples") {
  auto s = gen_kappa_space({2, 2, {}});
  auto p = epsilon_components(s, Distance(1));
  REQUIRE(p.block_count() == 2);
  CHECK(p.blocks[0] == PointSet{at(s, "(0,0)"), at(s, "(1,0)")});
  CHECK(p.blocks[1] == PointSet{at(s, "(0,1)"), at(s, "(1,1)")});
  CHECK(p.mesh == Distance(1));

  CHECK(epsilon_components(s, s.diameter()).block_count() == 1);
  auto zero = epsilon_components(s, Distance());
  CHECK(zero.block_count() == 4);
  CHECK(zero.mesh == Distance());
}

TEST_CASE("mesh_profile examples") {
  auto s = gen_kappa_space({2, 2, {}});
  auto rows = mesh_profile(s, {Distance(0), Distance(1), Distance(2)});
  REQUIRE(rows.size() == 3);
  CHECK((rows[0].mesh == Distance(0) && rows[0].block_count == 4));
  CHECK((rows[1].mesh == Distance(1) && rows[1].block_count == 2));
  CHECK((rows[2].mesh == Distance(2) && rows[2].block_count == 1));

  auto point = gen_kappa_space({1, 1, {}});
  for (const auto& r : mesh_profile(point, {Distance(0), Distance(4)})) {
    CHECK(r.mesh == Distance());
    CHECK(r.block_count == 1);
  }

  auto collinear = mesh_profile(oracle::line({0, 1, 2, 3}), {Distance(1)});
  CHECK(collinear[0].mesh == Distance(3));
  CHECK(collinear[0].block_count == 1);

  expect_error([&] { mesh_profile(s, {Distance(2), Distance(1)}); }, "UnsortedScales");
}

TEST_CASE("ball examples") {
  auto s = gen_kappa_space({2, 3, {}});
  auto origin = at(s, "(0,0,0)");
  auto b = ball(s, origin, Distance(2));
  REQUIRE(b.size() == 4);
  for (auto x : b) CHECK(s.label(x).substr(5, 1) == "0");
  CHECK(ball(s, origin, Distance()) == PointSet{origin});
  CHECK(ball(s, origin, s.diameter()).size() == 8);
  expect_error([&] { ball(s, 99, Distance()); }, "UnknownPoint");
}

TEST_CASE("is_macro_connected_at") {
  auto s = gen_kappa_space({2, 2, {}});
  CHECK(is_macro_connected_at(s, Distance(2)));
  CHECK_FALSE(is_macro_connected_at(s, Distance(1)));
  CHECK(is_macro_connected_at(gen_kappa_space({1, 0, {}}), Distance()));
}

TEST_CASE("isometric homogeneity probe") {
  auto v = isometric_homogeneity_probe(gen_kappa_space({2, 2, {}}));
  CHECK(v.kind == HomogeneityVerdict::Kind::homogeneous);

  auto line = oracle::line({0, 1, 2});
  auto w = isometric_homogeneity_probe(line);
  REQUIRE(w.kind == HomogeneityVerdict::Kind::witness_pair);
  REQUIRE(w.witness);
  CHECK(line.label(w.witness->first) == "0");
  CHECK(line.label(w.witness->second) == "1");

  CHECK(isometric_homogeneity_probe(oracle::line({0, 3})).kind ==
        HomogeneityVerdict::Kind::homogeneous);

  auto starved = isometric_homogeneity_probe(gen_kappa_space({3, 3, {}}), 3);
  CHECK(starved.kind == HomogeneityVerdict::Kind::budget_exhausted);
}

TEST_CASE("isometry search agrees with permutation enumeration") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 6;
    auto s = trial % 2 ? oracle::random_metric(rng, n, 3)
                       : oracle::random_ultrametric(rng, n, oracle::random_levels(rng, 3, 5));
    const auto all = oracle::all_isometries(s);
    bool transitive = true;
    for (PointIndex y = 0; y < n; ++y) {
      transitive = transitive && std::any_of(all.begin(), all.end(),
                                             [&](const auto& p) { return p[0] == y; });
    }
    auto v = isometric_homogeneity_probe(s);
    CHECK((v.kind == HomogeneityVerdict::Kind::homogeneous) == transitive);
    for (const auto& g : v.generators) CHECK(is_isometry(s, g));
    if (v.witness) {
      for (const auto& p : all) CHECK(p[v.witness->first] != v.witness->second);
    }
  }
}

TEST_CASE("components agree with transitive closure on random spaces") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 40;
    auto s = trial % 3 == 0 ? oracle::random_metric(rng, n, 20, trial % 2 == 0)
                            : oracle::random_ultrametric(rng, n, oracle::random_levels(rng, 5));
    for (const auto& eps : s.distance_values()) {
      auto p = epsilon_components(s, eps);
      auto classes = oracle::chain_classes(s, eps);
      Distance mesh;
      for (PointIndex x = 0; x < n; ++x) {
        CHECK(p.blocks[p.block_of[x]] == classes[x]);
        mesh = std::max(mesh, oracle::diameter(s, classes[x]));
      }
      CHECK(p.mesh == mesh);
    }
  }
}

TEST_CASE("partitions refine as the scale grows") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = oracle::random_metric(rng, 3 + trial % 12, 15);
    const auto& values = s.distance_values();
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
      auto fine = epsilon_components(s, values[i]);
      auto coarse = epsilon_components(s, values[i + 1]);
      for (const auto& block : fine.blocks) {
        for (auto x : block) CHECK(coarse.block_of[x] == coarse.block_of[block.front()]);
      }
    }
  }
}

TEST_CASE("ultrametric components are balls") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_ultrametric(rng, 2 + trial % 30, oracle::random_levels(rng, 5));
    for (const auto& eps : s.distance_values()) {
      auto p = epsilon_components(s, eps);
      for (PointIndex x = 0; x < s.size(); ++x) {
        CHECK(p.blocks[p.block_of[x]] == oracle::ball(s, x, eps));
      }
    }
  }
}
