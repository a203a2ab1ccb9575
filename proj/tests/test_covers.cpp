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

#include "macrospace/clique_cover.hpp"
#include "macrospace/covers.hpp"
#include "support/oracles.hpp"

using namespace macrospace;

namespace {

CoverNumber exactly(std::size_t v) { return {v, v}; }

CapacityProfile profile_oracle(const FiniteMetricSpace& s, const Distance& delta,
                               const Distance& eps) {
  std::size_t lo = s.size() + 1, hi = 0;
  for (PointIndex x = 0; x < s.size(); ++x) {
    const auto c = oracle::min_cover(s, oracle::ball(s, x, eps), delta);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return {delta, eps, exactly(lo), exactly(hi)};
}

SpaceFamily family(std::function<FiniteMetricSpace(std::size_t)> f, std::size_t last) {
  return {std::move(f), 1, last};
}

}  // namespace

TEST_CASE("min_cover_number examples") {
  auto line = oracle::line({0, 1, 2, 3});
  CHECK(min_cover_number(line, all_points(line), Distance(1)) == exactly(2));

  auto c3 = gen_kappa_space({2, 3, {}});
  auto b = ball(c3, 0, Distance(2));
  CHECK(min_cover_number(c3, b, Distance(1)) == exactly(2));
  CHECK(min_cover_number(c3, b, Distance(1), 10, CoverMethod::clique_search) == exactly(2));
  CHECK(oracle::min_cover(c3, b, Distance(1)) == 2);

  CHECK(min_cover_number(line, {1, 3}, Distance(2)) == exactly(1));
  CHECK(min_cover_number(c3, all_points(c3), c3.diameter()) == exactly(1));
}

TEST_CASE("min_cover_number errors") {
  auto line = oracle::line({0, 1, 2});
  CHECK_THROWS_AS(min_cover_number(line, {}, Distance(1)), Error);
  try {
    min_cover_number(line, {7}, Distance(1));
    FAIL("expected UnknownPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == "UnknownPoint");
  }
  try {
    min_cover_number(line, {0}, Distance(1), 10, CoverMethod::component_count);
    FAIL("expected NotUltrametric");
  } catch (const Error& e) {
    CHECK(e.kind() == "NotUltrametric");
  }
}

TEST_CASE("cov_profile examples") {
  auto c3 = gen_kappa_space({2, 3, {}});
  auto p = cov_profile(c3, Distance(1), Distance(2));
  CHECK(p.min_over_centers == exactly(2));
  CHECK(p.max_over_centers == exactly(2));
  CHECK(p.exact());

  auto t2 = gen_kappa_space({3, 2, {}});
  auto q = cov_profile(t2, Distance(1), Distance(2));
  CHECK(q.min_over_centers == exactly(3));
  CHECK(q.max_over_centers == exactly(3));

  oracle::Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    auto u = oracle::random_ultrametric(rng, 4 + i, oracle::random_levels(rng, 4));
    for (const auto& d : u.distance_values()) {
      auto r = cov_profile(u, d, d);
      CHECK(r.min_over_centers == exactly(1));
      CHECK(r.max_over_centers == exactly(1));
    }
  }
}

TEST_CASE("capacity law on generated spaces") {
  for (std::size_t k : {2, 3}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      auto s = gen_kappa_space({k, n, {}});
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
          std::size_t power = 1;
          for (std::size_t e = i; e < j; ++e) power *= k;
          const Distance delta(static_cast<std::int64_t>(i));
          const Distance eps(static_cast<std::int64_t>(j));
          auto fast = cov_profile(s, delta, eps, kDefaultEffortBudget, CoverMethod::component_count);
          auto search = cov_profile(s, delta, eps, kDefaultEffortBudget, CoverMethod::clique_search);
          auto brute = profile_oracle(s, delta, eps);
          CHECK(fast.min_over_centers == exactly(power));
          CHECK(fast.max_over_centers == exactly(power));
          CHECK(search.min_over_centers == fast.min_over_centers);
          CHECK(search.max_over_centers == fast.max_over_centers);
          CHECK(brute.min_over_centers == fast.min_over_centers);
          CHECK(brute.max_over_centers == fast.max_over_centers);
        }
      }
    }
  }
}

TEST_CASE("ultrametric fast path equals clique search") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_ultrametric(rng, 2 + trial % 31, oracle::random_levels(rng, 5));
    for (const auto& delta : s.distance_values()) {
      const auto all = all_points(s);
      auto a = min_cover_number(s, all, delta, kDefaultEffortBudget, CoverMethod::component_count);
      auto b = min_cover_number(s, all, delta, kDefaultEffortBudget, CoverMethod::clique_search);
      CHECK(b.exact());
      CHECK(a == b);
    }
  }
}

TEST_CASE("clique search agrees with the partition oracle on general metrics") {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_metric(rng, 2 + trial % 9, 10, trial % 2 == 1);
    for (const auto& delta : s.distance_values()) {
      auto c = min_cover_number(s, all_points(s), delta);
      REQUIRE(c.exact());
      CHECK(c.lower == oracle::min_cover(s, all_points(s), delta));
    }
  }
}

TEST_CASE("cover number is monotone in delta and epsilon") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    auto s = oracle::random_metric(rng, 3 + trial % 8, 9);
    const auto& values = s.distance_values();
    for (PointIndex x = 0; x < s.size(); ++x) {
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const auto b = ball(s, x, values.back());
        CHECK(min_cover_number(s, b, values[i]).lower >=
              min_cover_number(s, b, values[i + 1]).lower);
        const auto small = ball(s, x, values[i]);
        const auto large = ball(s, x, values[i + 1]);
        CHECK(min_cover_number(s, small, values[1]).lower <=
              min_cover_number(s, large, values[1]).lower);
      }
    }
  }
}

TEST_CASE("clique cover bounds bracket the optimum") {
  oracle::Rng rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = oracle::random_metric(rng, 4 + trial % 8, 8);
    const auto limit = s.rank_at_most(s.distance_values()[1 + trial % (s.distance_values().size() - 1)]);
    const std::size_t n = s.size();
    std::vector<Bitset> adj(n, Bitset(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && s.rank(a, b) <= limit) adj[a].set(b);
      }
    }
    auto r = min_clique_cover(adj, kDefaultEffortBudget);
    REQUIRE(r.exact());
    CHECK(r.greedy_upper >= r.upper);
    CHECK(r.independent_lower <= r.lower);
  }
}

TEST_CASE("a starved clique search returns a valid bracket") {
  oracle::Rng rng(25);
  auto s = oracle::random_metric(rng, 24, 30);
  const Distance delta = s.distance_values()[s.distance_values().size() / 3];
  auto tight = min_cover_number(s, all_points(s), delta, 1, CoverMethod::clique_search);
  auto full = min_cover_number(s, all_points(s), delta, 5'000'000, CoverMethod::clique_search);
  CHECK(tight.lower <= tight.upper);
  if (full.exact()) {
    CHECK(tight.lower <= full.lower);
    CHECK(full.upper <= tight.upper);
  }
}

TEST_CASE("classifier labels the three reference families") {
  auto binary = classify_geometry(
      family([](std::size_t n) { return gen_kappa_space({2, n, {}}); }, 4), 4);
  CHECK(binary.label == GeometryVerdict::Label::cantor_type);
  CHECK(binary.kind == GeometryVerdict::Kind::bounded_evidence);
  CHECK_FALSE(binary.witness_scales.empty());

  auto growing = classify_geometry(
      family([](std::size_t n) { return gen_kappa_space({n, n, {}}); }, 4), 4);
  CHECK(growing.label == GeometryVerdict::Label::baire_type);
  CHECK(growing.kind == GeometryVerdict::Kind::unbounded_evidence);

  auto point = classify_geometry(
      family([](std::size_t) { return gen_kappa_space({1, 0, {}}); }, 4), 4);
  CHECK(point.label == GeometryVerdict::Label::singleton_type);
  CHECK(point.kind == GeometryVerdict::Kind::bounded_evidence);
}

TEST_CASE("classifier reports isolated balls and validates its threshold") {
  // A pair plus a point drifting away: the far point's small balls are
  // singletons at every scale below the gap.
  auto spread = classify_geometry(
      family([](std::size_t n) {
               std::int64_t far = 1;
               for (std::size_t i = 0; i < n; ++i) far *= 10;
               return oracle::line({0, 1, far});
             },
             3),
      4);
  CHECK(spread.kind == GeometryVerdict::Kind::isolated_balls_evidence);
  CHECK(spread.label == GeometryVerdict::Label::inconclusive);

  CHECK_THROWS_AS(classify_geometry(family([](std::size_t) { return oracle::line({0}); }, 1), 1),
                  Error);
}
