#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rankone/orbit.hpp"

#include <cmath>
#include <set>

using namespace rankone;

TEST_CASE("spec normalization") {
  auto g = make_group(Field::real, 2);
  auto a = cartan_element(g, 1.0);
  auto spec = make_spec(g, {a, a}, "dup");
  CHECK(spec.generators.size() == 2);  // a and its inverse, duplicate dropped

  auto bad = identity_element(g, EntryKind::floating);
  bad.fl.a[0] = 1.5;
  CHECK_THROWS_AS(make_spec(g, {bad}, "bad"), std::invalid_argument);
}

TEST_CASE("cyclic ball") {
  auto g = make_group(Field::real, 2);
  auto spec = cyclic_spec(g, 1.0);
  auto ball = enumerate_ball(spec, 5.0);
  CHECK(ball.size() == 11);
  CHECK(ball.complete);
  CHECK(ball.displacement(0) == 0.0);
  std::multiset<int> ds;
  for (std::size_t i = 0; i < ball.size(); ++i)
    ds.insert(static_cast<int>(std::lround(ball.displacement(i))));
  for (int k = 1; k <= 5; ++k) CHECK(ds.count(k) == 2);
}

TEST_CASE("schottky ball equals the free-word count") {
  auto spec = schottky_spec(6.0);
  REQUIRE(spec.certified_free);
  auto ball = enumerate_ball(spec, 12.0);
  auto a = spec.generators[0];
  // Generators are stored inverse-closed as {a, a^-1, b, b^-1}.
  auto b = spec.generators[2];
  CHECK(cartan_radius(b) > cartan_radius(a));
  CHECK(ball.size() == oracle::free_word_ball_count(a, b, 12.0, 4));
}

TEST_CASE("modular ball equals the integer-matrix search") {
  auto spec = modular_group_spec();
  REQUIRE(spec.generators.size() == 3);
  for (const auto& gen : spec.generators) {
    CHECK(gen.kind == EntryKind::exact_rational);
    CHECK(is_isometry(gen));
  }
  auto ball = enumerate_ball(spec, 8.0);
  CHECK(ball.dedup == DedupKind::exact);
  CHECK(static_cast<long long>(ball.size()) == oracle::modular_ball_count(8.0));
}

TEST_CASE("ball monotonicity and word-metric sub-additivity") {
  auto spec = modular_group_spec();
  auto small = enumerate_ball(spec, 6.0);
  auto large = enumerate_ball(spec, 8.0);
  CHECK(small.size() == large.count_within(6.0));
  double maxgen = 0.0;
  for (const auto& g : spec.generators)
    maxgen = std::max(maxgen, cartan_radius(g));
  for (std::size_t i = 0; i < large.size(); ++i)
    CHECK(large.displacement(i) <= large.word_length(i) * maxgen + 1e-9);
}

TEST_CASE("budget exhaustion flags the ball") {
  auto ball = enumerate_ball(modular_group_spec(), 10.0, 500);
  CHECK_FALSE(ball.complete);
  CHECK(ball.size() <= 500);
}

TEST_CASE("ping-pong powers") {
  auto [a, b] = schottky_pair(2.0, 1.0);
  auto pp = pingpong_powers(a, b, 2);
  CHECK(pp.certified);
  CHECK(pp.spec.certified_free);
  CHECK(pp.margin > 0.0);
  CHECK(pp.spec.generators.size() == 4);

  // Freely reduced words of length <= 6 in the certified pair are pairwise
  // distinct; the deduplicating word enumeration must count all of them.
  auto an = pp.spec.generators[0];
  auto bn = pp.spec.generators[2];
  std::size_t expect = 1;
  std::size_t shell = 4;
  for (int l = 1; l <= 6; ++l) {
    expect += shell;
    shell *= 3;
  }
  CHECK(oracle::free_word_ball_count(an, bn, 1e9, 6) == expect);

  CHECK_THROWS_AS(pingpong_powers(a, a, 2), std::invalid_argument);
  CHECK_THROWS_AS(pingpong_powers(identity_element(a.group, EntryKind::floating),
                                  b, 2),
                  std::invalid_argument);
}

TEST_CASE("conjugated spec stays valid") {
  auto spec = modular_group_spec();
  auto g = spec.group;
  auto h = multiply(cartan_element(g, 0.4), cartan_element(g, -0.1));
  auto conj = conjugate_spec(spec, h);
  CHECK(conj.generators.size() == spec.generators.size());
  for (const auto& gen : conj.generators) CHECK(is_isometry(gen));
}
