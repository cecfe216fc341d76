#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankone/walk.hpp"

#include <cmath>

using namespace rankone;

TEST_CASE("abstract spec parsing") {
  auto f = parse_abstract_walk("free:3");
  CHECK(f.kind == AbstractWalkSpec::Kind::free_group);
  CHECK(f.rank == 3);
  auto z = parse_abstract_walk("z:2");
  CHECK(z.kind == AbstractWalkSpec::Kind::free_abelian);
  CHECK(z.rank == 2);
  CHECK(parse_abstract_walk("z").rank == 1);
  CHECK_THROWS_AS(parse_abstract_walk("dihedral:4"), std::invalid_argument);
}

TEST_CASE("free-group radius") {
  auto est = walk_spectral_radius(parse_abstract_walk("free:2"), 400);
  CHECK_FALSE(est.low_confidence);
  CHECK(std::abs(est.radius - std::sqrt(3.0) / 2.0) < 1e-2);
  // Kesten value sqrt(2k-1)/k for the rank-3 tree.
  auto est3 = walk_spectral_radius(parse_abstract_walk("free:3"), 400);
  CHECK(std::abs(est3.radius - std::sqrt(5.0) / 3.0) < 1e-2);
}

TEST_CASE("abelian radii are 1") {
  CHECK(std::abs(walk_spectral_radius(parse_abstract_walk("z:1"), 400).radius - 1.0) < 1e-2);
  CHECK(std::abs(walk_spectral_radius(parse_abstract_walk("z:2"), 300).radius - 1.0) < 1e-2);
}

TEST_CASE("input validation and confidence flags") {
  CHECK_THROWS_AS(walk_spectral_radius(parse_abstract_walk("free:2"), 201),
                  std::invalid_argument);
  CHECK_THROWS_AS(walk_spectral_radius(parse_abstract_walk("free:2"), 0),
                  std::invalid_argument);
  auto est = walk_spectral_radius(parse_abstract_walk("free:2"), 20);
  CHECK(est.low_confidence);
}

TEST_CASE("matrix specs ride the same estimator") {
  // The abelian matrix spec must look amenable.
  auto g = make_group(Field::real, 2);
  auto cyc = walk_spectral_radius(cyclic_spec(g, 1.0), 200);
  CHECK(std::abs(cyc.radius - 1.0) < 1e-2);

  // Certified-free matrix pair against the abstract tree value: same Cayley
  // graph, word ball built from matrices.
  auto sch = schottky_spec(4.0);
  auto est = walk_spectral_radius(sch, 16);
  CHECK(est.radius < 0.95);
  CHECK(est.radius > 0.6);

  // Kesten dichotomy at desk scale: the modular quotient walk sits strictly
  // inside the unit disk.
  auto mod = walk_spectral_radius(modular_group_spec(), 40);
  CHECK(mod.radius < 0.999);
  CHECK(mod.radius > 0.5);
}
