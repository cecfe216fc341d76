#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rankone/lp.hpp"

#include <random>

using namespace rankone;

TEST_CASE("complementary threshold") {
  auto so3 = make_group(Field::real, 3);
  CHECK(complementary_threshold(so3, Rat(0)) == LpExponent::finite(Rat(2), true));
  auto so4 = make_group(Field::real, 4);
  CHECK(complementary_threshold(so4, Rat(1, 2)) == LpExponent::finite(Rat(3), true));
  CHECK(complementary_threshold(so3, Rat(1)).infinite);  // x = deltaG/2
  CHECK_THROWS_AS(complementary_threshold(so3, Rat(3, 2)), std::invalid_argument);
}

TEST_CASE("threshold and decay dictionary are mutually inverse") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long long> num(0, 199);
  for (auto [f, n] : {std::pair{Field::real, 4}, {Field::complex_field, 3}}) {
    auto g = make_group(f, n);
    for (int i = 0; i < 40; ++i) {
      Rat x(num(rng), 200);
      x = x * Rat(g.deltaG, 2);  // scale into [0, deltaG/2)
      auto p = complementary_threshold(g, x);
      if (p.infinite) continue;
      // decay exponent deltaG/p equals rho - x, i.e. 1/p = (rho - x)/(2 rho)
      CHECK(Rat(1) / p.p == (g.rho_beta - x) / (2 * g.rho_beta));
      CHECK(threshold_parameter(g, p) == x);
    }
  }
}

TEST_CASE("restriction scaling") {
  auto p2 = LpExponent::finite(Rat(2), true);
  CHECK(restrict_exponent(p2, Rat(1), Rat(2)).p == Rat(1));
  CHECK(restrict_exponent(p2, Rat(2), Rat(2)).p == Rat(2));
  CHECK(restrict_exponent(LpExponent::finite(Rat(6)), Rat(2), Rat(4)).p == Rat(3));
  CHECK(restrict_exponent(LpExponent::inf(), Rat(1), Rat(2)).infinite);
  CHECK_THROWS_AS(restrict_exponent(LpExponent::finite(Rat(3, 2)), Rat(1), Rat(2)),
                  std::invalid_argument);
  // Composition is multiplicative in the ratio.
  auto once = restrict_exponent(LpExponent::finite(Rat(8)), Rat(3), Rat(4));
  auto twice = restrict_exponent(once, Rat(2), Rat(3));
  CHECK(twice.p == Rat(8) * Rat(2, 4));
}

TEST_CASE("quotient exponent and spectral bottom") {
  auto q1 = quotient_exponent(Rat(2), Rat(1));
  CHECK(q1.p.p == Rat(2));
  CHECK_FALSE(q1.sharp);
  auto q2 = quotient_exponent(Rat(2), Rat(3, 2));
  CHECK(q2.p.p == Rat(4));
  CHECK(q2.sharp);
  auto q3 = quotient_exponent(Rat(3), Rat(2));
  CHECK(q3.p.p == Rat(3));
  CHECK(q3.sharp);
  CHECK(quotient_exponent(Rat(2), Rat(2)).no_decay);
  CHECK_THROWS_AS(quotient_exponent(Rat(2), Rat(5, 2)), std::invalid_argument);

  CHECK(laplacian_bottom(Rat(2), Rat(3, 2)) == Rat(3, 4));
  CHECK(laplacian_bottom(Rat(2), Rat(1)) == Rat(1));
  CHECK(laplacian_bottom(Rat(2), Rat(2)) == Rat(0));
  CHECK(laplacian_bottom(Rat(4), Rat(2)) == Rat(4));  // boundary: both branches agree
}

TEST_CASE("tensor plan") {
  auto so3 = make_group(Field::real, 3);  // rho = 1
  auto p4 = tensor_plan(so3, Rat(4));
  CHECK(p4.q == Rat(4));
  CHECK(p4.strategy == TensorPlan::Strategy::single);
  CHECK(p4.x == Rat(1, 2));
  CHECK(p4.constant_power == 1);

  auto p3 = tensor_plan(so3, Rat(3));
  CHECK(p3.q == Rat(6));
  CHECK(p3.strategy == TensorPlan::Strategy::single);
  CHECK(p3.x == Rat(2, 3));

  auto p6 = tensor_plan(so3, Rat(6));
  CHECK(p6.q == Rat(3));
  CHECK(p6.strategy == TensorPlan::Strategy::squared);
  CHECK(p6.x == Rat(2, 3));
  CHECK(p6.constant_power == 2);

  CHECK_THROWS_AS(tensor_plan(so3, Rat(2)), std::invalid_argument);
}

TEST_CASE("Hoelder combination") {
  CHECK(hoelder_combine(LpExponent::finite(Rat(4)), LpExponent::finite(Rat(4))).p == Rat(2));
  CHECK(hoelder_combine(LpExponent::finite(Rat(6)), LpExponent::finite(Rat(3))).p == Rat(2));
  CHECK(hoelder_combine(LpExponent::finite(Rat(5)), LpExponent::inf()).p == Rat(5));
  CHECK(hoelder_combine(LpExponent::finite(Rat(5), true), LpExponent::finite(Rat(5))).plus_epsilon);
  CHECK_THROWS_AS(hoelder_combine(LpExponent::finite(Rat(1, 2)), LpExponent::finite(Rat(4))),
                  std::invalid_argument);
}

TEST_CASE("plan and combination close the circle exactly") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> num(1, 60), den(1, 12);
  auto su3 = make_group(Field::complex_field, 3);
  int checked = 0;
  while (checked < 50) {
    Rat p(2 * den(rng) * 7 + num(rng), den(rng));  // spread above 2
    if (p <= Rat(2)) continue;
    auto plan = tensor_plan(su3, p);
    auto two = hoelder_combine(LpExponent::finite(p), LpExponent::finite(plan.q));
    CHECK(two.p == Rat(2));
    ++checked;
  }
}

TEST_CASE("kernel/image inequality") {
  ExponentScenario sc;
  sc.deltaG = Rat(3);
  sc.deltaGamma = Rat(3);
  sc.deltaKer = Rat(2);
  sc.deltaIm = Rat(2);
  auto r = kernel_image_bound(sc);
  CHECK(r.rhs == Rat(3));
  CHECK(r.holds);
  CHECK(r.equality);

  // Image below 2 forces the kernel term to carry the bound.
  sc.deltaGamma = Rat(2);
  sc.deltaIm = Rat(19, 10);
  sc.deltaKer = Rat(1);
  r = kernel_image_bound(sc);
  CHECK(r.rhs == Rat(2));
  CHECK(r.holds);
  CHECK(r.equality);

  // Extension case: trivial kernel, full image.
  sc.deltaGamma = Rat(3);
  sc.deltaKer = Rat(0);
  sc.deltaIm = Rat(3);
  r = kernel_image_bound(sc);
  CHECK(r.holds);
  CHECK(r.equality);

  sc.deltaKer.reset();
  CHECK_THROWS_AS(kernel_image_bound(sc), std::invalid_argument);
}

TEST_CASE("edge-stabilizer inequality") {
  CHECK(edge_stabilizer_bound(Rat(1), Rat(0), false));        // amalgam of finite factors
  CHECK_FALSE(edge_stabilizer_bound(Rat(1), Rat(0), true));   // equality is not strict
  CHECK(edge_stabilizer_bound(Rat(3), Rat(2), false));        // codimension-one splitting
  CHECK(edge_stabilizer_bound(Rat(2), Rat(2), true));         // full-size stabilizer
}

TEST_CASE("group invariant dictionary") {
  CHECK(p_of_group(make_group(Field::real, 2)) == Rat(0));
  CHECK(p_of_group(make_group(Field::real, 3)) == Rat(2));
  CHECK(p_of_group(make_group(Field::real, 5)) == Rat(4));
  CHECK(p_of_group(make_group(Field::complex_field, 2)) == Rat(4));
  CHECK(p_of_group(make_group(Field::complex_field, 4)) == Rat(8));
}

TEST_CASE("exponent parsing and formatting") {
  CHECK(format_exponent(LpExponent::finite(Rat(7, 3), true)) == "7/3+eps");
  CHECK(format_exponent(LpExponent::inf()) == "inf");
  CHECK(parse_exponent("7/3+eps") == LpExponent::finite(Rat(7, 3), true));
  CHECK(parse_exponent("inf").infinite);
  CHECK_THROWS_AS(parse_exponent("x/y"), std::invalid_argument);
}
