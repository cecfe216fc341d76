#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rankone/group.hpp"

#include <cmath>
#include <random>

using namespace rankone;

TEST_CASE("derived root data") {
  auto so3 = make_group(Field::real, 3);
  CHECK(so3.deltaG == 2);
  CHECK(so3.m1 == 2);
  CHECK(so3.m2 == 0);
  CHECK(so3.rho_beta == Rat(1));

  auto su2 = make_group(Field::complex_field, 2);
  CHECK(su2.deltaG == 4);
  CHECK(su2.m1 == 2);
  CHECK(su2.m2 == 1);
  CHECK(su2.rho_beta == Rat(2));

  CHECK(make_group(Field::real, 2).deltaG == 1);
  CHECK(make_group("su", 3).deltaG == 6);
  CHECK_THROWS_AS(make_group(Field::real, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_group("sp", 2), std::invalid_argument);
}

TEST_CASE("isometry test") {
  auto so3 = make_group(Field::real, 3);
  CHECK(is_isometry(identity_element(so3)));
  CHECK(is_isometry(cartan_element(so3, 1.0)));

  auto id = identity_element(so3, EntryKind::floating);
  id.fl.a[1] += 1e-3;
  CHECK_FALSE(is_isometry(id));

  FloatMat wrong = float_identity(3);
  CHECK_THROWS_AS(element_from_float(so3, wrong), std::invalid_argument);
}

TEST_CASE("cartan radius against the hyperboloid oracle") {
  CHECK(cartan_radius(identity_element(make_group(Field::real, 3))) == 0.0);
  auto so3 = make_group(Field::real, 3);
  CHECK(cartan_radius(cartan_element(so3, 2.0)) == doctest::Approx(2.0).epsilon(1e-12));

  std::mt19937_64 rng(7);
  for (Field f : {Field::real, Field::complex_field}) {
    auto g = make_group(f, f == Field::real ? 3 : 2);
    for (int i = 0; i < 50; ++i) {
      auto k1 = random_compact(g, rng);
      auto k2 = random_compact(g, rng);
      auto e = multiply(multiply(k1, cartan_element(g, 1.3)), k2);
      CHECK(cartan_radius(e) == doctest::Approx(1.3).epsilon(1e-10));
      CHECK(std::abs(cosh_cartan(e) - oracle::hyperboloid_cosh_distance(e)) < 1e-9);
    }
  }
}

TEST_CASE("cartan radius clamps and rejects") {
  auto so3 = make_group(Field::real, 3);
  auto e = identity_element(so3, EntryKind::floating);
  e.fl.a[15] = 1.0 - 5e-10;  // corner just below 1
  CHECK(cartan_radius(e) == 0.0);
  e.fl.a[15] = 0.5;
  CHECK_THROWS_AS(cartan_radius(e), std::domain_error);
}

TEST_CASE("haar density values") {
  auto so2 = make_group(Field::real, 2);
  CHECK(haar_density(so2, 1.0) == doctest::Approx(2.350402).epsilon(1e-6));
  CHECK(haar_density(so2, 0.0) == 0.0);
  auto su2 = make_group(Field::complex_field, 2);
  CHECK(haar_density(su2, 1.0) == doctest::Approx(40.0724).epsilon(1e-5));
  CHECK_THROWS_AS(haar_density(so2, -0.1), std::invalid_argument);

  // Polar ball volume differentiates back to the density.
  for (double t : {0.7, 1.9}) {
    double h = 1e-5;
    double dv = (haar_ball_volume(su2, t + h) - haar_ball_volume(su2, t - h)) / (2 * h);
    CHECK(dv == doctest::Approx(haar_density(su2, t)).epsilon(1e-6));
  }
}

TEST_CASE("displacement is sub-additive, symmetric, bi-invariant") {
  std::mt19937_64 rng(11);
  auto g = make_group(Field::real, 3);
  std::uniform_real_distribution<double> tdist(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    auto x = multiply(multiply(random_compact(g, rng), cartan_element(g, tdist(rng))),
                      random_compact(g, rng));
    auto y = multiply(multiply(random_compact(g, rng), cartan_element(g, tdist(rng))),
                      random_compact(g, rng));
    double dx = cartan_radius(x), dy = cartan_radius(y);
    CHECK(cartan_radius(multiply(x, y)) <= dx + dy + 1e-9);
    CHECK(cartan_radius(inverse(x)) == doctest::Approx(dx).epsilon(1e-9));
    auto conj = multiply(multiply(random_compact(g, rng), x), random_compact(g, rng));
    CHECK(cartan_radius(conj) == doctest::Approx(dx).epsilon(1e-9));
  }
}

TEST_CASE("haar growth exponent") {
  for (auto [f, n] : {std::pair{Field::real, 2}, {Field::real, 3},
                      {Field::real, 4}, {Field::complex_field, 2}}) {
    auto g = make_group(f, n);
    std::vector<double> xs, ys;
    for (double R = 20.0; R <= 30.0; R += 0.5) {
      xs.push_back(R);
      ys.push_back(std::log(haar_ball_volume(g, R)));
    }
    CHECK(std::abs(oracle::fit_slope(xs, ys) - g.deltaG) < 0.05);
  }
}

TEST_CASE("exact matrix arithmetic") {
  auto so2 = make_group(Field::real, 2);
  // 1/2-integer matrix with corner 3/2 preserving the form.
  std::vector<Rat> entries = {Rat(1), Rat(-1), Rat(1),
                              Rat(1), Rat(1, 2), Rat(1, 2),
                              Rat(1), Rat(-1, 2), Rat(3, 2)};
  auto t = element_from_exact(so2, exact_from_rationals(3, entries));
  CHECK(is_isometry(t));
  CHECK(cosh_cartan(t) == doctest::Approx(1.5));
  auto prod = multiply(t, inverse(t));
  CHECK(equal_exact(prod, identity_element(so2)));
  auto t2 = multiply(t, t);
  CHECK(is_isometry(t2));
  CHECK(t2.ex.den == 1);  // entries turn integral
}
