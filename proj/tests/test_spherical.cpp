#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rankone/spherical.hpp"

#include <cmath>

using namespace rankone;

namespace {
SphericalParameter comp(const RankOneGroup& g, double x) {
  return make_spherical(g, SphericalParameter::Kind::complementary, x);
}
SphericalParameter prin(const RankOneGroup& g, double x) {
  return make_spherical(g, SphericalParameter::Kind::principal, x);
}
}  // namespace

TEST_CASE("normalization and the trivial representation") {
  for (auto [f, n] : {std::pair{Field::real, 2}, {Field::real, 3},
                      {Field::real, 4}, {Field::complex_field, 2}}) {
    auto g = make_group(f, n);
    double rho = to_double(g.rho_beta);
    CHECK(phi(comp(g, 0.3 * rho), 0.0).real() == doctest::Approx(1.0));
    CHECK(phi(prin(g, 1.0), 0.0).real() == doctest::Approx(1.0));
    for (double t : {0.5, 3.0, 17.0})
      CHECK(phi(comp(g, rho), t).real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("parameter validation") {
  auto g = make_group(Field::real, 3);
  CHECK_THROWS_AS(comp(g, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(comp(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(prin(g, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(phi(comp(g, 0.5), -1.0), std::invalid_argument);
}

TEST_CASE("closed form on the real n=3 group") {
  auto g = make_group(Field::real, 3);
  CHECK(phi(comp(g, 0.5), 2.0).real() == doctest::Approx(0.648062).epsilon(1e-6));
  // 200-point grid at 1e-8 absolute accuracy.
  for (int i = 0; i < 10; ++i) {
    double x = 0.05 + 0.1 * i;
    for (int j = 0; j < 20; ++j) {
      double t = 1.5 * (j + 1);
      CHECK(std::abs(phi(comp(g, x), t).real() - oracle::h3_phi(x, t)) < 1e-8);
    }
  }
  // Principal series closed form.
  for (double x : {0.5, 1.5, 3.0})
    for (double t : {0.4, 2.0, 9.0})
      CHECK(phi(prin(g, x), t).real() ==
            doctest::Approx(oracle::h3_phi_principal(x, t)).epsilon(1e-9));
}

TEST_CASE("xi values") {
  auto g = make_group(Field::real, 3);
  CHECK(xi(g, 0.0) == doctest::Approx(1.0));
  CHECK(xi(g, 2.0) == doctest::Approx(0.551435).epsilon(1e-6));
  CHECK(xi(g, 2.0) == doctest::Approx(2.0 / std::sinh(2.0)).epsilon(1e-9));
}

TEST_CASE("dual evaluators agree") {
  for (auto [f, n] : {std::pair{Field::real, 2}, {Field::real, 4},
                      {Field::complex_field, 2}}) {
    auto g = make_group(f, n);
    double rho = to_double(g.rho_beta);
    for (double fx : {0.0, 0.5, 1.0})
      for (double t : {0.4, 1.7, 6.0, 14.0}) {
        auto p = comp(g, fx * rho);
        double a = phi(p, t).real();
        double b = phi_quadrature(p, t).real();
        CHECK(std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1e-30}));
      }
    for (double t : {0.7, 5.0}) {
      auto p = prin(g, 1.2);
      auto a = phi(p, t);
      auto b = phi_quadrature(p, t);
      CHECK(std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1e-30}));
    }
  }
}

TEST_CASE("scaled limits stabilize") {
  auto g = make_group(Field::real, 3);
  for (double x : {0.25, 0.5, 0.75}) {
    auto lim = spherical_limit(comp(g, x), 30.0);
    CHECK(lim.stabilized);
    CHECK(lim.value == doctest::Approx(1.0 / x).epsilon(1e-6));
  }
  auto at_rho = spherical_limit(comp(g, 1.0), 30.0);
  CHECK(at_rho.stabilized);
  CHECK(at_rho.value == doctest::Approx(1.0).epsilon(1e-9));

  // Complex family: the hypergeometric limit against scaled quadrature.
  auto su2 = make_group(Field::complex_field, 2);
  auto lim = spherical_limit(comp(su2, 1.0), 30.0);
  CHECK(lim.stabilized);
  CHECK(lim.value > 0.0);
  double t = 12.0;
  double quad_side = phi_quadrature(comp(su2, 1.0), t).real() * std::exp((2.0 - 1.0) * t);
  CHECK(lim.value == doctest::Approx(quad_side).epsilon(1e-6));

  CHECK_THROWS_AS(spherical_limit(comp(g, 0.0), 30.0), std::invalid_argument);
}

TEST_CASE("monotonicity and principal domination on a coarse grid") {
  for (auto [f, n] : {std::pair{Field::real, 3}, {Field::complex_field, 2}}) {
    auto g = make_group(f, n);
    double rho = to_double(g.rho_beta);
    for (double t : {0.5, 2.0, 8.0, 20.0}) {
      double prev = 0.0;
      for (int i = 0; i <= 8; ++i) {
        double v = phi(comp(g, rho * i / 8.0), t).real();
        CHECK(v > 0.0);
        CHECK(v >= prev * (1.0 - 1e-9));
        prev = v;
      }
      CHECK(prev <= 1.0 + 1e-9);
      double x0 = xi(g, t);
      for (double px : {0.3, 1.0, 2.5})
        CHECK(std::abs(phi(prin(g, px), t)) <= x0 * (1.0 + 1e-7));
    }
  }
}

TEST_CASE("decay bound checker") {
  auto g = make_group(Field::real, 3);
  auto curve = [&](auto eval) {
    std::vector<DecaySample> s;
    for (double t = 0.0; t <= 30.0; t += 0.5) s.push_back({t, eval(t)});
    return s;
  };
  // The principal endpoint curve satisfies the p = 2 envelope.
  auto xi_curve = curve([&](double t) { return xi(g, t); });
  CHECK(check_decay_bound(g, 2.0, xi_curve).pass);
  // Complementary curve at the dictionary parameter x = deltaG/p, p = 4.
  auto phi_curve = curve([&](double t) { return phi(comp(g, 0.5), t).real(); });
  auto rep = check_decay_bound(g, 4.0, phi_curve);
  CHECK(rep.pass);
  CHECK(rep.max_ratio > 0.3);  // near-tight envelope
  // No decay at all must fail at large t.
  auto flat = curve([&](double) { return 1.0; });
  CHECK_FALSE(check_decay_bound(g, 4.0, flat).pass);
  CHECK_THROWS_AS(check_decay_bound(g, 2.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(check_decay_bound(g, 1.5, xi_curve), std::invalid_argument);
}

TEST_CASE("grid conventions") {
  CHECK(standard_t_grid().size() == 121);
  CHECK(standard_t_grid().front() == 0.0);
  CHECK(standard_t_grid().back() == doctest::Approx(30.0));
  auto g = make_group(Field::complex_field, 2);
  auto xs = standard_x_grid(g);
  CHECK(xs.size() == 50);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == doctest::Approx(2.0));
}
