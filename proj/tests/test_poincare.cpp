#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rankone/poincare.hpp"

#include <cmath>

using namespace rankone;

namespace {
const DiscreteGroupSpec& modular() {
  static DiscreteGroupSpec spec = modular_group_spec();
  return spec;
}
const OrbitBall& modular_ball12() {
  static OrbitBall ball = enumerate_ball(modular(), 12.0);
  return ball;
}
}  // namespace

TEST_CASE("series basics") {
  auto g = make_group(Field::real, 2);
  auto tiny = enumerate_ball(cyclic_spec(g, 1.0), 0.0);
  CHECK(tiny.size() == 1);
  CHECK(poincare_series(tiny, 0.7) == doctest::Approx(1.0));

  auto ball = enumerate_ball(cyclic_spec(g, 1.0), 40.0);
  double truncated = poincare_series(ball, 1.0);
  double tail = 2.0 * std::exp(-41.0) / (1.0 - std::exp(-1.0));
  CHECK(truncated == doctest::Approx(oracle::cyclic_series_closed_form(1.0)).epsilon(1e-10));
  CHECK(oracle::cyclic_series_closed_form(1.0) - truncated <= tail + 1e-12);
  CHECK(poincare_series(ball, 1.5) < truncated);  // nonincreasing in s
  CHECK(poincare_series(ball, 2.0) >= 1.0);
  CHECK_THROWS_AS(poincare_series(ball, -0.5), std::invalid_argument);
}

TEST_CASE("series is monotone under ball inclusion") {
  auto small = enumerate_ball(modular(), 8.0);
  CHECK(poincare_series(small, 1.2) <= poincare_series(modular_ball12(), 1.2));
}

TEST_CASE("modular series stabilizes above the critical exponent") {
  const auto& ball = modular_ball12();
  double inc = poincare_series(ball, 1.2) -
               poincare_series(enumerate_ball(modular(), 11.0), 1.2);
  CHECK(inc < 1e-1);  // increments taper beyond R = 10 at s = 1.2
}

TEST_CASE("counting-slope estimate") {
  auto est = delta_estimate(modular_ball12());
  CHECK(est.delta_hat == doctest::Approx(1.0).epsilon(0.1));
  CHECK_FALSE(est.flagged);
  CHECK(est.method == ExponentEstimate::Method::counting_slope);
  CHECK(est.delta_hat <= modular_ball12().spec.group.deltaG + 0.1);

  auto g = make_group(Field::real, 2);
  auto cyc = delta_estimate(enumerate_ball(cyclic_spec(g, 1.0), 40.0));
  CHECK(cyc.delta_hat <= 0.05);

  auto sch = schottky_spec(4.0);
  auto est_sch = delta_estimate(enumerate_ball(sch, 20.0));
  double T = 2.0;  // generator displacement is 2T for the bundled pair
  CHECK(est_sch.delta_hat ==
        doctest::Approx(std::log(3.0) / (2.0 * T)).epsilon(0.2));

  auto incomplete = delta_estimate(enumerate_ball(modular(), 10.0, 2000));
  CHECK(incomplete.flagged);
  CHECK_THROWS_AS(delta_estimate(enumerate_ball(modular(), 3.0)),
                  std::invalid_argument);
}

TEST_CASE("series-threshold cross-check") {
  auto est = delta_estimate_series_threshold(modular_ball12());
  CHECK(est.delta_hat == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("divergence probe") {
  const auto& ball = modular_ball12();
  CHECK(divergence_probe(ball, 1.0) == DivergenceTrend::diverging_trend);
  CHECK(divergence_probe(ball, 1.5) == DivergenceTrend::converging_trend);
  auto g = make_group(Field::real, 2);
  auto cyc = enumerate_ball(cyclic_spec(g, 1.0), 30.0);
  CHECK(divergence_probe(cyc, 0.5) == DivergenceTrend::converging_trend);
}

TEST_CASE("estimate is basepoint-insensitive") {
  auto g = modular().group;
  std::mt19937_64 rng(3);
  auto h = multiply(random_compact(g, rng), cartan_element(g, 0.3));
  auto conj = conjugate_spec(modular(), h);
  auto est0 = delta_estimate(enumerate_ball(modular(), 11.0));
  auto est1 = delta_estimate(enumerate_ball(conj, 11.0));
  CHECK(std::abs(est0.delta_hat - est1.delta_hat) <= 0.05);
}
