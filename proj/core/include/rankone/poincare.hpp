#pragma once

#include "rankone/orbit.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace rankone {

struct ExponentEstimate {
  double delta_hat = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;  // RMS of the log-linear fit
  std::vector<std::pair<double, std::size_t>> counting_curve;  // (R, N(R))
  enum class Method { counting_slope, series_threshold } method =
      Method::counting_slope;
  bool flagged = false;  // incomplete ball or otherwise unreliable
};

/// Truncated orbital series sum e^{-s d} over the ball; >= 1 and
/// nonincreasing in s.
double poincare_series(const OrbitBall& ball, double s);

/// Least-squares slope of log N(R') over R' in [R/2, R]. Incomplete balls
/// flag the estimate; fewer than 5 window samples are rejected.
ExponentEstimate delta_estimate(const OrbitBall& ball);

/// Cross-check estimator: bisects s until the partial-sum increments flip
/// between decaying and non-decaying.
ExponentEstimate delta_estimate_series_threshold(const OrbitBall& ball);

enum class DivergenceTrend { diverging_trend, converging_trend, inconclusive };

/// Finite-radius heuristic on the increments of the orbital series at
/// exponent s: geometric decay, bounded away from zero, or neither. Never a
/// proof, and labeled accordingly.
DivergenceTrend divergence_probe(const OrbitBall& ball, double s);

const char* trend_name(DivergenceTrend t);

}  // namespace rankone
