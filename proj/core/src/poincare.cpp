#include "rankone/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rankone {

double poincare_series(const OrbitBall& ball, double s) {
  if (s < 0) throw std::invalid_argument("poincare_series needs s >= 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i)
    acc += std::exp(-s * ball.displacement(i));
  return acc;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  double den = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double se = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.slope * x[i] + f.intercept);
    se += r * r;
  }
  f.rms = std::sqrt(se / n);
  return f;
}

std::vector<std::pair<double, std::size_t>> counting_curve(const OrbitBall& ball,
                                                           double step) {
  std::vector<double> ds(ball.displacements());
  std::sort(ds.begin(), ds.end());
  std::vector<std::pair<double, std::size_t>> curve;
  for (double r = 0.0; r <= ball.radius + 1e-12; r += step) {
    std::size_t n = std::upper_bound(ds.begin(), ds.end(), r + 1e-12) - ds.begin();
    curve.emplace_back(r, n);
  }
  return curve;
}

}  // namespace

ExponentEstimate delta_estimate(const OrbitBall& ball) {
  const double R = ball.radius;
  ExponentEstimate est;
  est.method = ExponentEstimate::Method::counting_slope;
  est.window_lo = R / 2.0;
  est.window_hi = R;
  est.flagged = !ball.complete;
  est.counting_curve = counting_curve(ball, 0.5);

  std::vector<double> xs, ys;
  for (const auto& [r, n] : est.counting_curve) {
    if (r + 1e-9 < est.window_lo || n == 0) continue;
    xs.push_back(r);
    ys.push_back(std::log(static_cast<double>(n)));
  }
  if (xs.size() < 5)
    throw std::invalid_argument("fewer than 5 samples in the fit window");
  LineFit f = fit_line(xs, ys);
  est.delta_hat = std::max(0.0, f.slope);
  est.residual = f.rms;
  return est;
}

namespace {

// Partial-sum increments of the series at exponent s over unit annuli.
std::vector<double> annulus_increments(const OrbitBall& ball, double s) {
  int bins = static_cast<int>(std::floor(ball.radius));
  std::vector<double> inc(static_cast<std::size_t>(std::max(bins, 0)), 0.0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    double d = ball.displacement(i);
    int k = static_cast<int>(std::floor(d));
    if (k >= 0 && k < bins) inc[static_cast<std::size_t>(k)] += std::exp(-s * d);
  }
  return inc;
}

DivergenceTrend classify(const std::vector<double>& inc) {
  // Geometric-mean ratio over the later half of nonzero increments.
  std::vector<double> ratios;
  for (std::size_t k = inc.size() / 2; k + 1 < inc.size(); ++k)
    if (inc[k] > 0 && inc[k + 1] > 0) ratios.push_back(inc[k + 1] / inc[k]);
  if (ratios.size() < 2) return DivergenceTrend::inconclusive;
  double logmean = 0.0;
  for (double r : ratios) logmean += std::log(r);
  double gm = std::exp(logmean / ratios.size());
  if (gm <= 0.85) return DivergenceTrend::converging_trend;
  if (gm >= 0.95) return DivergenceTrend::diverging_trend;
  return DivergenceTrend::inconclusive;
}

}  // namespace

DivergenceTrend divergence_probe(const OrbitBall& ball, double s) {
  if (s < 0) throw std::invalid_argument("divergence_probe needs s >= 0");
  return classify(annulus_increments(ball, s));
}

ExponentEstimate delta_estimate_series_threshold(const OrbitBall& ball) {
  ExponentEstimate est;
  est.method = ExponentEstimate::Method::series_threshold;
  est.window_lo = ball.radius / 2.0;
  est.window_hi = ball.radius;
  est.flagged = !ball.complete;
  est.counting_curve = counting_curve(ball, 0.5);
  double lo = 0.0, hi = static_cast<double>(ball.spec.group.deltaG) + 1.0;
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    DivergenceTrend t = divergence_probe(ball, mid);
    if (t == DivergenceTrend::converging_trend)
      hi = mid;
    else
      lo = mid;
  }
  est.delta_hat = 0.5 * (lo + hi);
  est.residual = 0.5 * (hi - lo);
  return est;
}

const char* trend_name(DivergenceTrend t) {
  switch (t) {
    case DivergenceTrend::diverging_trend:
      return "diverging_trend";
    case DivergenceTrend::converging_trend:
      return "converging_trend";
    default:
      return "inconclusive";
  }
}

}  // namespace rankone
