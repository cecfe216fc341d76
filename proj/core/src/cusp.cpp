#include "rankone/cusp.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace rankone {

double hyperbolic_distance(const UpperHalfSpacePoint& p,
                           const UpperHalfSpacePoint& q) {
  if (p.x.size() != q.x.size())
    throw std::invalid_argument("points live in different dimensions");
  double dx2 = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    double d = p.x[i] - q.x[i];
    dx2 += d * d;
  }
  double ep = std::exp(p.t), eq = std::exp(q.t);
  double arg = 1.0 + (dx2 + (ep - eq) * (ep - eq)) / (2.0 * ep * eq);
  if (arg < 1.0) arg = 1.0;
  return std::acosh(arg);
}

double horoball_volume(int n, double base_volume, double s) {
  if (n < 2) throw std::invalid_argument("horoball_volume needs n >= 2");
  if (base_volume < 0) throw std::invalid_argument("negative base volume");
  return base_volume * std::exp(-(n - 1) * s) / (n - 1);
}

CuspModel make_cusp_model(CuspSpace space, int n) {
  if (n < 2) throw std::invalid_argument("cusp model needs n >= 2");
  CuspModel m;
  m.space = space;
  m.n = n;
  m.diameter_exponent = Rat(1);
  switch (space) {
    case CuspSpace::real_hyperbolic:
      m.volume_exponent = Rat(n - 1);
      break;
    case CuspSpace::complex_hyperbolic:
      m.volume_exponent = Rat(2 * n);
      break;
    case CuspSpace::quaternionic_hyperbolic:
      m.volume_exponent = Rat(4 * n + 2);
      break;
  }
  return m;
}

CuspModel make_cusp_model(const std::string& token, int n) {
  if (token == "rhn") return make_cusp_model(CuspSpace::real_hyperbolic, n);
  if (token == "chn") return make_cusp_model(CuspSpace::complex_hyperbolic, n);
  if (token == "qhn")
    return make_cusp_model(CuspSpace::quaternionic_hyperbolic, n);
  throw std::invalid_argument("unknown cusp space: " + token +
                              " (want rhn|chn|qhn)");
}

std::string cusp_space_token(const CuspModel& m) {
  switch (m.space) {
    case CuspSpace::real_hyperbolic:
      return "rhn";
    case CuspSpace::complex_hyperbolic:
      return "chn";
    default:
      return "qhn";
  }
}

IntegrabilityResult cusp_integrability(const CuspModel& m) {
  IntegrabilityResult r;
  r.exponent = 2 * m.diameter_exponent - m.volume_exponent;
  r.converges = r.exponent < Rat(0);
  return r;
}

TailSumResult tail_sum_probe(const CuspModel& m, int M) {
  if (M < 10) throw std::invalid_argument("tail_sum_probe needs M >= 10");
  IntegrabilityResult ir = cusp_integrability(m);
  double e = to_double(ir.exponent);
  TailSumResult r;
  r.converges = ir.converges;
  r.terms = M;
  for (int k = 1; k <= M; ++k) r.partial_sum += std::exp(e * k);
  if (ir.converges)
    r.truncation_bound = std::exp(e * (M + 1)) / (1.0 - std::exp(e));
  return r;
}

int translate_word_length(const UpperHalfSpacePoint& q) {
  int w = 0;
  for (double c : q.x) {
    auto k = static_cast<long long>(std::floor(c));
    w = std::max(w, static_cast<int>(std::llabs(k)));
  }
  return w;
}

WordBoundReport cusp_word_bound(int n, int grid_per_axis, double max_height,
                                unsigned long long seed) {
  if (n < 2) throw std::invalid_argument("cusp_word_bound needs n >= 2");
  WordBoundReport rep;
  if (grid_per_axis < 4) {
    rep.grid_too_small = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dims = n - 1;
  // Unit-ball reach at height h: a hyperbolic step of length 1 moves the
  // horizontal part by at most 2 sinh(1/2) e^{max height along the path}.
  for (int hi = 0; hi < grid_per_axis; ++hi) {
    double h = max_height * hi / (grid_per_axis - 1);
    for (int s = 0; s < grid_per_axis; ++s) {
      UpperHalfSpacePoint p;
      p.t = h;
      p.x.resize(static_cast<std::size_t>(dims));
      for (auto& c : p.x) c = unif(rng);
      // Sample neighbors on the unit sphere around p (in the metric):
      // horizontal kicks of size up to the full reach plus pure height moves.
      for (int dir = 0; dir < 8; ++dir) {
        std::vector<double> u(static_cast<std::size_t>(dims));
        double norm = 0.0;
        for (auto& c : u) {
          c = gauss(rng);
          norm += c * c;
        }
        norm = std::sqrt(norm);
        double reach = 2.0 * std::sinh(0.5) * std::exp(h) * unif(rng);
        UpperHalfSpacePoint q = p;
        for (std::size_t i = 0; i < u.size(); ++i)
          q.x[i] += reach * u[i] / norm;
        if (hyperbolic_distance(p, q) > 1.0) continue;  // outside the unit ball
        int w = translate_word_length(q);
        ++rep.grid_points;
        if (w == 0) ++rep.zero_word_points;
        double ratio = w / std::exp(h);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
      }
    }
  }
  rep.fitted_C = rep.max_ratio;
  rep.grid_too_small = rep.grid_points < 100;
  return rep;
}

}  // namespace rankone
