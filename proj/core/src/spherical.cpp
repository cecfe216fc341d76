#include "rankone/spherical.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace rankone {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;

// Lanczos g=7 approximation, good to ~1e-15 on the right half plane.
cplx lgamma_c(cplx z) {
  static const double coef[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // Reflection; fine away from the poles on the nonpositive axis.
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_c(1.0 - z);
  }
  z -= 1.0;
  cplx x = coef[0];
  for (int i = 1; i < 9; ++i) x += coef[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return 0.91893853320467274178 + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx cgamma(cplx z) { return std::exp(lgamma_c(z)); }

// Gauss series for 2F1(a,b;c;z) with |z| comfortably below 1.
cplx hyp2f1_series(cplx a, cplx b, cplx c, double z) {
  cplx term = 1.0, sum = 1.0;
  for (int k = 0; k < 600; ++k) {
    term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
            ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * z;
    sum += term;
    if (std::abs(term) < 1e-17 * (1.0 + std::abs(sum))) return sum;
  }
  throw SphericalEvalError("hypergeometric series did not converge");
}

struct JacobiData {
  double alpha;
  double beta;
  double rho;
};

JacobiData jacobi_data(const RankOneGroup& g) {
  return {0.5 * (g.m1 + g.m2 - 1), 0.5 * (g.m2 - 1), 0.5 * g.deltaG};
}

// phi at exponent parameter nu (leading behavior e^{(nu-rho)t}), for t below
// the expansion switch. Pfaff form keeps the series argument at tanh^2 t.
cplx phi_small_t(const JacobiData& j, cplx nu, double t) {
  double w = std::tanh(t);
  w *= w;
  cplx a = 0.5 * (j.rho - nu);
  cplx b = (j.alpha + 1.0) - 0.5 * (j.rho + nu);
  cplx c = j.alpha + 1.0;
  return std::pow(cplx(std::cosh(t)), nu - j.rho) * hyp2f1_series(a, b, c, w);
}

// One branch of the c-function expansion: c(nu) (2 cosh t)^{nu-rho}
// 2F1((rho-nu)/2, (alpha-beta+1-nu)/2; 1-nu; sech^2 t).
cplx expansion_branch(const JacobiData& j, cplx nu, double t) {
  cplx cfun = std::pow(cplx(2.0), j.rho - nu) * cgamma(j.alpha + 1.0) *
              cgamma(nu) /
              (cgamma(0.5 * (nu + j.rho)) *
               cgamma(0.5 * (nu + j.alpha - j.beta + 1.0)));
  double sech = 1.0 / std::cosh(t);
  cplx f = hyp2f1_series(0.5 * (j.rho - nu),
                         0.5 * (j.alpha - j.beta + 1.0 - nu), 1.0 - nu,
                         sech * sech);
  return cfun * std::exp((nu - j.rho) * std::log(2.0 * std::cosh(t))) * f;
}

cplx phi_large_t_direct(const JacobiData& j, cplx nu, double t) {
  return expansion_branch(j, nu, t) + expansion_branch(j, -nu, t);
}

constexpr double kSwitchT = 1.0;
constexpr double kDegenerateDist = 1e-3;
constexpr double kShift = 2.5e-4;

double dist_to_integer(cplx nu) {
  double m = std::round(nu.real());
  return std::abs(nu - cplx(m));
}

cplx phi_at_nu(const JacobiData& j, cplx nu, double t) {
  if (t < kSwitchT) return phi_small_t(j, nu, t);
  if (dist_to_integer(nu) > kDegenerateDist)
    return phi_large_t_direct(j, nu, t);
  // Near an integer both expansion branches develop simple poles that cancel
  // in the sum. Offset perpendicular to the nearby pole and use the even
  // symmetric average with one Richardson step.
  cplx dir = std::abs(nu.imag()) > std::abs(nu.real() - std::round(nu.real()))
                 ? cplx(1.0, 0.0)
                 : cplx(0.0, 1.0);
  auto avg = [&](double s) {
    return 0.5 * (phi_large_t_direct(j, nu + s * dir, t) +
                  phi_large_t_direct(j, nu - s * dir, t));
  };
  cplx r1 = avg(kShift);
  cplx r2 = avg(2.0 * kShift);
  return (4.0 * r1 - r2) / 3.0;
}

cplx nu_of(const SphericalParameter& p) {
  return p.kind == SphericalParameter::Kind::complementary ? cplx(p.x, 0.0)
                                                           : cplx(0.0, p.x);
}

}  // namespace

double jacobi_alpha(const RankOneGroup& g) { return jacobi_data(g).alpha; }
double jacobi_beta(const RankOneGroup& g) { return jacobi_data(g).beta; }

SphericalParameter make_spherical(const RankOneGroup& g,
                                  SphericalParameter::Kind kind, double x) {
  SphericalParameter p{g, kind, x};
  double rho = to_double(g.rho_beta);
  if (kind == SphericalParameter::Kind::complementary) {
    if (x < 0.0 || x > rho + 1e-12)
      throw std::invalid_argument("complementary parameter outside [0, rho]");
  } else {
    if (x < 0.0)
      throw std::invalid_argument("principal parameter needs x >= 0");
  }
  return p;
}

std::complex<double> phi(const SphericalParameter& p, double t) {
  if (t < 0) throw std::invalid_argument("phi needs t >= 0");
  JacobiData j = jacobi_data(p.group);
  cplx v = phi_at_nu(j, nu_of(p), t);
  if (p.kind == SphericalParameter::Kind::complementary) v.imag(0.0);
  return v;
}

double xi(const RankOneGroup& g, double t) {
  SphericalParameter p{g, SphericalParameter::Kind::principal, 0.0};
  return phi(p, t).real();
}

// --- quadrature evaluator ---------------------------------------------------

namespace {

double integrate_ts(const std::function<double(double)>& f, double lo,
                    double hi) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator.integrate(f, lo, hi, 1e-11);
}

// Real family: (1/B) int_0^pi (cosh t + sinh t cos u)^{nu-rho} sin^{n-2}u du.
// Integrated in theta = pi - u so the sharp large-t peak sits at 0, where
// doubles still resolve it; the kernel base e^{-t} + 2 sinh(t) sin^2(theta/2)
// is assembled cancellation-free.
cplx quad_real_family(const RankOneGroup& g, cplx nu, double t) {
  JacobiData j = jacobi_data(g);
  const double emt = std::exp(-t), sh = std::sinh(t);
  const int w = g.n - 2;
  auto kernel = [&](double th, bool im_part) {
    double su = std::sin(0.5 * th);
    double logb = std::log(emt + 2.0 * sh * su * su);
    double mag = std::exp((nu.real() - j.rho) * logb);
    double k = im_part ? mag * std::sin(nu.imag() * logb)
                       : mag * std::cos(nu.imag() * logb);
    return k * std::pow(std::sin(th), w);
  };
  // int_0^pi sin^w = sqrt(pi) Gamma((w+1)/2) / Gamma(w/2+1)
  double norm = std::sqrt(kPi) * std::tgamma(0.5 * (w + 1)) /
                std::tgamma(0.5 * w + 1.0);
  double re = integrate_ts([&](double th) { return kernel(th, false); }, 0.0, kPi);
  double im = nu.imag() == 0.0
                  ? 0.0
                  : integrate_ts([&](double th) { return kernel(th, true); }, 0.0, kPi);
  return cplx(re / norm, im / norm);
}

// Complex family: c int_0^1 int_0^pi |cosh t + sinh t r e^{i psi}|^{nu-rho}
// (1-r^2)^{n-2} r dr dpsi. Same theta flip in the angle, v = 1 - r in the
// radius; the squared modulus becomes
// (e^{-t} + v sinh t)^2 + 4 (1-v) sinh t cosh t sin^2(theta/2).
cplx quad_complex_family(const RankOneGroup& g, cplx nu, double t) {
  JacobiData j = jacobi_data(g);
  const double emt = std::exp(-t), sh = std::sinh(t), ch = std::cosh(t);
  const int w = g.n - 2;
  auto inner = [&](double th, bool im_part) {
    double sp = std::sin(0.5 * th);
    double cross = 4.0 * sh * ch * sp * sp;
    return integrate_ts(
        [&](double v) {
          double r = 1.0 - v;
          double axial = emt + v * sh;
          double mod2 = axial * axial + r * cross;
          double logb = 0.5 * std::log(mod2);
          double mag = std::exp((nu.real() - j.rho) * logb);
          double k = im_part ? mag * std::sin(nu.imag() * logb)
                             : mag * std::cos(nu.imag() * logb);
          double omr2 = v * (1.0 + r);  // 1 - r^2
          return k * std::pow(omr2, w) * r;
        },
        0.0, 1.0);
  };
  double norm = kPi / (2.0 * (g.n - 1));
  double re = integrate_ts([&](double th) { return inner(th, false); }, 0.0, kPi);
  double im = nu.imag() == 0.0
                  ? 0.0
                  : integrate_ts([&](double th) { return inner(th, true); }, 0.0, kPi);
  return cplx(re / norm, im / norm);
}

}  // namespace

std::complex<double> phi_quadrature(const SphericalParameter& p, double t) {
  if (t < 0) throw std::invalid_argument("phi_quadrature needs t >= 0");
  if (t == 0.0) return 1.0;
  cplx nu = nu_of(p);
  cplx v = p.group.field == Field::real ? quad_real_family(p.group, nu, t)
                                        : quad_complex_family(p.group, nu, t);
  if (p.kind == SphericalParameter::Kind::complementary) v.imag(0.0);
  return v;
}

LimitResult spherical_limit(const SphericalParameter& p, double t_max) {
  if (p.kind != SphericalParameter::Kind::complementary || p.x <= 0.0)
    throw std::invalid_argument("spherical_limit needs complementary x > 0");
  double rho = to_double(p.group.rho_beta);
  auto scaled = [&](double t) {
    return std::exp((rho - p.x) * t) * phi(p, t).real();
  };
  LimitResult r;
  r.t_max = t_max;
  double v0 = scaled(t_max - 5.0);
  double v1 = scaled(t_max);
  r.value = v1;
  r.rel_change = std::abs(v1 - v0) / std::max(std::abs(v1), 1e-300);
  r.stabilized = r.rel_change < 1e-3;
  return r;
}

DecayReport check_decay_bound(const RankOneGroup& g, double p,
                              const std::vector<DecaySample>& samples) {
  if (p < 2.0) throw std::invalid_argument("check_decay_bound needs p >= 2");
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  auto shape = [&](double t) {
    return (1.0 + t) * std::exp(-(static_cast<double>(g.deltaG) / p) * t);
  };
  std::vector<double> ts;
  ts.reserve(samples.size());
  for (const auto& s : samples) ts.push_back(s.t);
  std::vector<double> sorted = ts;
  std::sort(sorted.begin(), sorted.end());
  double t_med = sorted[sorted.size() / 2];

  DecayReport rep;
  for (const auto& s : samples) {
    double ratio = std::abs(s.value) / shape(s.t);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (s.t <= t_med) rep.fitted_C = std::max(rep.fitted_C, ratio);
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double ratio = std::abs(samples[i].value) / shape(samples[i].t);
    if (ratio > 1.5 * rep.fitted_C) rep.violations.push_back(i);
  }
  rep.pass = rep.violations.empty();
  return rep;
}

std::vector<double> standard_t_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 120; ++k) g.push_back(0.25 * k);
  return g;
}

std::vector<double> standard_x_grid(const RankOneGroup& g) {
  double rho = to_double(g.rho_beta);
  std::vector<double> xs;
  for (int k = 0; k < 50; ++k) xs.push_back(rho * k / 49.0);
  return xs;
}

}  // namespace rankone
