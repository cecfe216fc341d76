#pragma once

#include "rankone/group.hpp"

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rankone {

/// Spherical-function parameter in units of the simple root: real values in
/// [0, rho] for the complementary strip, the imaginary axis for the
/// principal series (x >= 0 parametrizes i*x).
struct SphericalParameter {
  RankOneGroup group;
  enum class Kind { complementary, principal } kind = Kind::complementary;
  double x = 0.0;
};

SphericalParameter make_spherical(const RankOneGroup& g,
                                  SphericalParameter::Kind kind, double x);

struct SphericalEvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Jacobi parameters attached to the root multiplicities:
/// alpha = (m1+m2-1)/2, beta = (m2-1)/2.
double jacobi_alpha(const RankOneGroup& g);
double jacobi_beta(const RankOneGroup& g);

/// Spherical function at the Cartan element of radius t, evaluated through
/// the hypergeometric representation (power series for small t, the
/// c-function expansion beyond). Real-valued on the complementary strip.
/// Throws SphericalEvalError if a series fails to converge.
std::complex<double> phi(const SphericalParameter& p, double t);

/// Independent evaluator: adaptive quadrature of the rank-one compact-group
/// integral. Slower; used as the cross-check for phi.
std::complex<double> phi_quadrature(const SphericalParameter& p, double t);

/// phi at the principal parameter 0.
double xi(const RankOneGroup& g, double t);

struct LimitResult {
  double value = 0.0;
  double rel_change = 0.0;  // between t_max-5 and t_max
  bool stabilized = false;  // rel_change < 1e-3
  double t_max = 0.0;
};

/// Stabilized value of e^{(rho-x)t} phi_x(t) at large t, for complementary
/// 0 < x <= rho.
LimitResult spherical_limit(const SphericalParameter& p, double t_max);

struct DecaySample {
  double t = 0.0;
  double value = 0.0;
};

struct DecayReport {
  double fitted_C = 0.0;       // max ratio over the fitting half
  double max_ratio = 0.0;      // max ratio over all samples
  std::vector<std::size_t> violations;
  bool pass = false;
};

/// Checks |value| <= C (1+t) e^{-(deltaG/p) t} with C fitted on the early
/// half of the samples; later samples exceeding 1.5x the fitted constant are
/// violations. Empty samples are rejected.
DecayReport check_decay_bound(const RankOneGroup& g, double p,
                              const std::vector<DecaySample>& samples);

/// Module grid conventions: t in {0, 0.25, ..., 30}, 50 evenly spaced
/// complementary x values in [0, rho].
std::vector<double> standard_t_grid();
std::vector<double> standard_x_grid(const RankOneGroup& g);

}  // namespace rankone
