#pragma once

#include "rankone/rational.hpp"

#include <cstddef>
#include <vector>

namespace rankone {

/// Upper-half-space point (x, e^t): horizontal coordinates plus a height
/// exponent.
struct UpperHalfSpacePoint {
  std::vector<double> x;  // n-1 horizontal coordinates
  double t = 0.0;         // the model height is e^t
};

/// arccosh(1 + (|dx|^2 + (e^{t1}-e^{t2})^2) / (2 e^{t1+t2})); zero iff the
/// points coincide. Dimension mismatch is rejected.
double hyperbolic_distance(const UpperHalfSpacePoint& p,
                           const UpperHalfSpacePoint& q);

/// Volume of T x [s, inf) in the model: base * e^{-(n-1)s} / (n-1).
double horoball_volume(int n, double base_volume, double s);

enum class CuspSpace { real_hyperbolic, complex_hyperbolic, quaternionic_hyperbolic };

/// Cusp exponent data: how fast horospherical diameters grow (in the
/// sub-Riemannian metric) and volumes decay along the cusp.
struct CuspModel {
  CuspSpace space = CuspSpace::real_hyperbolic;
  int n = 2;
  Rat volume_exponent{1};    // real: n-1, complex: 2n, quaternionic: 4n+2
  Rat diameter_exponent{1};  // e^{m} scaling in every family
};

CuspModel make_cusp_model(CuspSpace space, int n);
CuspModel make_cusp_model(const std::string& space_token, int n);  // rhn|chn|qhn
std::string cusp_space_token(const CuspModel& m);

struct IntegrabilityResult {
  Rat exponent;        // 2 * diameter_exponent - volume_exponent
  bool converges = false;
};

/// Summability exponent of the squared-diameter times volume sequence.
IntegrabilityResult cusp_integrability(const CuspModel& m);

struct TailSumResult {
  double partial_sum = 0.0;   // sum_{m=1..M} e^{exponent m}
  double truncation_bound = 0.0;  // valid when exponent < 0
  bool converges = false;
  int terms = 0;
};

/// Partial sums of the e^{exponent m} surrogate sequence; M >= 10.
TailSumResult tail_sum_probe(const CuspModel& m, int M);

struct WordBoundReport {
  double fitted_C = 0.0;   // max of w / e^h over the grid
  double max_ratio = 0.0;
  std::size_t grid_points = 0;
  std::size_t zero_word_points = 0;
  bool grid_too_small = false;
};

/// Sup-norm word length of the integer translate that returns a unit-ball
/// neighbor of q into the fundamental box [0,1)^{n-1}.
int translate_word_length(const UpperHalfSpacePoint& q);

/// Samples cusp points up to height `max_height` with unit-ball neighbors
/// and verifies w <= C e^h for the fitted C (the standard integer cusp
/// lattice of horizontal unit translations).
WordBoundReport cusp_word_bound(int n, int grid_per_axis, double max_height,
                                unsigned long long seed = 7);

}  // namespace rankone
