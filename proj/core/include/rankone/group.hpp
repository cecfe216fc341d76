#pragma once

#include "rankone/rational.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rankone {

enum class Field { real, complex_field };

/// Descriptor of a rank-one group preserving a signature-(n,1) form:
/// the real family for field = real, the complex family for field = complex.
/// Root data is derived from (field, n) and never set by hand.
struct RankOneGroup {
  Field field = Field::real;
  int n = 2;
  int m1 = 1;        // multiplicity of the simple root
  int m2 = 0;        // multiplicity of twice the simple root
  int deltaG = 1;    // m1 + 2*m2
  Rat rho_beta{1, 2};  // deltaG / 2, in units of the simple root

  int dim() const { return n + 1; }
  bool operator==(const RankOneGroup& o) const {
    return field == o.field && n == o.n;
  }
};

/// Rejects n < 2.
RankOneGroup make_group(Field field, int n);
/// family is "so" (real) or "su" (complex).
RankOneGroup make_group(const std::string& family, int n);
std::string family_name(const RankOneGroup& g);

// --- matrix storage -------------------------------------------------------

/// Square matrix with entries (re + i*im)/den over a common denominator.
/// Invariant: den > 0 and gcd(den, all entries) == 1; im is empty for a
/// purely real matrix.
struct ExactMat {
  int dim = 0;
  std::vector<long long> re;
  std::vector<long long> im;  // empty <=> real
  long long den = 1;

  bool is_real() const { return im.empty(); }
  bool operator==(const ExactMat& o) const {
    return dim == o.dim && den == o.den && re == o.re && im == o.im;
  }
};

struct FloatMat {
  int dim = 0;
  std::vector<std::complex<double>> a;
};

ExactMat exact_identity(int dim);
ExactMat exact_from_rationals(int dim, const std::vector<Rat>& re,
                              const std::vector<Rat>& im = {});
void normalize(ExactMat& m);
/// Throws std::overflow_error when a product entry leaves the int64 range.
ExactMat multiply(const ExactMat& x, const ExactMat& y);
/// Inverse of a form-preserving matrix (conjugate-transpose twisted by the
/// form); cheap and exact, but only correct for isometries.
ExactMat form_inverse(const ExactMat& m);
FloatMat to_float(const ExactMat& m);

FloatMat float_identity(int dim);
FloatMat multiply(const FloatMat& x, const FloatMat& y);
FloatMat form_inverse(const FloatMat& m);

// --- group elements -------------------------------------------------------

enum class EntryKind { exact_rational, floating };

constexpr double kFormTolerance = 1e-9;

/// A matrix preserving the signature-(n,1) form, tagged with its group.
/// Only membership in the full isometry group is checked; staying inside the
/// identity component is the caller's responsibility.
struct GroupElement {
  RankOneGroup group;
  EntryKind kind = EntryKind::floating;
  ExactMat ex;
  FloatMat fl;

  int dim() const { return group.dim(); }
};

GroupElement element_from_exact(const RankOneGroup& g, ExactMat m);
GroupElement element_from_float(const RankOneGroup& g, FloatMat m);
GroupElement identity_element(const RankOneGroup& g,
                              EntryKind kind = EntryKind::exact_rational);
/// The one-parameter Cartan block in the lower-right 2x2 corner.
GroupElement cartan_element(const RankOneGroup& g, double t);

GroupElement multiply(const GroupElement& x, const GroupElement& y);
GroupElement inverse(const GroupElement& x);
bool equal_exact(const GroupElement& x, const GroupElement& y);

/// g* J g == J, exactly for exact entries, within tol for floats.
/// Throws std::invalid_argument on a dimension mismatch.
bool is_isometry(const GroupElement& g, double tol = kFormTolerance);

/// cosh of the displacement, read off the corner entry.
double cosh_cartan(const GroupElement& g);

/// Displacement of the basepoint, arccosh(|corner|). Corner moduli in
/// [1 - tol, 1) clamp to radius 0; smaller values throw std::domain_error.
double cartan_radius(const GroupElement& g, double tol = kFormTolerance);

/// Cartan-fiber density of the Haar measure at radius t >= 0.
double haar_density(const RankOneGroup& g, double t);
/// Integral of haar_density over [0, R] (Simpson on a fixed fine grid).
double haar_ball_volume(const RankOneGroup& g, double R);

/// Random element of the maximal compact subgroup: a block-orthogonal or
/// block-unitary matrix fixing the last coordinate up to phase.
GroupElement random_compact(const RankOneGroup& g, std::mt19937_64& rng);

}  // namespace rankone
