#pragma once

#include "rankone/group.hpp"
#include "rankone/rational.hpp"

#include <optional>
#include <string>

namespace rankone {

/// Integrability exponent with first-class infinity. plus_epsilon means the
/// exponent holds in the "p + eps for every eps > 0" sense.
struct LpExponent {
  Rat p{0};
  bool plus_epsilon = false;
  bool infinite = false;

  static LpExponent inf(bool plus_eps = false) {
    LpExponent e;
    e.infinite = true;
    e.plus_epsilon = plus_eps;
    return e;
  }
  static LpExponent finite(Rat v, bool plus_eps = false) {
    LpExponent e;
    e.p = v;
    e.plus_epsilon = plus_eps;
    return e;
  }
  bool operator==(const LpExponent& o) const {
    if (infinite != o.infinite) return false;
    return infinite ? plus_epsilon == o.plus_epsilon
                    : (p == o.p && plus_epsilon == o.plus_epsilon);
  }
};

std::string format_exponent(const LpExponent& e);
LpExponent parse_exponent(const std::string& s);  // "a/b", "inf"

/// delta data for the homomorphism inequalities.
struct ExponentScenario {
  Rat deltaG{0};
  Rat deltaGamma{0};
  std::optional<Rat> deltaKer;
  std::optional<Rat> deltaIm;
};

/// Threshold exponent of the complementary-strip parameter x (in root
/// units): p = 2 deltaG / (deltaG - 2x), always with plus_epsilon. x at
/// deltaG/2 yields infinity; beyond it is rejected.
LpExponent complementary_threshold(const RankOneGroup& g, const Rat& x);

/// Dictionary inverse of the threshold: the strip parameter whose matrix
/// coefficients decay like e^{-(deltaG/p) t}, i.e. 1/p = (rho - x)/(2 rho).
Rat threshold_parameter(const RankOneGroup& g, const LpExponent& p);

/// Restriction scaling: (deltaSub/deltaG) * p, plus_epsilon preserved.
/// Requires p >= 2.
LpExponent restrict_exponent(const LpExponent& p, const Rat& deltaSub,
                             const Rat& deltaG);

struct QuotientExponent {
  LpExponent p;
  bool sharp = false;          // sharp exactly when p > 2
  bool no_decay = false;       // deltaGamma == deltaG
};

/// Integrability of the quasi-regular quotient representation:
/// p = max{2, deltaG/(deltaG - deltaGamma)}.
QuotientExponent quotient_exponent(const Rat& deltaG, const Rat& deltaGamma);

/// Bottom of the Laplacian spectrum on the quotient space:
/// deltaGamma (deltaG - deltaGamma) above deltaG/2, else (deltaG/2)^2.
Rat laplacian_bottom(const Rat& deltaG, const Rat& deltaGamma);

struct TensorPlan {
  Rat q;                     // Hoelder partner: 1/q + 1/p = 1/2
  enum class Strategy { single, squared } strategy = Strategy::single;
  Rat x;                     // strip parameter (x' of the squared factor)
  int constant_power = 1;    // the 1/C'^k loss of the construction
};

/// Bookkeeping of the tensor argument turning an L^p bound into an L^2 one:
/// single factor for p <= 4, a squared factor (t = 2q) for p > 4.
TensorPlan tensor_plan(const RankOneGroup& g, const Rat& p);

/// 1/r = 1/p + 1/q with saturating infinity; plus_epsilon is OR-ed.
LpExponent hoelder_combine(const LpExponent& p, const LpExponent& q);

struct Thm14Result {
  Rat rhs;
  bool holds = false;
  bool equality = false;
};

/// delta(Gamma) <= max{delta(Ker), delta(Gamma)/2} + max{delta(Im)/2, 1}.
Thm14Result kernel_image_bound(const ExponentScenario& sc);

/// delta(C) >= delta(Gamma) - 1, weak or strict.
bool edge_stabilizer_bound(const Rat& deltaGamma, const Rat& deltaC,
                           bool strict_mode);

/// Static dictionary: the cohomology integrability invariant of the ambient
/// group equals its critical exponent, except for the smallest real group
/// where it vanishes.
Rat p_of_group(const RankOneGroup& g);

}  // namespace rankone
