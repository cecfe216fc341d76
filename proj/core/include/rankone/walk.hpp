#pragma once

#include "rankone/orbit.hpp"

#include <string>

namespace rankone {

/// Matrix-free walk targets: free groups and free abelian groups with their
/// standard symmetric generating sets.
struct AbstractWalkSpec {
  enum class Kind { free_group, free_abelian } kind = Kind::free_group;
  int rank = 2;
};

/// Parses "free:k" or "z:k" (also "z" / "z2").
AbstractWalkSpec parse_abstract_walk(const std::string& s);

struct WalkEstimate {
  double radius = 1.0;      // estimate of the operator norm, in (0, 1]
  int steps = 0;            // walk length used (even)
  bool low_confidence = false;
  std::string note;
};

/// Norm of the simple-random-walk operator from the return-probability root
/// p_{2m}(e)^{1/2m}, extrapolated by a least-squares fit of
/// log p = A (2m) + B log(2m) + C over the last quarter of the even steps.
WalkEstimate walk_spectral_radius(const AbstractWalkSpec& spec, int steps);

/// Same estimator on a matrix spec: exact distribution dynamics on the
/// deduplicated Cayley ball when it fits the budget, otherwise Monte Carlo
/// with `trials` walks (flagged low-confidence).
WalkEstimate walk_spectral_radius(const DiscreteGroupSpec& spec, int steps,
                                  long long trials = 200'000,
                                  std::size_t budget = 2'000'000);

}  // namespace rankone
