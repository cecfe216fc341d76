#pragma once

#include "rankone/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rankone {

/// Finitely generated subgroup given by matrix generators. The stored list
/// is inverse-closed and duplicate-free; every generator is an isometry.
struct DiscreteGroupSpec {
  RankOneGroup group;
  std::vector<GroupElement> generators;
  std::string label;
  // Set when a ping-pong table has been certified for the generator pair.
  // Certified-free specs are enumerated over reduced words, where matrix
  // dedup is unnecessary by freeness (and float dedup of deep balls would
  // otherwise drown in path-dependent rounding).
  bool certified_free = false;
};

/// Normalizes the generator list: validates, adds missing inverses, drops
/// duplicates (exact comparison, or entrywise within tol for floats).
DiscreteGroupSpec make_spec(const RankOneGroup& g,
                            std::vector<GroupElement> generators,
                            std::string label, double tol = kFormTolerance);

enum class DedupKind { exact, rounded };

/// Deduplicated orbit ball: every stored element has displacement <= radius,
/// the identity is element 0, and word lengths from the breadth-first search
/// are kept alongside. Matrices live in one contiguous arena.
class OrbitBall {
 public:
  DiscreteGroupSpec spec;
  double radius = 0.0;
  DedupKind dedup = DedupKind::exact;
  double tolerance = kFormTolerance;
  bool complete = true;            // false when the budget was exhausted
  bool collision_warning = false;  // digest collision rate above 1e-3
  // Count of products whose corner entry undershot 1 by more than the
  // accumulated float-error allowance: their stored displacement (near 0)
  // is only ulp-grade accurate. Deep float balls collect a little of this
  // dust from words that collapse back toward the identity.
  std::size_t degraded = 0;

  std::size_t size() const { return displacement_.size(); }
  double displacement(std::size_t i) const { return displacement_[i]; }
  std::uint16_t word_length(std::size_t i) const { return word_length_[i]; }
  GroupElement element(std::size_t i) const;

  /// Number of stored points with displacement <= r.
  std::size_t count_within(double r) const;

  // Arena access for serialization.
  bool exact_storage() const { return exact_; }
  const std::vector<long long>& exact_entries() const { return ex_entries_; }
  const std::vector<long long>& exact_dens() const { return ex_dens_; }
  const std::vector<std::complex<double>>& float_entries() const { return fl_entries_; }
  const std::vector<double>& displacements() const { return displacement_; }
  const std::vector<std::uint16_t>& word_lengths() const { return word_length_; }

  void push_exact(const ExactMat& m, double d, std::uint16_t wl);
  void push_float(const FloatMat& m, double d, std::uint16_t wl);
  void set_storage(bool exact, bool complex_entries, int dim) {
    exact_ = exact;
    complex_ = complex_entries;
    dim_ = dim;
  }
  bool complex_storage() const { return complex_; }
  int dim() const { return dim_; }
  ExactMat exact_at(std::size_t i) const;
  FloatMat float_at(std::size_t i) const;

 private:
  bool exact_ = true;
  bool complex_ = false;
  int dim_ = 0;
  std::vector<long long> ex_entries_;
  std::vector<long long> ex_dens_;
  std::vector<std::complex<double>> fl_entries_;
  std::vector<double> displacement_;
  std::vector<std::uint16_t> word_length_;
};

/// Breadth-first enumeration over the Cayley graph, pruned at
/// R + max generator displacement (one overshoot step is explored so the
/// ball itself is closed under geodesic prefixes at desk scale). Result is
/// deterministic for a fixed spec and tolerance. A hit budget yields a
/// partial ball with complete = false.
OrbitBall enumerate_ball(const DiscreteGroupSpec& spec, double R,
                         std::size_t budget = 5'000'000);

struct PingPongSpec {
  DiscreteGroupSpec spec;
  bool certified = false;  // numerical ping-pong table established
  double margin = 0.0;     // angular headroom of the certificate
  int power = 0;
};

/// Subgroup generated by a^n, b^n for hyperbolic a, b with separated axis
/// endpoints (checked via dominant eigenvectors). For the real family the
/// contraction neighborhoods on the boundary sphere are certified
/// numerically; certification failure returns the spec uncertified.
/// Throws std::invalid_argument when an endpoint pair coincides.
PingPongSpec pingpong_powers(const GroupElement& a, const GroupElement& b,
                             int n);

// --- bundled specs ----------------------------------------------------------

/// Adjoint image of the modular group inside the integer-like points of the
/// real n=2 group: exact half-integer matrices, critical exponent 1.
DiscreteGroupSpec modular_group_spec();

/// Free pair of translations of length tlen along perpendicular axes held
/// apart by axis_offset (real n=2 group, float entries). Disjoint axes keep
/// every nontrivial word displacement bounded below.
std::pair<GroupElement, GroupElement> schottky_pair(double tlen,
                                                    double axis_offset);

DiscreteGroupSpec schottky_spec(double tlen);

/// Single translation of length t and its inverse.
DiscreteGroupSpec cyclic_spec(const RankOneGroup& g, double t);

/// Conjugated copy h S h^{-1} of a spec (basepoint move).
DiscreteGroupSpec conjugate_spec(const DiscreteGroupSpec& spec,
                                 const GroupElement& h);

}  // namespace rankone
