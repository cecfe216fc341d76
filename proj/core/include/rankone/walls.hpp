#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankone {

/// Tree-acting group: either the free product of two finite cyclic groups
/// amalgamated over a common cyclic subgroup (orders "a,c,b" with c | a,
/// c | b), or a free group. Words use letters 'a','b',... with uppercase
/// for inverses; in the amalgam case 'a' generates the first factor and 'b'
/// the second.
struct AmalgamSpec {
  enum class Kind { free_product_cyclic, free_group } kind =
      Kind::free_product_cyclic;
  int a = 4, c = 2, b = 6;
  int rank = 2;
  std::vector<std::string> generator_words;  // defaults to the factor letters
};

AmalgamSpec parse_amalgam(const std::string& s);  // "4,2,6" or "free:k"
AmalgamSpec modular_amalgam();                    // 4,2,6

/// Bass-Serre tree distance d(gamma x0, x0), computed by breadth-first
/// search on the coset tree (x0 is the first-factor vertex; for free groups
/// the Cayley tree based at the identity). Throws on malformed words.
long long tree_distance(const AmalgamSpec& spec, const std::string& word);

struct WallCocycleValue {
  std::string gamma;
  long long norm_sq = 0;  // always even: twice the separating-wall count
};

WallCocycleValue wall_cocycle_norm(const AmalgamSpec& spec,
                                   const std::string& word);

/// Finite-support function on oriented edges (pairs of adjacent vertex
/// keys), the difference of half-space indicators between gamma x0 and x0.
using EdgeFunction = std::map<std::pair<std::string, std::string>, int>;

EdgeFunction wall_cocycle(const AmalgamSpec& spec, const std::string& word);

/// Action of gamma on an edge function: (gamma . f)(e) = f(gamma^{-1} e).
EdgeFunction translate_edge_function(const AmalgamSpec& spec,
                                     const std::string& gamma,
                                     const EdgeFunction& f);

long long norm_sq(const EdgeFunction& f);
EdgeFunction add(const EdgeFunction& f, const EdgeFunction& g);

struct ProbeResult {
  enum class Kind { bounded_vertex, bounded_edge, unbounded, inconclusive }
      kind = Kind::inconclusive;
  std::string witness;  // fixed vertex / edge key, or the hyperbolic word
  long long translation_length = 0;
};

/// Shared lazily grown breadth-first tree around the base vertex; batched
/// queries (criterion sweeps) should go through one context instead of the
/// one-shot free functions.
class TreeContext {
 public:
  explicit TreeContext(const AmalgamSpec& spec);
  ~TreeContext();
  TreeContext(TreeContext&&) noexcept;
  TreeContext& operator=(TreeContext&&) noexcept;

  long long distance(const std::string& word, long long cap = 1 << 20);
  EdgeFunction cocycle(const std::string& word);
  EdgeFunction translate(const std::string& gamma, const EdgeFunction& f) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  friend ProbeResult fixed_point_probe(const AmalgamSpec& spec, int cap);
};

/// Searches the ball of radius `cap` for a vertex (or edge midpoint,
/// reported separately) fixed by every generator; otherwise certifies
/// unboundedness with a word whose powers move x0 linearly.
ProbeResult fixed_point_probe(const AmalgamSpec& spec, int cap);

const char* probe_kind_name(ProbeResult::Kind k);

}  // namespace rankone
