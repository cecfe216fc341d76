#include "rankone/walls.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace rankone {

namespace {

// Element of the cyclic amalgam: central part z^e (z the generator of the
// shared subgroup, which is central here since both factors are abelian and
// contain it), followed by alternating non-subgroup coset representatives.
struct AmElem {
  int central = 0;                          // exponent mod c
  std::vector<std::pair<int, int>> syll;    // (side 0/1, exponent)
};

struct Amalgam {
  int a, c, b;
  int ord(int side) const { return side == 0 ? a : b; }
  int sub(int side) const { return ord(side) / c; }  // index of C in factor

  void push_power(AmElem& e, int side, long long m) const {
    if (!e.syll.empty() && e.syll.back().first == side) {
      m += e.syll.back().second;
      e.syll.pop_back();
    }
    long long o = ord(side);
    m %= o;
    if (m < 0) m += o;
    int s = sub(side);
    int j = static_cast<int>(m % s);
    int z = static_cast<int>(m / s);
    e.central = (e.central + z) % c;
    if (j != 0) e.syll.emplace_back(side, j);
  }

  AmElem mult(const AmElem& u, const AmElem& v) const {
    AmElem r = u;
    r.central = (r.central + v.central) % c;
    for (auto [side, j] : v.syll) push_power(r, side, j);
    return r;
  }

  AmElem from_word(const std::string& w) const {
    AmElem r;
    for (char ch : w) {
      switch (ch) {
        case 'a': push_power(r, 0, 1); break;
        case 'A': push_power(r, 0, -1); break;
        case 'b': push_power(r, 1, 1); break;
        case 'B': push_power(r, 1, -1); break;
        case ' ': break;
        default:
          throw std::invalid_argument("amalgam word letter must be a/A/b/B");
      }
    }
    return r;
  }
};

std::string reduce_free(const std::string& w, int rank) {
  std::string r;
  for (char ch : w) {
    if (ch == ' ') continue;
    char lo = static_cast<char>(std::tolower(ch));
    if (lo < 'a' || lo >= 'a' + rank)
      throw std::invalid_argument("free-group letter out of range");
    if (!r.empty() && r.back() != ch &&
        std::tolower(r.back()) == std::tolower(ch))
      r.pop_back();
    else
      r.push_back(ch);
  }
  return r;
}

// Vertex keys. Amalgam: 'A' or 'B' plus the coset representative written as
// alternating syllables; free group: the reduced word.
std::string amalgam_vertex_key(char type,
                               const std::vector<std::pair<int, int>>& syll) {
  std::string k(1, type);
  k += '|';
  for (auto [side, j] : syll) {
    k += side == 0 ? 'a' : 'b';
    k += std::to_string(j);
    k += '.';
  }
  return k;
}

struct TreeModel {
  AmalgamSpec spec;
  Amalgam am;

  explicit TreeModel(const AmalgamSpec& s) : spec(s), am{s.a, s.c, s.b} {
    if (s.kind == AmalgamSpec::Kind::free_product_cyclic) {
      if (s.c < 1 || s.a < 2 || s.b < 2 || s.a % s.c || s.b % s.c)
        throw std::invalid_argument("amalgam orders need c | a and c | b");
    } else if (s.rank < 1 || s.rank > 26) {
      throw std::invalid_argument("free rank out of range");
    }
  }

  bool is_free() const { return spec.kind == AmalgamSpec::Kind::free_group; }

  std::string base_vertex() const {
    return is_free() ? std::string("F|") : amalgam_vertex_key('A', {});
  }

  // Canonical key of the coset g * (A or B); the central part is absorbed
  // and a trailing syllable of the matching side is stripped.
  std::string vertex_key(const AmElem& g, char type) const {
    auto syll = g.syll;
    if (!syll.empty() && ((type == 'A' && syll.back().first == 0) ||
                          (type == 'B' && syll.back().first == 1)))
      syll.pop_back();
    return amalgam_vertex_key(type, syll);
  }

  AmElem elem_of_key(const std::string& key) const {
    AmElem g;
    std::size_t i = 2;
    while (i < key.size()) {
      int side = key[i] == 'a' ? 0 : 1;
      std::size_t dot = key.find('.', i);
      int j = std::stoi(key.substr(i + 1, dot - i - 1));
      g.syll.emplace_back(side, j);
      i = dot + 1;
    }
    return g;
  }

  std::vector<std::string> neighbors(const std::string& key) const {
    std::vector<std::string> out;
    if (is_free()) {
      std::string w = key.substr(2);
      for (int k = 0; k < spec.rank; ++k)
        for (char ch : {static_cast<char>('a' + k), static_cast<char>('A' + k)})
          out.push_back("F|" + reduce_free(w + ch, spec.rank));
      return out;
    }
    AmElem g = elem_of_key(key);
    int side = key[0] == 'A' ? 0 : 1;
    char other = key[0] == 'A' ? 'B' : 'A';
    for (int j = 0; j < am.sub(side); ++j) {
      AmElem h = g;
      if (j) am.push_power(h, side, j);
      out.push_back(vertex_key(h, other));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string act_on_vertex(const std::string& gamma_word,
                            const std::string& key) const {
    if (is_free())
      return "F|" + reduce_free(gamma_word + key.substr(2), spec.rank);
    AmElem g = am.mult(am.from_word(gamma_word), elem_of_key(key));
    return vertex_key(g, key[0]);
  }

  std::string vertex_of_word(const std::string& word) const {
    if (is_free()) return "F|" + reduce_free(word, spec.rank);
    return vertex_key(am.from_word(word), 'A');
  }
};

}  // namespace

struct TreeContext::Impl {
  TreeModel tm;
  // dist-from-base and BFS parent per discovered vertex.
  std::unordered_map<std::string, std::pair<long long, std::string>> info;
  std::deque<std::string> queue;

  explicit Impl(const AmalgamSpec& s) : tm(s) {
    std::string base = tm.base_vertex();
    info[base] = {0, ""};
    queue.push_back(base);
  }

  // Expands the shared ball until the target is known or depth exceeds cap.
  bool grow_until(const std::string& target, long long cap) {
    if (info.count(target)) return true;
    while (!queue.empty()) {
      const std::string v = queue.front();
      long long d = info[v].first;
      if (d >= cap) break;
      queue.pop_front();
      for (const auto& w : tm.neighbors(v)) {
        if (info.count(w)) continue;
        info[w] = {d + 1, v};
        queue.push_back(w);
      }
      if (info.count(target)) return true;
    }
    return info.count(target) > 0;
  }

  void grow_to_depth(long long cap) {
    while (!queue.empty()) {
      const std::string v = queue.front();
      long long d = info[v].first;
      if (d >= cap) break;
      queue.pop_front();
      for (const auto& w : tm.neighbors(v)) {
        if (info.count(w)) continue;
        info[w] = {d + 1, v};
        queue.push_back(w);
      }
    }
  }
};

TreeContext::TreeContext(const AmalgamSpec& spec)
    : impl_(std::make_unique<Impl>(spec)) {}
TreeContext::~TreeContext() = default;
TreeContext::TreeContext(TreeContext&&) noexcept = default;
TreeContext& TreeContext::operator=(TreeContext&&) noexcept = default;

long long TreeContext::distance(const std::string& word, long long cap) {
  std::string target = impl_->tm.vertex_of_word(word);
  if (!impl_->grow_until(target, cap))
    throw std::runtime_error("tree distance exceeded the search cap");
  return impl_->info[target].first;
}

EdgeFunction TreeContext::cocycle(const std::string& word) {
  std::string target = impl_->tm.vertex_of_word(word);
  if (!impl_->grow_until(target, 1 << 20))
    throw std::runtime_error("tree distance exceeded the search cap");
  EdgeFunction f;
  std::string v = target;
  const std::string base = impl_->tm.base_vertex();
  while (v != base) {
    std::string p = impl_->info[v].second;
    f[{p, v}] += 1;  // half space gained by gamma x0
    f[{v, p}] -= 1;  // the reverse orientation is lost
    v = p;
  }
  return f;
}

EdgeFunction TreeContext::translate(const std::string& gamma,
                                    const EdgeFunction& f) const {
  EdgeFunction out;
  for (const auto& [edge, val] : f) {
    std::string u = impl_->tm.act_on_vertex(gamma, edge.first);
    std::string v = impl_->tm.act_on_vertex(gamma, edge.second);
    out[{u, v}] += val;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

AmalgamSpec parse_amalgam(const std::string& s) {
  AmalgamSpec spec;
  if (s.rfind("free:", 0) == 0) {
    spec.kind = AmalgamSpec::Kind::free_group;
    spec.rank = std::stoi(s.substr(5));
    for (int k = 0; k < spec.rank && k < 26; ++k)
      spec.generator_words.push_back(std::string(1, static_cast<char>('a' + k)));
    return spec;
  }
  auto c1 = s.find(',');
  auto c2 = s.find(',', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("amalgam spec wants \"a,c,b\" or \"free:k\"");
  spec.kind = AmalgamSpec::Kind::free_product_cyclic;
  spec.a = std::stoi(s.substr(0, c1));
  spec.c = std::stoi(s.substr(c1 + 1, c2 - c1 - 1));
  spec.b = std::stoi(s.substr(c2 + 1));
  spec.generator_words = {"a", "b"};
  return spec;
}

AmalgamSpec modular_amalgam() { return parse_amalgam("4,2,6"); }

long long tree_distance(const AmalgamSpec& spec, const std::string& word) {
  TreeContext ctx(spec);
  return ctx.distance(word);
}

WallCocycleValue wall_cocycle_norm(const AmalgamSpec& spec,
                                   const std::string& word) {
  WallCocycleValue v;
  v.gamma = word;
  v.norm_sq = 2 * tree_distance(spec, word);
  return v;
}

EdgeFunction wall_cocycle(const AmalgamSpec& spec, const std::string& word) {
  TreeContext ctx(spec);
  return ctx.cocycle(word);
}

EdgeFunction translate_edge_function(const AmalgamSpec& spec,
                                     const std::string& gamma,
                                     const EdgeFunction& f) {
  TreeContext ctx(spec);
  return ctx.translate(gamma, f);
}

long long norm_sq(const EdgeFunction& f) {
  long long acc = 0;
  for (const auto& [edge, val] : f) acc += static_cast<long long>(val) * val;
  return acc;
}

EdgeFunction add(const EdgeFunction& f, const EdgeFunction& g) {
  EdgeFunction out = f;
  for (const auto& [edge, val] : g) out[edge] += val;
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

ProbeResult fixed_point_probe(const AmalgamSpec& spec, int cap) {
  if (cap < 4) throw std::invalid_argument("fixed_point_probe needs cap >= 4");
  TreeContext ctx(spec);
  auto& impl = *ctx.impl_;
  const auto& gens = spec.generator_words;
  if (gens.empty()) throw std::invalid_argument("spec has no generators");

  impl.grow_to_depth(cap);
  std::vector<std::string> ball;
  for (const auto& [v, di] : impl.info) ball.push_back(v);
  std::sort(ball.begin(), ball.end());

  ProbeResult res;
  for (const auto& v : ball) {
    bool fixed = true;
    for (const auto& g : gens)
      if (impl.tm.act_on_vertex(g, v) != v) {
        fixed = false;
        break;
      }
    if (fixed) {
      res.kind = ProbeResult::Kind::bounded_vertex;
      res.witness = v;
      return res;
    }
  }
  // Edge-midpoint case: an unordered pair of adjacent vertices preserved by
  // every generator without a fixed endpoint.
  for (const auto& v : ball)
    for (const auto& w : impl.tm.neighbors(v)) {
      if (w < v) continue;
      bool fixed = true;
      for (const auto& g : gens) {
        std::string gv = impl.tm.act_on_vertex(g, v);
        std::string gw = impl.tm.act_on_vertex(g, w);
        if (!((gv == v && gw == w) || (gv == w && gw == v))) {
          fixed = false;
          break;
        }
      }
      if (fixed) {
        res.kind = ProbeResult::Kind::bounded_edge;
        res.witness = v + " -- " + w;
        return res;
      }
    }

  // Hyperbolic witness: powers of a short word moving the base linearly.
  std::vector<std::string> candidates = gens;
  for (const auto& g : gens)
    for (const auto& h : gens)
      if (g != h) candidates.push_back(g + h);
  for (const auto& w : candidates) {
    long long d1;
    try {
      d1 = ctx.distance(w, cap);
    } catch (const std::runtime_error&) {
      continue;
    }
    if (d1 == 0) continue;
    bool linear = true;
    std::string pw = w;
    for (int k = 2; k <= 4 && linear; ++k) {
      pw += w;
      try {
        linear = ctx.distance(pw, 4 * cap) == k * d1;
      } catch (const std::runtime_error&) {
        linear = false;
      }
    }
    if (linear) {
      res.kind = ProbeResult::Kind::unbounded;
      res.witness = w;
      res.translation_length = d1;
      return res;
    }
  }
  res.kind = ProbeResult::Kind::inconclusive;
  return res;
}

const char* probe_kind_name(ProbeResult::Kind k) {
  switch (k) {
    case ProbeResult::Kind::bounded_vertex:
      return "bounded_orbit_vertex";
    case ProbeResult::Kind::bounded_edge:
      return "bounded_orbit_edge";
    case ProbeResult::Kind::unbounded:
      return "unbounded";
    default:
      return "inconclusive";
  }
}

}  // namespace rankone
