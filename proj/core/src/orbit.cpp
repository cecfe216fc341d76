#include "rankone/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace rankone {

namespace {

double corner_mod(const FloatMat& m) {
  return std::abs(m.a[static_cast<std::size_t>(m.dim) * m.dim - 1]);
}

// Entries of a form-preserving matrix are bounded by the corner modulus, so
// the dedup tolerance scales with it; an absolute 1e-9 grid would stop
// resolving (and stop deduplicating) once displacements pass ~20.
double dedup_scale(const FloatMat& m) {
  return std::exp2(std::floor(std::log2(std::max(1.0, corner_mod(m)))));
}

bool float_close(const FloatMat& x, const FloatMat& y, double tol) {
  if (x.dim != y.dim) return false;
  double s = tol * std::max({1.0, corner_mod(x), corner_mod(y)});
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (std::abs(x.a[i] - y.a[i]) > s) return false;
  return true;
}

bool element_close(const GroupElement& x, const GroupElement& y, double tol) {
  if (x.kind == EntryKind::exact_rational && y.kind == EntryKind::exact_rational)
    return x.ex == y.ex;
  FloatMat xf = x.kind == EntryKind::floating ? x.fl : to_float(x.ex);
  FloatMat yf = y.kind == EntryKind::floating ? y.fl : to_float(y.ex);
  return float_close(xf, yf, tol);
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  return h * 1099511628211ULL;
}

std::uint64_t digest_exact(const ExactMat& m) {
  std::uint64_t h = 14695981039346656037ULL;
  h = fnv_mix(h, static_cast<std::uint64_t>(m.den));
  for (auto v : m.re) h = fnv_mix(h, static_cast<std::uint64_t>(v));
  for (auto v : m.im) h = fnv_mix(h, static_cast<std::uint64_t>(v));
  return h;
}

std::uint64_t digest_float(const FloatMat& m, double tol) {
  const double grid = tol * dedup_scale(m);
  std::uint64_t h = 14695981039346656037ULL;
  for (auto v : m.a) {
    h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(v.real() / grid)));
    h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(v.imag() / grid)));
  }
  return h;
}

}  // namespace

DiscreteGroupSpec make_spec(const RankOneGroup& g,
                            std::vector<GroupElement> generators,
                            std::string label, double tol) {
  DiscreteGroupSpec spec;
  spec.group = g;
  spec.label = std::move(label);
  for (auto& gen : generators) {
    if (!(gen.group == g)) throw std::invalid_argument("generator group mismatch");
    if (!is_isometry(gen, tol))
      throw std::invalid_argument("generator does not preserve the form");
  }
  auto push_unique = [&](const GroupElement& e) {
    for (const auto& have : spec.generators)
      if (element_close(have, e, tol)) return;
    spec.generators.push_back(e);
  };
  for (const auto& gen : generators) {
    push_unique(gen);
    push_unique(inverse(gen));
  }
  return spec;
}

ExactMat OrbitBall::exact_at(std::size_t i) const {
  const std::size_t nn = static_cast<std::size_t>(dim_) * dim_;
  const std::size_t stride = complex_ ? 2 * nn : nn;
  ExactMat m;
  m.dim = dim_;
  m.den = ex_dens_[i];
  m.re.assign(ex_entries_.begin() + i * stride,
              ex_entries_.begin() + i * stride + nn);
  if (complex_) {
    m.im.assign(ex_entries_.begin() + i * stride + nn,
                ex_entries_.begin() + (i + 1) * stride);
    normalize(m);
  }
  return m;
}

FloatMat OrbitBall::float_at(std::size_t i) const {
  const std::size_t nn = static_cast<std::size_t>(dim_) * dim_;
  FloatMat m;
  m.dim = dim_;
  m.a.assign(fl_entries_.begin() + i * nn, fl_entries_.begin() + (i + 1) * nn);
  return m;
}

GroupElement OrbitBall::element(std::size_t i) const {
  if (exact_) return element_from_exact(spec.group, exact_at(i));
  return element_from_float(spec.group, float_at(i));
}

std::size_t OrbitBall::count_within(double r) const {
  std::size_t c = 0;
  for (double d : displacement_)
    if (d <= r) ++c;
  return c;
}

void OrbitBall::push_exact(const ExactMat& m, double d, std::uint16_t wl) {
  const std::size_t nn = static_cast<std::size_t>(dim_) * dim_;
  ex_entries_.insert(ex_entries_.end(), m.re.begin(), m.re.end());
  if (complex_) {
    if (m.is_real())
      ex_entries_.resize(ex_entries_.size() + nn, 0);
    else
      ex_entries_.insert(ex_entries_.end(), m.im.begin(), m.im.end());
  }
  ex_dens_.push_back(m.den);
  displacement_.push_back(d);
  word_length_.push_back(wl);
}

void OrbitBall::push_float(const FloatMat& m, double d, std::uint16_t wl) {
  fl_entries_.insert(fl_entries_.end(), m.a.begin(), m.a.end());
  displacement_.push_back(d);
  word_length_.push_back(wl);
}

namespace {

// Digest -> chain of arena indices; full comparison on digest hits.
struct DedupIndex {
  std::unordered_map<std::uint64_t, std::uint32_t> head;
  std::vector<std::uint32_t> next;  // per element, UINT32_MAX terminates
  std::size_t collisions = 0;
  std::size_t lookups = 0;
};

}  // namespace

namespace {

// Reduced-word enumeration for certified-free specs: every freely reduced
// word is a distinct element, so the ball is the tree of non-backtracking
// generator strings.
OrbitBall enumerate_free_ball(const DiscreteGroupSpec& spec, double R,
                              std::size_t budget) {
  const int dim = spec.group.dim();
  const double tol = kFormTolerance;
  double slack = 0.0;
  std::vector<FloatMat> gens;
  for (const auto& g : spec.generators) {
    slack = std::max(slack, cartan_radius(g));
    gens.push_back(g.kind == EntryKind::floating ? g.fl : to_float(g.ex));
  }
  const double limit = R + slack;
  // Pair each generator with its inverse to forbid backtracking.
  std::vector<int> inv_of(gens.size(), -1);
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    GroupElement gi = inverse(spec.generators[i]);
    for (std::size_t j = 0; j < spec.generators.size(); ++j)
      if (element_close(gi, spec.generators[j], tol)) {
        inv_of[i] = static_cast<int>(j);
        break;
      }
  }

  OrbitBall stage;
  stage.spec = spec;
  stage.set_storage(false, spec.group.field == Field::complex_field, dim);
  stage.push_float(float_identity(dim), 0.0, 0);
  std::vector<int> last_gen{-1};
  bool complete = true;

  std::vector<std::uint32_t> frontier{0};
  std::vector<std::uint32_t> next_frontier;
  while (!frontier.empty() && complete) {
    next_frontier.clear();
    for (std::uint32_t idx : frontier) {
      if (!complete) break;
      FloatMat base = stage.float_at(idx);
      std::uint16_t wl = stage.word_length(idx);
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        if (last_gen[idx] >= 0 && inv_of[gi] == last_gen[idx]) continue;
        FloatMat h = multiply(base, gens[gi]);
        double corner = std::abs(h.a[static_cast<std::size_t>(dim) * dim - 1]);
        double d = corner >= 1.0 ? std::acosh(corner) : 0.0;
        if (d > limit) continue;
        if (stage.size() >= budget) {
          complete = false;
          break;
        }
        stage.push_float(h, d, static_cast<std::uint16_t>(wl + 1));
        last_gen.push_back(static_cast<int>(gi));
        next_frontier.push_back(static_cast<std::uint32_t>(stage.size() - 1));
      }
    }
    frontier.swap(next_frontier);
  }

  OrbitBall ball;
  ball.spec = spec;
  ball.radius = R;
  ball.dedup = DedupKind::rounded;
  ball.tolerance = tol;
  ball.complete = complete;
  ball.set_storage(false, spec.group.field == Field::complex_field, dim);
  for (std::size_t i = 0; i < stage.size(); ++i)
    if (stage.displacement(i) <= R)
      ball.push_float(stage.float_at(i), stage.displacement(i),
                      stage.word_length(i));
  return ball;
}

}  // namespace

OrbitBall enumerate_ball(const DiscreteGroupSpec& spec, double R,
                         std::size_t budget) {
  if (R < 0) throw std::invalid_argument("enumerate_ball needs R >= 0");
  if (spec.generators.empty())
    throw std::invalid_argument("spec has no generators");
  if (spec.certified_free) return enumerate_free_ball(spec, R, budget);
  const bool exact = std::all_of(
      spec.generators.begin(), spec.generators.end(),
      [](const GroupElement& e) { return e.kind == EntryKind::exact_rational; });
  const int dim = spec.group.dim();
  const double tol = kFormTolerance;

  double slack = 0.0;
  for (const auto& g : spec.generators)
    slack = std::max(slack, cartan_radius(g));
  const double limit = R + slack;

  const bool complex_entries = spec.group.field == Field::complex_field;
  OrbitBall stage;
  stage.spec = spec;
  stage.set_storage(exact, complex_entries, dim);

  std::vector<ExactMat> gens_ex;
  std::vector<FloatMat> gens_fl;
  for (const auto& g : spec.generators) {
    if (exact)
      gens_ex.push_back(g.ex);
    else
      gens_fl.push_back(g.kind == EntryKind::floating ? g.fl : to_float(g.ex));
  }

  DedupIndex index;
  index.head.reserve(1 << 20);

  auto matrix_at_exact = [&](std::size_t i) { return stage.exact_at(i); };
  auto matrix_at_float = [&](std::size_t i) { return stage.float_at(i); };

  // insert returns the arena index, or SIZE_MAX when already present.
  auto insert_exact = [&](const ExactMat& m, double d, std::uint16_t wl) -> std::size_t {
    std::uint64_t dg = digest_exact(m);
    ++index.lookups;
    auto it = index.head.find(dg);
    if (it != index.head.end()) {
      for (std::uint32_t i = it->second; i != UINT32_MAX; i = index.next[i]) {
        if (matrix_at_exact(i) == m) return SIZE_MAX;
        ++index.collisions;
      }
    }
    std::size_t id = stage.size();
    stage.push_exact(m, d, wl);
    index.next.push_back(it == index.head.end() ? UINT32_MAX : it->second);
    index.head[dg] = static_cast<std::uint32_t>(id);
    return id;
  };
  auto insert_float = [&](const FloatMat& m, double d, std::uint16_t wl) -> std::size_t {
    std::uint64_t dg = digest_float(m, tol);
    ++index.lookups;
    auto it = index.head.find(dg);
    if (it != index.head.end()) {
      for (std::uint32_t i = it->second; i != UINT32_MAX; i = index.next[i]) {
        if (float_close(matrix_at_float(i), m, tol)) return SIZE_MAX;
        ++index.collisions;
      }
    }
    std::size_t id = stage.size();
    stage.push_float(m, d, wl);
    index.next.push_back(it == index.head.end() ? UINT32_MAX : it->second);
    index.head[dg] = static_cast<std::uint32_t>(id);
    return id;
  };

  bool complete = true;
  std::size_t degraded = 0;
  if (exact)
    insert_exact(exact_identity(dim), 0.0, 0);
  else
    insert_float(float_identity(dim), 0.0, 0);

  // Products of validated isometries are isometries; a corner below 1 is
  // float noise from large intermediates and gets clamped rather than
  // rejected, with an allowance proportional to the product scale. Elements
  // beyond the allowance are stored but never expanded, so numerically lost
  // matrices cannot breed.
  bool last_degraded = false;
  auto clamped_radius = [&degraded, &last_degraded, tol](double corner,
                                                         double scale) {
    last_degraded = false;
    if (corner < 1.0) {
      if (corner < 1.0 - std::max(tol, 1e-13 * scale)) {
        ++degraded;
        last_degraded = true;
      }
      return 0.0;
    }
    return std::acosh(corner);
  };

  std::vector<std::uint32_t> frontier{0};
  std::vector<std::uint32_t> next_frontier;
  while (!frontier.empty() && complete) {
    next_frontier.clear();
    for (std::uint32_t idx : frontier) {
      if (!complete) break;
      const double base_cosh = std::cosh(stage.displacement(idx));
      if (exact) {
        ExactMat base = matrix_at_exact(idx);
        std::uint16_t wl = stage.word_length(idx);
        for (std::size_t gi = 0; gi < gens_ex.size(); ++gi) {
          ExactMat h = multiply(base, gens_ex[gi]);
          GroupElement he = element_from_exact(spec.group, h);
          double d = clamped_radius(cosh_cartan(he),
                                    base_cosh * std::cosh(cartan_radius(spec.generators[gi])));
          if (d > limit) continue;
          if (stage.size() >= budget) {
            complete = false;
            break;
          }
          std::size_t id = insert_exact(he.ex, d, static_cast<std::uint16_t>(wl + 1));
          if (id != SIZE_MAX && !last_degraded)
            next_frontier.push_back(static_cast<std::uint32_t>(id));
        }
      } else {
        FloatMat base = matrix_at_float(idx);
        std::uint16_t wl = stage.word_length(idx);
        for (std::size_t gi = 0; gi < gens_fl.size(); ++gi) {
          FloatMat h = multiply(base, gens_fl[gi]);
          GroupElement he = element_from_float(spec.group, h);
          double d = clamped_radius(cosh_cartan(he),
                                    base_cosh * std::cosh(cartan_radius(spec.generators[gi])));
          if (d > limit) continue;
          if (stage.size() >= budget) {
            complete = false;
            break;
          }
          std::size_t id = insert_float(he.fl, d, static_cast<std::uint16_t>(wl + 1));
          if (id != SIZE_MAX && !last_degraded)
            next_frontier.push_back(static_cast<std::uint32_t>(id));
        }
      }
    }
    frontier.swap(next_frontier);
  }

  // Compact to displacement <= R.
  OrbitBall ball;
  ball.spec = spec;
  ball.radius = R;
  ball.dedup = exact ? DedupKind::exact : DedupKind::rounded;
  ball.tolerance = tol;
  ball.complete = complete;
  ball.collision_warning =
      index.lookups > 0 &&
      static_cast<double>(index.collisions) > 1e-3 * static_cast<double>(index.lookups);
  ball.degraded = degraded;
  ball.set_storage(exact, complex_entries, dim);
  for (std::size_t i = 0; i < stage.size(); ++i) {
    if (stage.displacement(i) > R) continue;
    if (exact)
      ball.push_exact(matrix_at_exact(i), stage.displacement(i), stage.word_length(i));
    else
      ball.push_float(matrix_at_float(i), stage.displacement(i), stage.word_length(i));
  }
  return ball;
}

// --- ping-pong ---------------------------------------------------------------

namespace {

// Attracting null direction of a hyperbolic element: power iteration on the
// positive light cone, returned as the unit vector of boundary coordinates.
std::vector<double> attracting_direction(const GroupElement& g) {
  const int d = g.dim();
  FloatMat m = g.kind == EntryKind::floating ? g.fl : to_float(g.ex);
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[d - 1] = 1.0;
  v[0] = 0.37;  // anything off the repelling axis
  for (int it = 0; it < 400; ++it) {
    std::vector<double> w(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        w[i] += m.a[static_cast<std::size_t>(i) * d + j].real() * v[j];
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : w) x /= norm;
    if (w[d - 1] < 0)
      for (auto& x : w) x = -x;
    v = std::move(w);
  }
  std::vector<double> xi(v.begin(), v.end() - 1);
  double norm = 0.0;
  for (double x : xi) norm += x * x;
  norm = std::sqrt(norm);
  for (auto& x : xi) x /= norm;
  return xi;
}

double angle_between(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

// Boundary action: xi |-> projective image of the null vector (xi, 1).
std::vector<double> boundary_map(const FloatMat& m, const std::vector<double>& xi) {
  const int d = m.dim;
  std::vector<double> w(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d - 1; ++j)
      w[i] += m.a[static_cast<std::size_t>(i) * d + j].real() * xi[j];
    w[i] += m.a[static_cast<std::size_t>(i) * d + (d - 1)].real();
  }
  std::vector<double> out(w.begin(), w.end() - 1);
  for (auto& x : out) x /= w[d - 1];
  double norm = 0.0;
  for (double x : out) norm += x * x;
  norm = std::sqrt(norm);
  for (auto& x : out) x /= norm;
  return out;
}

std::vector<std::vector<double>> boundary_grid(int n_boundary_dim, int count) {
  std::vector<std::vector<double>> pts;
  if (n_boundary_dim == 2) {
    for (int k = 0; k < count; ++k) {
      double th = 2.0 * M_PI * k / count;
      pts.push_back({std::cos(th), std::sin(th)});
    }
  } else {
    // Fibonacci sphere / hypersphere sampling via a Halton-like spiral; for
    // dims above 3 fall back to a seeded uniform sample.
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int k = 0; k < count; ++k) {
      std::vector<double> v(static_cast<std::size_t>(n_boundary_dim));
      double norm = 0.0;
      for (auto& x : v) {
        x = gauss(rng);
        norm += x * x;
      }
      norm = std::sqrt(norm);
      for (auto& x : v) x /= norm;
      pts.push_back(std::move(v));
    }
  }
  return pts;
}

}  // namespace

PingPongSpec pingpong_powers(const GroupElement& a, const GroupElement& b, int n) {
  if (n < 1) throw std::invalid_argument("pingpong_powers needs n >= 1");
  if (cartan_radius(a) <= 0 || cartan_radius(b) <= 0)
    throw std::invalid_argument("generators must be hyperbolic");
  const RankOneGroup& g = a.group;

  GroupElement an = identity_element(g, a.kind);
  GroupElement bn = identity_element(g, b.kind);
  for (int k = 0; k < n; ++k) {
    an = multiply(an, a);
    bn = multiply(bn, b);
  }
  PingPongSpec out;
  out.power = n;
  out.spec = make_spec(g, {an, bn}, "pingpong_n" + std::to_string(n));

  if (g.field != Field::real) return out;  // endpoint separation and the
                                           // table certificate run on the
                                           // real boundary sphere only

  std::vector<std::vector<double>> fixed = {
      attracting_direction(a), attracting_direction(inverse(a)),
      attracting_direction(b), attracting_direction(inverse(b))};
  double min_sep = M_PI;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      min_sep = std::min(min_sep, angle_between(fixed[i], fixed[j]));
  if (min_sep < 1e-3)
    throw std::invalid_argument("axis endpoints coincide");

  const int bdim = g.n;
  const int grid_n = bdim == 2 ? 8192 : 20000;
  auto grid = boundary_grid(bdim, grid_n);
  const double grid_res = bdim == 2 ? 2.0 * M_PI / grid_n : 0.05;

  auto float_of = [](const GroupElement& e) {
    return e.kind == EntryKind::floating ? e.fl : to_float(e.ex);
  };
  GroupElement an_inv = inverse(an);
  GroupElement bn_inv = inverse(bn);
  std::vector<FloatMat> maps = {float_of(an), float_of(an_inv), float_of(bn),
                                float_of(bn_inv)};
  // map k sends the complement of U_{source(k)} into U_{target(k)}:
  // a^n: source a-, target a+; a^-n: source a+, target a-; same for b.
  const int target[4] = {0, 1, 2, 3};
  const int source[4] = {1, 0, 3, 2};

  for (double r : {0.08, 0.12, 0.2, 0.3, 0.45, 0.6}) {
    if (min_sep <= 2.0 * r + 4.0 * grid_res) continue;
    double worst = M_PI;
    bool ok = true;
    for (int k = 0; k < 4 && ok; ++k) {
      for (const auto& xi : grid) {
        if (angle_between(xi, fixed[source[k]]) <= r) continue;
        auto img = boundary_map(maps[k], xi);
        double ang = angle_between(img, fixed[target[k]]);
        worst = std::min(worst, r - ang);
        if (ang >= r) {
          ok = false;
          break;
        }
      }
    }
    if (ok && worst > 10.0 * grid_res) {
      out.certified = true;
      out.margin = worst;
      out.spec.certified_free = true;
      break;
    }
  }
  return out;
}

// --- bundled specs -----------------------------------------------------------

DiscreteGroupSpec modular_group_spec() {
  RankOneGroup g = make_group(Field::real, 2);
  // Adjoint image of [[a,b],[c,d]] on the coordinates (q, p-r, p+r) of a
  // binary quadratic form p x^2 + q xy + r y^2.
  auto adjoint = [&](long long a, long long b, long long c, long long d) {
    std::vector<Rat> m = {
        Rat(a * d + b * c), Rat(a * c - b * d), Rat(a * c + b * d),
        Rat(a * b - c * d), Rat(a * a - b * b - c * c + d * d, 2),
        Rat(a * a + b * b - c * c - d * d, 2),
        Rat(a * b + c * d), Rat(a * a - b * b + c * c - d * d, 2),
        Rat(a * a + b * b + c * c + d * d, 2)};
    return element_from_exact(g, exact_from_rationals(3, m));
  };
  GroupElement S = adjoint(0, -1, 1, 0);
  GroupElement T = adjoint(1, 1, 0, 1);
  return make_spec(g, {S, T}, "modular");
}

std::pair<GroupElement, GroupElement> schottky_pair(double tlen,
                                                    double axis_offset) {
  RankOneGroup g = make_group(Field::real, 2);
  GroupElement a = cartan_element(g, tlen);
  FloatMat rot = float_identity(3);
  rot.a[0] = 0.0;
  rot.a[1] = -1.0;
  rot.a[3] = 1.0;
  rot.a[4] = 0.0;
  GroupElement k = element_from_float(g, std::move(rot));
  // The second axis is the image of the first under a perpendicular boost:
  // ultraparallel to it at distance axis_offset. Axes through a common
  // point are avoided on purpose: commutators would collapse toward the
  // identity (angle-defect rotations), which spoils ping-pong margins and
  // forces catastrophic cancellation in deep orbit products.
  GroupElement h = multiply(multiply(k, cartan_element(g, axis_offset)),
                            inverse(k));
  GroupElement b = multiply(multiply(h, a), inverse(h));
  return {a, b};
}

DiscreteGroupSpec schottky_spec(double tlen) {
  auto [a, b] = schottky_pair(tlen, 1.0);
  PingPongSpec pp = pingpong_powers(a, b, 1);
  pp.spec.label = "schottky";
  return pp.spec;
}

DiscreteGroupSpec cyclic_spec(const RankOneGroup& g, double t) {
  return make_spec(g, {cartan_element(g, t)}, "cyclic");
}

DiscreteGroupSpec conjugate_spec(const DiscreteGroupSpec& spec,
                                 const GroupElement& h) {
  std::vector<GroupElement> gens;
  GroupElement hinv = inverse(h);
  for (const auto& g : spec.generators)
    gens.push_back(multiply(multiply(h, g), hinv));
  return make_spec(spec.group, std::move(gens), spec.label + "_conj");
}

}  // namespace rankone
