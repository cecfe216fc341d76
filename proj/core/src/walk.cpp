#include "rankone/walk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace rankone {

AbstractWalkSpec parse_abstract_walk(const std::string& s) {
  AbstractWalkSpec w;
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  int rank = 0;
  if (colon != std::string::npos)
    rank = std::stoi(s.substr(colon + 1));
  if (head == "free") {
    w.kind = AbstractWalkSpec::Kind::free_group;
    w.rank = rank > 0 ? rank : 2;
    return w;
  }
  if (head == "z" || head == "Z") {
    w.kind = AbstractWalkSpec::Kind::free_abelian;
    w.rank = rank > 0 ? rank : 1;
    return w;
  }
  if (head == "z2" || head == "Z2") {
    w.kind = AbstractWalkSpec::Kind::free_abelian;
    w.rank = 2;
    return w;
  }
  throw std::invalid_argument("unknown abstract walk spec: " + s);
}

namespace {

// log p = A (2m) + B log(2m) + C, least squares; returns exp(A).
double fit_radius(const std::vector<std::pair<int, double>>& samples) {
  double M[3][3] = {{0}};
  double rhs[3] = {0};
  for (auto [n, p] : samples) {
    double v[3] = {static_cast<double>(n), std::log(static_cast<double>(n)), 1.0};
    double y = std::log(p);
    for (int i = 0; i < 3; ++i) {
      rhs[i] += v[i] * y;
      for (int j = 0; j < 3; ++j) M[i][j] += v[i] * v[j];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int perm[3] = {0, 1, 2};
  for (int k = 0; k < 3; ++k) {
    int piv = k;
    for (int i = k + 1; i < 3; ++i)
      if (std::abs(M[i][k]) > std::abs(M[piv][k])) piv = i;
    std::swap(M[k], M[piv]);
    std::swap(rhs[k], rhs[piv]);
    std::swap(perm[k], perm[piv]);
    for (int i = k + 1; i < 3; ++i) {
      double f = M[i][k] / M[k][k];
      for (int j = k; j < 3; ++j) M[i][j] -= f * M[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  double sol[3];
  for (int i = 2; i >= 0; --i) {
    double acc = rhs[i];
    for (int j = i + 1; j < 3; ++j) acc -= M[i][j] * sol[j];
    sol[i] = acc / M[i][i];
  }
  return std::exp(sol[0]);
}

WalkEstimate estimate_from_returns(const std::vector<double>& p_even, int steps) {
  // p_even[k] = p_{2k}(e), k = 1..steps/2.
  std::vector<std::pair<int, double>> usable;
  for (std::size_t k = 1; k < p_even.size(); ++k)
    if (p_even[k] > 0) usable.emplace_back(static_cast<int>(2 * k), p_even[k]);
  WalkEstimate est;
  est.steps = steps;
  if (usable.size() < 8) {
    est.low_confidence = true;
    est.note = "too few return probabilities for stabilization";
    if (!usable.empty()) {
      auto [n, p] = usable.back();
      est.radius = std::min(1.0, std::pow(p, 1.0 / n));
    }
    return est;
  }
  std::size_t from = usable.size() - std::max<std::size_t>(usable.size() / 4, 6);
  std::vector<std::pair<int, double>> tail(usable.begin() + from, usable.end());
  est.radius = std::min(1.0, fit_radius(tail));
  est.low_confidence = steps < 40;
  if (est.low_confidence) est.note = "too few steps for stabilization";
  return est;
}

std::vector<double> free_group_returns(int rank, int steps) {
  const int m = steps;
  const double q = 2.0 * rank;  // degree
  std::vector<double> cur(static_cast<std::size_t>(m) + 2, 0.0), nxt = cur;
  cur[0] = 1.0;
  std::vector<double> p_even;
  p_even.push_back(1.0);
  for (int s = 1; s <= m; ++s) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    for (int j = 0; j <= s && j <= m; ++j) {
      if (cur[static_cast<std::size_t>(j)] == 0) continue;
      double mass = cur[static_cast<std::size_t>(j)];
      if (j == 0) {
        nxt[1] += mass;
      } else {
        nxt[static_cast<std::size_t>(j) - 1] += mass / q;
        nxt[static_cast<std::size_t>(j) + 1] += mass * (q - 1.0) / q;
      }
    }
    cur.swap(nxt);
    if (s % 2 == 0) p_even.push_back(cur[0]);
  }
  return p_even;
}

std::vector<double> abelian_returns(int rank, int steps) {
  if (rank == 1) {
    const int m = steps;
    std::vector<double> cur(static_cast<std::size_t>(2 * m) + 1, 0.0), nxt = cur;
    cur[static_cast<std::size_t>(m)] = 1.0;
    std::vector<double> p_even{1.0};
    for (int s = 1; s <= m; ++s) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (int j = 1; j < 2 * m; ++j) {
        double mass = cur[static_cast<std::size_t>(j)];
        if (mass == 0) continue;
        nxt[static_cast<std::size_t>(j) - 1] += mass / 2;
        nxt[static_cast<std::size_t>(j) + 1] += mass / 2;
      }
      cur.swap(nxt);
      if (s % 2 == 0) p_even.push_back(cur[static_cast<std::size_t>(m)]);
    }
    return p_even;
  }
  if (rank == 2) {
    const int m = steps;
    const int w = 2 * m + 1;
    std::vector<double> cur(static_cast<std::size_t>(w) * w, 0.0), nxt = cur;
    auto at = [w](std::vector<double>& v, int x, int y) -> double& {
      return v[static_cast<std::size_t>(x) * w + y];
    };
    at(cur, m, m) = 1.0;
    std::vector<double> p_even{1.0};
    int lo = m, hi = m;
    for (int s = 1; s <= m; ++s) {
      lo = std::max(0, lo - 1);
      hi = std::min(w - 1, hi + 1);
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (int x = lo; x <= hi; ++x)
        for (int y = lo; y <= hi; ++y) {
          double mass = at(cur, x, y);
          if (mass == 0) continue;
          mass *= 0.25;
          at(nxt, x - 1, y) += mass;
          at(nxt, x + 1, y) += mass;
          at(nxt, x, y - 1) += mass;
          at(nxt, x, y + 1) += mass;
        }
      cur.swap(nxt);
      if (s % 2 == 0) p_even.push_back(at(cur, m, m));
    }
    return p_even;
  }
  throw std::invalid_argument("abstract abelian walks support rank <= 2");
}

}  // namespace

WalkEstimate walk_spectral_radius(const AbstractWalkSpec& spec, int steps) {
  if (steps < 2 || steps % 2 != 0)
    throw std::invalid_argument("steps must be even and >= 2");
  std::vector<double> p =
      spec.kind == AbstractWalkSpec::Kind::free_group
          ? free_group_returns(spec.rank, steps)
          : abelian_returns(spec.rank, steps);
  return estimate_from_returns(p, steps);
}

WalkEstimate walk_spectral_radius(const DiscreteGroupSpec& spec, int steps,
                                  long long trials, std::size_t budget) {
  if (steps < 2 || steps % 2 != 0)
    throw std::invalid_argument("steps must be even and >= 2");
  const int m = steps / 2;
  // Try to build the word ball of radius m; walks of length 2m that return
  // never leave it, so distribution dynamics on it are exact.
  std::vector<GroupElement> elems{identity_element(spec.group,
                                                   spec.generators[0].kind)};
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;
  auto key_of = [&](const GroupElement& e) {
    std::uint64_t h = 14695981039346656037ULL;
    FloatMat f = e.kind == EntryKind::floating ? e.fl : to_float(e.ex);
    for (auto v : f.a) {
      auto mix = [&h](double x) {
        long long q = std::llround(x * 1e6);
        h ^= static_cast<std::uint64_t>(q);
        h *= 1099511628211ULL;
      };
      mix(v.real());
      mix(v.imag());
    }
    return h;
  };
  auto close = [&](const GroupElement& x, const GroupElement& y) {
    FloatMat a = x.kind == EntryKind::floating ? x.fl : to_float(x.ex);
    FloatMat b = y.kind == EntryKind::floating ? y.fl : to_float(y.ex);
    for (std::size_t i = 0; i < a.a.size(); ++i)
      if (std::abs(a.a[i] - b.a[i]) > 1e-6) return false;
    return true;
  };
  auto find_or_insert = [&](const GroupElement& e, bool insert) -> std::int64_t {
    auto& chain = index[key_of(e)];
    for (auto i : chain)
      if (close(elems[i], e)) return i;
    if (!insert) return -1;
    elems.push_back(e);
    chain.push_back(static_cast<std::uint32_t>(elems.size() - 1));
    return static_cast<std::int64_t>(elems.size() - 1);
  };
  find_or_insert(elems[0], false);
  index[key_of(elems[0])].push_back(0);

  bool graph_ok = true;
  std::vector<std::vector<std::uint32_t>> adj;
  {
    std::size_t level_begin = 0;
    for (int depth = 0; depth < m && graph_ok; ++depth) {
      std::size_t level_end = elems.size();
      for (std::size_t i = level_begin; i < level_end && graph_ok; ++i)
        for (const auto& gen : spec.generators) {
          if (elems.size() > budget) {
            graph_ok = false;
            break;
          }
          find_or_insert(multiply(elems[i], gen), true);
        }
      level_begin = level_end;
    }
  }
  if (graph_ok) {
    adj.resize(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& gen : spec.generators) {
        std::int64_t j = find_or_insert(multiply(elems[i], gen), false);
        adj[i].push_back(j >= 0 ? static_cast<std::uint32_t>(j)
                                : UINT32_MAX);
      }
    const double inv_deg = 1.0 / static_cast<double>(spec.generators.size());
    std::vector<double> cur(elems.size(), 0.0), nxt(elems.size(), 0.0);
    cur[0] = 1.0;
    std::vector<double> p_even{1.0};
    for (int s = 1; s <= steps; ++s) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (cur[i] == 0) continue;
        double mass = cur[i] * inv_deg;
        for (auto j : adj[i])
          if (j != UINT32_MAX) nxt[j] += mass;
        // Mass walking outside the built ball is dropped; it cannot return
        // within the remaining steps anyway when s <= m, and for s > m the
        // drop only affects states irrelevant to p_{2m}(e).
      }
      cur.swap(nxt);
      if (s % 2 == 0) p_even.push_back(cur[0]);
    }
    return estimate_from_returns(p_even, steps);
  }

  // Monte Carlo fallback.
  std::mt19937_64 rng(20240915ULL);
  std::uniform_int_distribution<std::size_t> pick(0, spec.generators.size() - 1);
  std::vector<long long> returns(static_cast<std::size_t>(m) + 1, 0);
  GroupElement id = identity_element(spec.group, EntryKind::floating);
  for (long long tr = 0; tr < trials; ++tr) {
    GroupElement cur = id;
    for (int s = 1; s <= steps; ++s) {
      cur = multiply(cur, spec.generators[pick(rng)]);
      if (s % 2 == 0 && close(cur, id))
        ++returns[static_cast<std::size_t>(s / 2)];
    }
  }
  std::vector<double> p_even{1.0};
  for (int k = 1; k <= m; ++k) {
    long long c = returns[static_cast<std::size_t>(k)];
    p_even.push_back(c >= 25 ? static_cast<double>(c) / trials : 0.0);
  }
  WalkEstimate est = estimate_from_returns(p_even, steps);
  est.low_confidence = true;
  if (est.note.empty()) est.note = "Monte Carlo estimate (ball over budget)";
  return est;
}

}  // namespace rankone
