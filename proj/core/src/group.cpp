#include "rankone/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rankone {

RankOneGroup make_group(Field field, int n) {
  if (n < 2) throw std::invalid_argument("rank-one group needs n >= 2");
  RankOneGroup g;
  g.field = field;
  g.n = n;
  if (field == Field::real) {
    g.m1 = n - 1;
    g.m2 = 0;
  } else {
    g.m1 = 2 * n - 2;
    g.m2 = 1;
  }
  g.deltaG = g.m1 + 2 * g.m2;
  g.rho_beta = Rat(g.deltaG, 2);
  return g;
}

RankOneGroup make_group(const std::string& family, int n) {
  if (family == "so") return make_group(Field::real, n);
  if (family == "su") return make_group(Field::complex_field, n);
  throw std::invalid_argument("unknown family: " + family + " (want so|su)");
}

std::string family_name(const RankOneGroup& g) {
  return g.field == Field::real ? "so" : "su";
}

// --- exact matrices --------------------------------------------------------

namespace {

using i128 = __int128;

long long checked_ll(i128 v, const char* what) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw std::overflow_error(std::string("exact matrix overflow in ") + what);
  return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

ExactMat exact_identity(int dim) {
  ExactMat m;
  m.dim = dim;
  m.re.assign(static_cast<std::size_t>(dim) * dim, 0);
  for (int i = 0; i < dim; ++i) m.re[static_cast<std::size_t>(i) * dim + i] = 1;
  m.den = 1;
  return m;
}

void normalize(ExactMat& m) {
  if (m.den == 0) throw std::invalid_argument("zero denominator");
  if (m.den < 0) {
    m.den = -m.den;
    for (auto& v : m.re) v = -v;
    for (auto& v : m.im) v = -v;
  }
  long long g = m.den;
  for (auto v : m.re) g = std::gcd(g, std::abs(v));
  for (auto v : m.im) g = std::gcd(g, std::abs(v));
  if (g > 1) {
    m.den /= g;
    for (auto& v : m.re) v /= g;
    for (auto& v : m.im) v /= g;
  }
  if (!m.im.empty() &&
      std::all_of(m.im.begin(), m.im.end(), [](long long v) { return v == 0; }))
    m.im.clear();
}

ExactMat exact_from_rationals(int dim, const std::vector<Rat>& re,
                              const std::vector<Rat>& im) {
  std::size_t nn = static_cast<std::size_t>(dim) * dim;
  if (re.size() != nn || (!im.empty() && im.size() != nn))
    throw std::invalid_argument("entry count does not match dimension");
  long long den = 1;
  auto fold = [&den](const std::vector<Rat>& v) {
    for (const auto& r : v) den = std::lcm(den, r.denominator());
  };
  fold(re);
  fold(im);
  ExactMat m;
  m.dim = dim;
  m.den = den;
  m.re.resize(nn);
  for (std::size_t i = 0; i < nn; ++i)
    m.re[i] = re[i].numerator() * (den / re[i].denominator());
  if (!im.empty()) {
    m.im.resize(nn);
    for (std::size_t i = 0; i < nn; ++i)
      m.im[i] = im[i].numerator() * (den / im[i].denominator());
  }
  normalize(m);
  return m;
}

ExactMat multiply(const ExactMat& x, const ExactMat& y) {
  if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
  const int d = x.dim;
  const bool cx = !x.is_real() || !y.is_real();
  ExactMat z;
  z.dim = d;
  std::vector<i128> zre(static_cast<std::size_t>(d) * d, 0);
  std::vector<i128> zim(cx ? static_cast<std::size_t>(d) * d : 0, 0);
  auto xr = [&](int i, int k) -> i128 { return x.re[static_cast<std::size_t>(i) * d + k]; };
  auto xi = [&](int i, int k) -> i128 {
    return x.is_real() ? 0 : x.im[static_cast<std::size_t>(i) * d + k];
  };
  auto yr = [&](int k, int j) -> i128 { return y.re[static_cast<std::size_t>(k) * d + j]; };
  auto yi = [&](int k, int j) -> i128 {
    return y.is_real() ? 0 : y.im[static_cast<std::size_t>(k) * d + j];
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      i128 sr = 0, si = 0;
      for (int k = 0; k < d; ++k) {
        sr += xr(i, k) * yr(k, j) - xi(i, k) * yi(k, j);
        if (cx) si += xr(i, k) * yi(k, j) + xi(i, k) * yr(k, j);
      }
      zre[static_cast<std::size_t>(i) * d + j] = sr;
      if (cx) zim[static_cast<std::size_t>(i) * d + j] = si;
    }
  i128 den = static_cast<i128>(x.den) * y.den;
  i128 g = den;
  for (auto v : zre) g = gcd128(g, v);
  for (auto v : zim) g = gcd128(g, v);
  if (g > 1) {
    den /= g;
    for (auto& v : zre) v /= g;
    for (auto& v : zim) v /= g;
  }
  z.den = checked_ll(den, "denominator");
  z.re.resize(zre.size());
  for (std::size_t i = 0; i < zre.size(); ++i) z.re[i] = checked_ll(zre[i], "entry");
  if (cx) {
    z.im.resize(zim.size());
    for (std::size_t i = 0; i < zim.size(); ++i) z.im[i] = checked_ll(zim[i], "entry");
  }
  normalize(z);
  return z;
}

ExactMat form_inverse(const ExactMat& m) {
  const int d = m.dim;
  ExactMat z;
  z.dim = d;
  z.den = m.den;
  z.re.resize(m.re.size());
  if (!m.is_real()) z.im.resize(m.im.size());
  auto sign = [d](int i) { return i == d - 1 ? -1 : 1; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      int s = sign(i) * sign(j);
      z.re[static_cast<std::size_t>(i) * d + j] =
          s * m.re[static_cast<std::size_t>(j) * d + i];
      if (!m.is_real())
        z.im[static_cast<std::size_t>(i) * d + j] =
            -s * m.im[static_cast<std::size_t>(j) * d + i];
    }
  normalize(z);
  return z;
}

FloatMat to_float(const ExactMat& m) {
  FloatMat f;
  f.dim = m.dim;
  f.a.resize(m.re.size());
  const double den = static_cast<double>(m.den);
  for (std::size_t i = 0; i < m.re.size(); ++i)
    f.a[i] = std::complex<double>(static_cast<double>(m.re[i]) / den,
                                  m.is_real() ? 0.0 : static_cast<double>(m.im[i]) / den);
  return f;
}

FloatMat float_identity(int dim) {
  FloatMat f;
  f.dim = dim;
  f.a.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) f.a[static_cast<std::size_t>(i) * dim + i] = 1.0;
  return f;
}

FloatMat multiply(const FloatMat& x, const FloatMat& y) {
  if (x.dim != y.dim) throw std::invalid_argument("matrix dimension mismatch");
  const int d = x.dim;
  FloatMat z;
  z.dim = d;
  z.a.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      std::complex<double> xv = x.a[static_cast<std::size_t>(i) * d + k];
      if (xv == 0.0) continue;
      for (int j = 0; j < d; ++j)
        z.a[static_cast<std::size_t>(i) * d + j] += xv * y.a[static_cast<std::size_t>(k) * d + j];
    }
  return z;
}

FloatMat form_inverse(const FloatMat& m) {
  const int d = m.dim;
  FloatMat z;
  z.dim = d;
  z.a.resize(m.a.size());
  auto sign = [d](int i) { return i == d - 1 ? -1.0 : 1.0; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      z.a[static_cast<std::size_t>(i) * d + j] =
          sign(i) * sign(j) * std::conj(m.a[static_cast<std::size_t>(j) * d + i]);
  return z;
}

// --- group elements --------------------------------------------------------

GroupElement element_from_exact(const RankOneGroup& g, ExactMat m) {
  if (m.dim != g.dim())
    throw std::invalid_argument("matrix dimension does not match group");
  if (g.field == Field::real && !m.is_real())
    throw std::invalid_argument("complex entries in a real group");
  GroupElement e;
  e.group = g;
  e.kind = EntryKind::exact_rational;
  e.ex = std::move(m);
  return e;
}

GroupElement element_from_float(const RankOneGroup& g, FloatMat m) {
  if (m.dim != g.dim())
    throw std::invalid_argument("matrix dimension does not match group");
  GroupElement e;
  e.group = g;
  e.kind = EntryKind::floating;
  e.fl = std::move(m);
  return e;
}

GroupElement identity_element(const RankOneGroup& g, EntryKind kind) {
  return kind == EntryKind::exact_rational
             ? element_from_exact(g, exact_identity(g.dim()))
             : element_from_float(g, float_identity(g.dim()));
}

GroupElement cartan_element(const RankOneGroup& g, double t) {
  FloatMat m = float_identity(g.dim());
  const int d = g.dim();
  auto at = [&](int i, int j) -> std::complex<double>& {
    return m.a[static_cast<std::size_t>(i) * d + j];
  };
  at(d - 2, d - 2) = std::cosh(t);
  at(d - 2, d - 1) = std::sinh(t);
  at(d - 1, d - 2) = std::sinh(t);
  at(d - 1, d - 1) = std::cosh(t);
  return element_from_float(g, std::move(m));
}

GroupElement multiply(const GroupElement& x, const GroupElement& y) {
  if (!(x.group == y.group)) throw std::invalid_argument("group mismatch");
  if (x.kind == EntryKind::exact_rational && y.kind == EntryKind::exact_rational)
    return element_from_exact(x.group, multiply(x.ex, y.ex));
  FloatMat xv = x.kind == EntryKind::floating ? x.fl : to_float(x.ex);
  FloatMat yv = y.kind == EntryKind::floating ? y.fl : to_float(y.ex);
  return element_from_float(x.group, multiply(xv, yv));
}

GroupElement inverse(const GroupElement& x) {
  if (x.kind == EntryKind::exact_rational)
    return element_from_exact(x.group, form_inverse(x.ex));
  return element_from_float(x.group, form_inverse(x.fl));
}

bool equal_exact(const GroupElement& x, const GroupElement& y) {
  return x.kind == EntryKind::exact_rational &&
         y.kind == EntryKind::exact_rational && x.ex == y.ex;
}

namespace {

// sum_k sign(k) conj(g[k][i]) g[k][j], the (i,j) entry of g* J g.
bool exact_is_isometry(const ExactMat& m) {
  const int d = m.dim;
  const i128 den2 = static_cast<i128>(m.den) * m.den;
  auto re = [&](int i, int j) -> i128 { return m.re[static_cast<std::size_t>(i) * d + j]; };
  auto im = [&](int i, int j) -> i128 {
    return m.is_real() ? 0 : m.im[static_cast<std::size_t>(i) * d + j];
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      i128 sr = 0, si = 0;
      for (int k = 0; k < d; ++k) {
        i128 s = (k == d - 1) ? -1 : 1;
        sr += s * (re(k, i) * re(k, j) + im(k, i) * im(k, j));
        si += s * (re(k, i) * im(k, j) - im(k, i) * re(k, j));
      }
      i128 want = 0;
      if (i == j) want = (i == d - 1) ? -den2 : den2;
      if (sr != want || si != 0) return false;
    }
  return true;
}

bool float_is_isometry(const FloatMat& m, double tol) {
  const int d = m.dim;
  auto at = [&](int i, int j) { return m.a[static_cast<std::size_t>(i) * d + j]; };
  // Entries of the defect matrix carry float error on the scale of the
  // squared corner entry, so the tolerance is applied relative to it.
  double corner = std::abs(at(d - 1, d - 1));
  double thresh = tol * std::max(1.0, corner * corner);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < d; ++k)
        s += (k == d - 1 ? -1.0 : 1.0) * std::conj(at(k, i)) * at(k, j);
      std::complex<double> want = 0.0;
      if (i == j) want = (i == d - 1) ? -1.0 : 1.0;
      if (std::abs(s - want) > thresh) return false;
    }
  return true;
}

}  // namespace

bool is_isometry(const GroupElement& g, double tol) {
  if (g.kind == EntryKind::exact_rational) return exact_is_isometry(g.ex);
  return float_is_isometry(g.fl, tol);
}

double cosh_cartan(const GroupElement& g) {
  const int d = g.dim();
  if (g.kind == EntryKind::exact_rational) {
    const auto& m = g.ex;
    std::size_t c = static_cast<std::size_t>(d - 1) * d + (d - 1);
    double re = static_cast<double>(m.re[c]) / static_cast<double>(m.den);
    double im = m.is_real() ? 0.0 : static_cast<double>(m.im[c]) / static_cast<double>(m.den);
    return std::hypot(re, im);
  }
  return std::abs(g.fl.a[static_cast<std::size_t>(d - 1) * d + (d - 1)]);
}

double cartan_radius(const GroupElement& g, double tol) {
  double c = cosh_cartan(g);
  if (c < 1.0) {
    if (c < 1.0 - tol)
      throw std::domain_error("corner entry below 1: not an isometry");
    return 0.0;
  }
  return std::acosh(c);
}

double haar_density(const RankOneGroup& g, double t) {
  if (t < 0) throw std::invalid_argument("haar_density needs t >= 0");
  double s = std::exp(t) - std::exp(-t);
  if (g.field == Field::real) return std::pow(s, g.n - 1);
  double s2 = std::exp(2 * t) - std::exp(-2 * t);
  return s2 * std::pow(s, 2 * g.n - 2);
}

double haar_ball_volume(const RankOneGroup& g, double R) {
  if (R < 0) throw std::invalid_argument("haar_ball_volume needs R >= 0");
  if (R == 0) return 0.0;
  // Composite Simpson; the integrand is smooth and monotone.
  const int steps = std::max(64, static_cast<int>(64 * R));
  const double h = R / (2 * steps);
  double acc = haar_density(g, 0) + haar_density(g, R);
  for (int k = 1; k < 2 * steps; ++k)
    acc += haar_density(g, k * h) * ((k % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

GroupElement random_compact(const RankOneGroup& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = g.n;
  const int d = g.dim();
  FloatMat m = float_identity(d);
  auto at = [&](int i, int j) -> std::complex<double>& {
    return m.a[static_cast<std::size_t>(i) * d + j];
  };
  // Gram-Schmidt on a Gaussian n x n block.
  std::vector<std::vector<std::complex<double>>> col(
      n, std::vector<std::complex<double>>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      col[j][i] = g.field == Field::real
                      ? std::complex<double>(gauss(rng), 0.0)
                      : std::complex<double>(gauss(rng), gauss(rng));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      std::complex<double> proj = 0.0;
      for (int i = 0; i < n; ++i) proj += std::conj(col[k][i]) * col[j][i];
      for (int i = 0; i < n; ++i) col[j][i] -= proj * col[k][i];
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += std::norm(col[j][i]);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) col[j][i] /= norm;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) at(i, j) = col[j][i];
  if (g.field == Field::real) {
    // Determinant sign fix keeps us in the rotation subgroup.
    double det = 1.0;
    {
      // Small n: Laplace expansion via LU on a copy.
      std::vector<std::vector<double>> a(n, std::vector<double>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = at(i, j).real();
      for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
          if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (piv != k) {
          std::swap(a[piv], a[k]);
          det = -det;
        }
        det *= a[k][k];
        if (a[k][k] == 0.0) break;
        for (int i = k + 1; i < n; ++i) {
          double f = a[i][k] / a[k][k];
          for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
      }
    }
    if (det < 0)
      for (int i = 0; i < n; ++i) at(i, 0) = -at(i, 0);
  } else {
    // det(U) * phase = 1 puts the matrix in the determinant-one subgroup.
    std::complex<double> det = 1.0;
    {
      std::vector<std::vector<std::complex<double>>> a(
          n, std::vector<std::complex<double>>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = at(i, j);
      for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
          if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
        if (piv != k) {
          std::swap(a[piv], a[k]);
          det = -det;
        }
        det *= a[k][k];
        if (a[k][k] == std::complex<double>(0.0)) break;
        for (int i = k + 1; i < n; ++i) {
          std::complex<double> f = a[i][k] / a[k][k];
          for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
      }
    }
    at(d - 1, d - 1) = 1.0 / det;
  }
  return element_from_float(g, std::move(m));
}

}  // namespace rankone
