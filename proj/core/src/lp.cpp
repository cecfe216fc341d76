#include "rankone/lp.hpp"

#include <stdexcept>

namespace rankone {

std::string format_exponent(const LpExponent& e) {
  std::string s = e.infinite ? "inf" : format_rat(e.p);
  if (e.plus_epsilon) s += "+eps";
  return s;
}

LpExponent parse_exponent(const std::string& s) {
  std::string body = s;
  bool plus_eps = false;
  if (body.size() > 4 && body.substr(body.size() - 4) == "+eps") {
    plus_eps = true;
    body = body.substr(0, body.size() - 4);
  }
  if (body == "inf" || body == "infinity") return LpExponent::inf(plus_eps);
  return LpExponent::finite(parse_rat(body), plus_eps);
}

LpExponent complementary_threshold(const RankOneGroup& g, const Rat& x) {
  Rat delta(g.deltaG);
  Rat half = delta / 2;
  if (x < Rat(0) || x > half)
    throw std::invalid_argument("strip parameter outside [0, deltaG/2]");
  if (x == half) return LpExponent::inf(true);  // trivial representation
  return LpExponent::finite(2 * delta / (delta - 2 * x), true);
}

Rat threshold_parameter(const RankOneGroup& g, const LpExponent& p) {
  Rat delta(g.deltaG);
  if (p.infinite) return delta / 2;
  if (p.p < Rat(2)) throw std::invalid_argument("threshold needs p >= 2");
  return delta / 2 - delta / p.p;
}

LpExponent restrict_exponent(const LpExponent& p, const Rat& deltaSub,
                             const Rat& deltaG) {
  if (deltaSub < Rat(0) || deltaSub > deltaG || deltaG <= Rat(0))
    throw std::invalid_argument("need 0 <= deltaSub <= deltaG");
  if (!p.infinite && p.p < Rat(2))
    throw std::invalid_argument("restriction scaling needs p >= 2");
  if (p.infinite) return p;
  return LpExponent::finite(p.p * deltaSub / deltaG, p.plus_epsilon);
}

QuotientExponent quotient_exponent(const Rat& deltaG, const Rat& deltaGamma) {
  if (deltaGamma < Rat(0) || deltaGamma > deltaG)
    throw std::invalid_argument("need 0 <= deltaGamma <= deltaG");
  QuotientExponent out;
  if (deltaGamma == deltaG) {
    out.p = LpExponent::inf(true);
    out.no_decay = true;
    return out;
  }
  Rat v = deltaG / (deltaG - deltaGamma);
  if (v < Rat(2)) v = Rat(2);
  out.p = LpExponent::finite(v, true);
  out.sharp = v > Rat(2);
  return out;
}

Rat laplacian_bottom(const Rat& deltaG, const Rat& deltaGamma) {
  if (deltaGamma < Rat(0) || deltaGamma > deltaG)
    throw std::invalid_argument("need 0 <= deltaGamma <= deltaG");
  Rat half = deltaG / 2;
  if (deltaGamma > half) return deltaGamma * (deltaG - deltaGamma);
  return half * half;
}

TensorPlan tensor_plan(const RankOneGroup& g, const Rat& p) {
  if (p <= Rat(2)) throw std::invalid_argument("tensor_plan needs p > 2");
  Rat rho = g.rho_beta;
  Rat delta(g.deltaG);
  TensorPlan plan;
  plan.q = Rat(1) / (Rat(1, 2) - Rat(1) / p);
  if (p <= Rat(4)) {
    plan.strategy = TensorPlan::Strategy::single;
    plan.x = rho - delta / plan.q;
    plan.constant_power = 1;
  } else {
    plan.strategy = TensorPlan::Strategy::squared;
    Rat t = 2 * plan.q;
    plan.x = rho - delta / t;
    plan.constant_power = 2;
  }
  return plan;
}

LpExponent hoelder_combine(const LpExponent& p, const LpExponent& q) {
  if ((!p.infinite && p.p < Rat(1)) || (!q.infinite && q.p < Rat(1)))
    throw std::invalid_argument("hoelder_combine needs exponents >= 1");
  bool eps = p.plus_epsilon || q.plus_epsilon;
  if (p.infinite && q.infinite) return LpExponent::inf(eps);
  if (p.infinite) return LpExponent::finite(q.p, eps);
  if (q.infinite) return LpExponent::finite(p.p, eps);
  return LpExponent::finite(Rat(1) / (Rat(1) / p.p + Rat(1) / q.p), eps);
}

Thm14Result kernel_image_bound(const ExponentScenario& sc) {
  if (!sc.deltaKer || !sc.deltaIm)
    throw std::invalid_argument("scenario is missing kernel or image delta");
  auto rmax = [](const Rat& a, const Rat& b) { return a > b ? a : b; };
  Thm14Result r;
  r.rhs = rmax(*sc.deltaKer, sc.deltaGamma / 2) + rmax(*sc.deltaIm / 2, Rat(1));
  r.holds = sc.deltaGamma <= r.rhs;
  r.equality = sc.deltaGamma == r.rhs;
  return r;
}

bool edge_stabilizer_bound(const Rat& deltaGamma, const Rat& deltaC,
                           bool strict_mode) {
  return strict_mode ? deltaC > deltaGamma - 1 : deltaC >= deltaGamma - 1;
}

Rat p_of_group(const RankOneGroup& g) {
  if (g.field == Field::real && g.n == 2) return Rat(0);
  return Rat(g.deltaG);
}

}  // namespace rankone
