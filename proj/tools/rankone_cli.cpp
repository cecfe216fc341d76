// Command-line front end: group data, orbit enumeration, critical-exponent
// estimation, spherical-function evaluation and bound checks, the exact
// exponent calculus, cusp criteria, and tree/wall computations.
//
// Output contract: one JSON document (or CSV table) on stdout; provenance
// (version, seed, tolerances) on stderr. Exit 0 on success, 1 on input
// errors, 2 when a computation is flagged inconclusive or incomplete.

#include "rankone/cusp.hpp"
#include "rankone/group.hpp"
#include "rankone/lp.hpp"
#include "rankone/orbit.hpp"
#include "rankone/poincare.hpp"
#include "rankone/serialize.hpp"
#include "rankone/spherical.hpp"
#include "rankone/walk.hpp"
#include "rankone/walls.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr const char* kVersion = "0.1.0";

using rankone::json;

struct GlobalOpts {
  std::uint64_t seed = 1;
  double tolerance = rankone::kFormTolerance;
  std::string output = "json";
  std::string cache_dir;
  bool no_cache = false;

  std::string effective_cache_dir() const {
    if (no_cache) return {};
    if (!cache_dir.empty()) return cache_dir;
    if (const char* env = std::getenv("RANKONE_CACHE_DIR")) return env;
    return {};
  }
};

int finish(const GlobalOpts& g, const json& doc, int exit_code = 0) {
  std::cerr << "rankone " << kVersion << " seed=" << g.seed
            << " tolerance=" << g.tolerance << "\n";
  std::cout << doc.dump(2) << "\n";
  return exit_code;
}

rankone::RankOneGroup group_of(const std::string& family, int n) {
  return rankone::make_group(family, n);
}

rankone::DiscreteGroupSpec load_spec(const std::string& spec_file,
                                     const std::string& bundled, double tlen,
                                     double t) {
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw std::invalid_argument("cannot open spec file " + spec_file);
    json j = json::parse(in);
    return rankone::spec_from_json(j);
  }
  if (bundled == "modular") return rankone::modular_group_spec();
  if (bundled == "schottky") return rankone::schottky_spec(tlen);
  if (bundled == "cyclic")
    return rankone::cyclic_spec(rankone::make_group(rankone::Field::real, 2), t);
  throw std::invalid_argument("need --spec FILE or --bundled modular|schottky|cyclic");
}

json estimate_to_json(const rankone::ExponentEstimate& est) {
  json j;
  j["delta_hat"] = est.delta_hat;
  j["window"] = {est.window_lo, est.window_hi};
  j["residual"] = est.residual;
  j["method"] = est.method == rankone::ExponentEstimate::Method::counting_slope
                    ? "counting_slope"
                    : "series_threshold";
  j["flagged"] = est.flagged;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-one group computations"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for randomized procedures");
  app.add_option("--tolerance", g.tolerance, "float comparison tolerance");
  app.add_option("--output", g.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", g.cache_dir, "orbit-ball cache directory");
  app.add_flag("--no-cache", g.no_cache, "bypass the orbit-ball cache");

  std::string family = "so", kind = "complementary", space = "rhn";
  std::string spec_file, bundled, abstract_spec, amalgam = "4,2,6", word, gens_csv;
  int n = 3, steps = 200, cap = 12, M = 40, grid = 64, power = 2;
  long long trials = 200000;
  double radius = 10.0, s_exp = 1.0, x = 0.5, t = 1.0, tmax = 30.0, tlen = 6.0;
  double base_volume = 1.0, height = 5.0, svol = 0.0;
  std::size_t budget = 5'000'000;
  std::string p_str = "4", q_str = "4", dg = "2", dgamma = "1", dker, dim_str,
              dsub = "1", dc = "0", xr = "1/2";
  bool strict = false, use_quadrature = false;

  // group info
  auto* c_group = app.add_subcommand("group", "group descriptors");
  auto* c_group_info = c_group->add_subcommand("info", "derived root data");
  c_group_info->add_option("--family", family, "so|su");
  c_group_info->add_option("--n", n, "rank parameter (n >= 2)");

  // orbit enumerate
  auto* c_orbit = app.add_subcommand("orbit", "orbit-ball enumeration");
  auto* c_orbit_enum = c_orbit->add_subcommand("enumerate", "breadth-first ball");
  c_orbit_enum->add_option("--spec", spec_file, "spec JSON file");
  c_orbit_enum->add_option("--bundled", bundled, "modular|schottky|cyclic");
  c_orbit_enum->add_option("--radius", radius, "ball radius");
  c_orbit_enum->add_option("--budget", budget, "stored-element budget");
  c_orbit_enum->add_option("--tlen", tlen, "schottky translation length");
  c_orbit_enum->add_option("--t", t, "cyclic translation length");

  // delta estimate / probe
  auto* c_delta = app.add_subcommand("delta", "critical-exponent estimation");
  auto* c_delta_est = c_delta->add_subcommand("estimate", "counting-slope fit");
  auto* c_delta_probe = c_delta->add_subcommand("probe", "divergence trend");
  for (auto* c : {c_delta_est, c_delta_probe}) {
    c->add_option("--spec", spec_file, "spec JSON file");
    c->add_option("--bundled", bundled, "modular|schottky|cyclic");
    c->add_option("--radius", radius, "ball radius");
    c->add_option("--budget", budget, "stored-element budget");
    c->add_option("--tlen", tlen, "schottky translation length");
    c->add_option("--t", t, "cyclic translation length");
  }
  c_delta_probe->add_option("--s", s_exp, "series exponent");

  // walk radius
  auto* c_walk = app.add_subcommand("walk", "random-walk spectral radius");
  auto* c_walk_radius = c_walk->add_subcommand("radius", "return-probability root");
  c_walk_radius->add_option("--abstract", abstract_spec, "free:k | z:k");
  c_walk_radius->add_option("--spec", spec_file, "matrix spec JSON file");
  c_walk_radius->add_option("--steps", steps, "even walk length");
  c_walk_radius->add_option("--trials", trials, "Monte Carlo fallback trials");

  // spherical
  auto* c_sph = app.add_subcommand("spherical", "spherical functions");
  auto* c_sph_eval = c_sph->add_subcommand("eval", "evaluate phi at (x, t)");
  c_sph_eval->add_option("--family", family, "so|su");
  c_sph_eval->add_option("--n", n, "rank parameter");
  c_sph_eval->add_option("--kind", kind, "complementary|principal");
  c_sph_eval->add_option("--x", x, "parameter in root units");
  c_sph_eval->add_option("--t", t, "radius");
  c_sph_eval->add_flag("--quadrature", use_quadrature, "use the integral evaluator");
  auto* c_sph_limit = c_sph->add_subcommand("limit", "scaled large-t limit");
  c_sph_limit->add_option("--family", family, "so|su");
  c_sph_limit->add_option("--n", n, "rank parameter");
  c_sph_limit->add_option("--x", x, "complementary parameter");
  c_sph_limit->add_option("--tmax", tmax, "evaluation endpoint");
  auto* c_sph_bounds = c_sph->add_subcommand("check-bounds", "grid bound report");
  c_sph_bounds->add_option("--family", family, "so|su");
  c_sph_bounds->add_option("--n", n, "rank parameter");

  // lp calculus
  auto* c_lp = app.add_subcommand("lp", "exact exponent calculus");
  auto* c_lp_threshold = c_lp->add_subcommand("threshold", "strip parameter -> p");
  c_lp_threshold->add_option("--family", family, "so|su");
  c_lp_threshold->add_option("--n", n, "rank parameter");
  c_lp_threshold->add_option("--x", xr, "strip parameter (rational)");
  auto* c_lp_restrict = c_lp->add_subcommand("restrict", "restriction scaling");
  c_lp_restrict->add_option("--p", p_str, "exponent");
  c_lp_restrict->add_option("--delta-sub", dsub, "subgroup exponent");
  c_lp_restrict->add_option("--delta-g", dg, "ambient exponent");
  auto* c_lp_quotient = c_lp->add_subcommand("quotient", "quotient representation exponent");
  c_lp_quotient->add_option("--delta-g", dg, "ambient exponent");
  c_lp_quotient->add_option("--delta-gamma", dgamma, "subgroup exponent");
  auto* c_lp_laplacian = c_lp->add_subcommand("laplacian", "bottom of the spectrum");
  c_lp_laplacian->add_option("--delta-g", dg, "ambient exponent");
  c_lp_laplacian->add_option("--delta-gamma", dgamma, "subgroup exponent");
  auto* c_lp_tensor = c_lp->add_subcommand("tensor-plan", "L^p -> L^2 bookkeeping");
  c_lp_tensor->add_option("--family", family, "so|su");
  c_lp_tensor->add_option("--n", n, "rank parameter");
  c_lp_tensor->add_option("--p", p_str, "exponent > 2");
  auto* c_lp_combine = c_lp->add_subcommand("combine", "Hoelder combination");
  c_lp_combine->add_option("--p", p_str, "first exponent");
  c_lp_combine->add_option("--q", q_str, "second exponent");
  auto* c_lp_ineq14 = c_lp->add_subcommand("ineq14", "kernel/image inequality");
  c_lp_ineq14->add_option("--delta-g", dg, "ambient exponent");
  c_lp_ineq14->add_option("--delta-gamma", dgamma, "lattice exponent");
  c_lp_ineq14->add_option("--delta-ker", dker, "kernel exponent")->required();
  c_lp_ineq14->add_option("--delta-im", dim_str, "image exponent")->required();
  auto* c_lp_ineq16 = c_lp->add_subcommand("ineq16", "edge-stabilizer inequality");
  c_lp_ineq16->add_option("--delta-gamma", dgamma, "lattice exponent");
  c_lp_ineq16->add_option("--delta-c", dc, "stabilizer exponent");
  c_lp_ineq16->add_flag("--strict", strict, "strict mode");

  // cusp
  auto* c_cusp = app.add_subcommand("cusp", "cusp geometry");
  auto* c_cusp_criterion = c_cusp->add_subcommand("criterion", "integrability exponent");
  c_cusp_criterion->add_option("--space", space, "rhn|chn|qhn");
  c_cusp_criterion->add_option("--n", n, "rank parameter");
  auto* c_cusp_volume = c_cusp->add_subcommand("volume", "horoball volume");
  c_cusp_volume->add_option("--n", n, "dimension");
  c_cusp_volume->add_option("--base", base_volume, "cross-section volume");
  c_cusp_volume->add_option("--s", svol, "height cut");
  auto* c_cusp_word = c_cusp->add_subcommand("word-bound", "word-length/height fit");
  c_cusp_word->add_option("--n", n, "dimension");
  c_cusp_word->add_option("--grid", grid, "grid points per axis");
  c_cusp_word->add_option("--height", height, "maximum height");
  auto* c_cusp_tail = c_cusp->add_subcommand("tail", "tail partial sums");
  c_cusp_tail->add_option("--space", space, "rhn|chn|qhn");
  c_cusp_tail->add_option("--n", n, "rank parameter");
  c_cusp_tail->add_option("--M", M, "number of terms");

  // tree
  auto* c_tree = app.add_subcommand("tree", "tree actions and wall cocycles");
  auto* c_tree_dist = c_tree->add_subcommand("distance", "Bass-Serre displacement");
  auto* c_tree_coc = c_tree->add_subcommand("cocycle", "wall cocycle norm");
  for (auto* c : {c_tree_dist, c_tree_coc}) {
    c->add_option("--amalgam", amalgam, "\"a,c,b\" or free:k");
    c->add_option("--word", word, "word over a/A/b/B")->required();
  }
  auto* c_tree_probe = c_tree->add_subcommand("probe", "fixed-point dichotomy");
  c_tree_probe->add_option("--amalgam", amalgam, "\"a,c,b\" or free:k");
  c_tree_probe->add_option("--cap", cap, "search radius");
  c_tree_probe->add_option("--gens", gens_csv, "comma-separated generator words");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_group_info->parsed()) {
      auto grp = group_of(family, n);
      json j = rankone::group_to_json(grp);
      j["deltaG"] = grp.deltaG;
      j["m1"] = grp.m1;
      j["m2"] = grp.m2;
      j["rho_beta"] = rankone::format_rat(grp.rho_beta);
      return finish(g, j);
    }

    if (c_orbit_enum->parsed()) {
      auto spec = load_spec(spec_file, bundled, tlen, t);
      auto ball = rankone::enumerate_ball_cached(spec, radius, budget,
                                                 g.effective_cache_dir());
      json j;
      j["group"] = rankone::group_to_json(spec.group);
      j["label"] = spec.label;
      j["spec_hash"] = rankone::spec_hash(spec);
      j["radius"] = ball.radius;
      j["size"] = ball.size();
      j["complete"] = ball.complete;
      j["collision_warning"] = ball.collision_warning;
      j["degraded"] = ball.degraded;
      j["tolerance"] = ball.tolerance;
      return finish(g, j, ball.complete ? 0 : 2);
    }

    if (c_delta_est->parsed() || c_delta_probe->parsed()) {
      auto spec = load_spec(spec_file, bundled, tlen, t);
      auto ball = rankone::enumerate_ball_cached(spec, radius, budget,
                                                 g.effective_cache_dir());
      if (c_delta_est->parsed()) {
        auto est = rankone::delta_estimate(ball);
        if (g.output == "csv") {
          std::cerr << "rankone " << kVersion << " seed=" << g.seed << "\n";
          std::cout << rankone::counting_curve_csv(est.counting_curve);
          return est.flagged ? 2 : 0;
        }
        json j = estimate_to_json(est);
        j["label"] = spec.label;
        j["radius"] = ball.radius;
        j["size"] = ball.size();
        j["tolerance"] = ball.tolerance;
        return finish(g, j, est.flagged ? 2 : 0);
      }
      auto trend = rankone::divergence_probe(ball, s_exp);
      json j;
      j["label"] = spec.label;
      j["s"] = s_exp;
      j["trend"] = rankone::trend_name(trend);
      j["note"] = "finite-radius heuristic, not a proof";
      return finish(g, j,
                    trend == rankone::DivergenceTrend::inconclusive ? 2 : 0);
    }

    if (c_walk_radius->parsed()) {
      rankone::WalkEstimate est;
      json j;
      if (!abstract_spec.empty()) {
        est = rankone::walk_spectral_radius(rankone::parse_abstract_walk(abstract_spec),
                                            steps);
        j["spec"] = abstract_spec;
      } else {
        auto spec = load_spec(spec_file, bundled, tlen, t);
        est = rankone::walk_spectral_radius(spec, steps, trials);
        j["spec"] = spec.label;
      }
      j["radius"] = est.radius;
      j["steps"] = est.steps;
      j["low_confidence"] = est.low_confidence;
      if (!est.note.empty()) j["note"] = est.note;
      return finish(g, j, est.low_confidence ? 2 : 0);
    }

    if (c_sph_eval->parsed()) {
      auto grp = group_of(family, n);
      auto p = rankone::make_spherical(
          grp,
          kind == "principal" ? rankone::SphericalParameter::Kind::principal
                              : rankone::SphericalParameter::Kind::complementary,
          x);
      auto v = use_quadrature ? rankone::phi_quadrature(p, t) : rankone::phi(p, t);
      json j;
      j["group"] = rankone::group_to_json(grp);
      j["kind"] = kind;
      j["x"] = x;
      j["t"] = t;
      j["value"] = v.real();
      if (kind == "principal") j["value_im"] = v.imag();
      j["method"] = use_quadrature ? "quadrature" : "hypergeometric";
      j["accuracy_target"] = 1e-8;
      return finish(g, j);
    }

    if (c_sph_limit->parsed()) {
      auto grp = group_of(family, n);
      auto p = rankone::make_spherical(
          grp, rankone::SphericalParameter::Kind::complementary, x);
      auto lim = rankone::spherical_limit(p, tmax);
      json j;
      j["group"] = rankone::group_to_json(grp);
      j["x"] = x;
      j["t_max"] = lim.t_max;
      j["value"] = lim.value;
      j["rel_change"] = lim.rel_change;
      j["stabilized"] = lim.stabilized;
      return finish(g, j, lim.stabilized ? 0 : 2);
    }

    if (c_sph_bounds->parsed()) {
      auto grp = group_of(family, n);
      double rho = rankone::to_double(grp.rho_beta);
      auto ts = rankone::standard_t_grid();
      auto xs = rankone::standard_x_grid(grp);
      // Fit the constants of the decay envelope, the complementary upper
      // bound, and the lower bound on the upper half of the strip; report
      // the lower-bound constant curve on the unproven half as data.
      double C_xi = 0.0, C_upper = 0.0, C_lower = 1e300;
      for (double tv : ts) {
        if (tv == 0.0) continue;
        double env = (1.0 + tv) * std::exp(-0.5 * grp.deltaG * tv);
        C_xi = std::max(C_xi, rankone::xi(grp, tv) / env);
        for (double xv : xs) {
          auto p = rankone::make_spherical(
              grp, rankone::SphericalParameter::Kind::complementary, xv);
          double v = rankone::phi(p, tv).real();
          C_upper = std::max(C_upper, v / ((1.0 + tv) * std::exp((xv - rho) * tv)));
          if (xv >= 0.5 * rho)
            C_lower = std::min(C_lower, v / std::exp((xv - rho) * tv));
        }
      }
      json lower_curve = json::array();
      for (double xv : xs) {
        if (xv >= 0.5 * rho || xv == 0.0) continue;
        auto p = rankone::make_spherical(
            grp, rankone::SphericalParameter::Kind::complementary, xv);
        double c = 1e300;
        for (double tv : ts)
          if (tv > 0.0)
            c = std::min(c, rankone::phi(p, tv).real() /
                                std::exp((xv - rho) * tv));
        lower_curve.push_back(json{{"x", xv}, {"C_lower", c}});
      }
      json j;
      j["group"] = rankone::group_to_json(grp);
      j["C_xi"] = C_xi;
      j["C_upper"] = C_upper;
      j["C_lower_upper_half"] = C_lower;
      j["C_lower_curve_lower_half"] = lower_curve;
      j["grid"] = {{"t", "0:0.25:30"}, {"x_points", xs.size()}};
      return finish(g, j);
    }

    if (c_lp_threshold->parsed()) {
      auto grp = group_of(family, n);
      auto e = rankone::complementary_threshold(grp, rankone::parse_rat(xr));
      json j;
      j["group"] = rankone::group_to_json(grp);
      j["x"] = xr;
      j["p"] = rankone::format_exponent(e);
      return finish(g, j);
    }
    if (c_lp_restrict->parsed()) {
      auto e = rankone::restrict_exponent(rankone::parse_exponent(p_str),
                                          rankone::parse_rat(dsub),
                                          rankone::parse_rat(dg));
      return finish(g, json{{"p", rankone::format_exponent(e)}});
    }
    if (c_lp_quotient->parsed()) {
      auto q = rankone::quotient_exponent(rankone::parse_rat(dg),
                                          rankone::parse_rat(dgamma));
      json j;
      j["p"] = rankone::format_exponent(q.p);
      j["sharp"] = q.sharp;
      j["no_decay"] = q.no_decay;
      return finish(g, j);
    }
    if (c_lp_laplacian->parsed()) {
      auto v = rankone::laplacian_bottom(rankone::parse_rat(dg),
                                         rankone::parse_rat(dgamma));
      return finish(g, json{{"lambda0", rankone::format_rat(v)}});
    }
    if (c_lp_tensor->parsed()) {
      auto grp = group_of(family, n);
      auto plan = rankone::tensor_plan(grp, rankone::parse_rat(p_str));
      json j;
      j["q"] = rankone::format_rat(plan.q);
      j["strategy"] =
          plan.strategy == rankone::TensorPlan::Strategy::single ? "single" : "squared";
      j["x"] = rankone::format_rat(plan.x);
      j["constant_factor"] = "1/C'^" + std::to_string(plan.constant_power);
      return finish(g, j);
    }
    if (c_lp_combine->parsed()) {
      auto e = rankone::hoelder_combine(rankone::parse_exponent(p_str),
                                        rankone::parse_exponent(q_str));
      return finish(g, json{{"r", rankone::format_exponent(e)}});
    }
    if (c_lp_ineq14->parsed()) {
      rankone::ExponentScenario sc;
      sc.deltaG = rankone::parse_rat(dg);
      sc.deltaGamma = rankone::parse_rat(dgamma);
      sc.deltaKer = rankone::parse_rat(dker);
      sc.deltaIm = rankone::parse_rat(dim_str);
      auto r = rankone::kernel_image_bound(sc);
      json j;
      j["rhs"] = rankone::format_rat(r.rhs);
      j["holds"] = r.holds;
      j["equality"] = r.equality;
      return finish(g, j);
    }
    if (c_lp_ineq16->parsed()) {
      bool ok = rankone::edge_stabilizer_bound(rankone::parse_rat(dgamma),
                                               rankone::parse_rat(dc), strict);
      return finish(g, json{{"holds", ok}, {"strict_mode", strict}});
    }

    if (c_cusp_criterion->parsed()) {
      auto m = rankone::make_cusp_model(space, n);
      auto r = rankone::cusp_integrability(m);
      json j = rankone::cusp_model_to_json(m);
      j["exponent"] = rankone::to_double(r.exponent);
      j["exponent_rational"] = rankone::format_rat(r.exponent);
      j["converges"] = r.converges;
      return finish(g, j);
    }
    if (c_cusp_volume->parsed()) {
      double v = rankone::horoball_volume(n, base_volume, svol);
      return finish(g, json{{"n", n}, {"base", base_volume}, {"s", svol},
                            {"volume", v}});
    }
    if (c_cusp_word->parsed()) {
      auto rep = rankone::cusp_word_bound(n, grid, height, g.seed);
      json j;
      j["n"] = n;
      j["fitted_C"] = rep.fitted_C;
      j["max_ratio"] = rep.max_ratio;
      j["grid_points"] = rep.grid_points;
      j["zero_word_points"] = rep.zero_word_points;
      j["grid_too_small"] = rep.grid_too_small;
      return finish(g, j, rep.grid_too_small ? 2 : 0);
    }
    if (c_cusp_tail->parsed()) {
      auto m = rankone::make_cusp_model(space, n);
      auto r = rankone::tail_sum_probe(m, M);
      json j = rankone::cusp_model_to_json(m);
      j["terms"] = r.terms;
      j["partial_sum"] = r.partial_sum;
      j["converges"] = r.converges;
      if (r.converges) j["truncation_bound"] = r.truncation_bound;
      return finish(g, j);
    }

    if (c_tree_dist->parsed() || c_tree_coc->parsed()) {
      auto am = rankone::parse_amalgam(amalgam);
      if (c_tree_dist->parsed()) {
        long long d = rankone::tree_distance(am, word);
        return finish(g, json{{"amalgam", amalgam}, {"word", word}, {"distance", d}});
      }
      auto v = rankone::wall_cocycle_norm(am, word);
      return finish(g, json{{"amalgam", amalgam}, {"word", word},
                            {"norm_sq", v.norm_sq}});
    }
    if (c_tree_probe->parsed()) {
      auto am = rankone::parse_amalgam(amalgam);
      if (!gens_csv.empty()) {
        am.generator_words.clear();
        std::size_t pos = 0;
        while (pos != std::string::npos) {
          auto comma = gens_csv.find(',', pos);
          am.generator_words.push_back(gens_csv.substr(
              pos, comma == std::string::npos ? comma : comma - pos));
          pos = comma == std::string::npos ? comma : comma + 1;
        }
      }
      auto r = rankone::fixed_point_probe(am, cap);
      json j;
      j["amalgam"] = amalgam;
      j["result"] = rankone::probe_kind_name(r.kind);
      j["witness"] = r.witness;
      if (r.kind == rankone::ProbeResult::Kind::unbounded)
        j["translation_length"] = r.translation_length;
      return finish(g, j,
                    r.kind == rankone::ProbeResult::Kind::inconclusive ? 2 : 0);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "no subcommand dispatched\n";
  return 1;
}
