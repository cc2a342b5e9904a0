#include "casson/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "casson/elimination.hpp"
#include "casson/invariants.hpp"
#include "casson/roots.hpp"
#include "casson/surgery.hpp"
#include "casson/whitehead.hpp"

#ifndef CASSON_DEFAULT_DB
#define CASSON_DEFAULT_DB "data/knots.json"
#endif

namespace casson {

namespace {

class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

class NonConvergence : public std::runtime_error {
public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct Ctx {
  std::ostream* out;
  bool json = false;
  std::string format = "text";
  std::string db_flag;
  std::uint64_t seed = 12345;
  int exit_code = 0;

  std::string db_path() const {
    if (!db_flag.empty()) return db_flag;
    if (const char* env = std::getenv("CASSON_DB")) return env;
    return CASSON_DEFAULT_DB;
  }

  void emit(const nlohmann::json& j, const std::string& text) const {
    if (json)
      *out << j.dump() << "\n";
    else
      *out << text;
  }
};

KnotRecord find_knot(const Ctx& ctx, const std::string& name) {
  for (auto& k : load_db(ctx.db_path())) {
    if (k.name == name) return k;
  }
  throw InvariantError("knot '" + name + "' not in database " + ctx.db_path());
}

// Resolve the single input source for curve commands: a db knot name or an
// inline JSON polynomial.
BiLaurent resolve_curve(const Ctx& ctx, const std::string& name, const std::string& inline_json) {
  if (!name.empty() && !inline_json.empty())
    throw UsageError("give either a knot name or --ahat, not both");
  if (!name.empty()) return find_knot(ctx, name).ahat;
  if (!inline_json.empty()) {
    try {
      return normalize(BiLaurent::from_json(nlohmann::json::parse(inline_json)));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad --ahat JSON: ") + e.what());
    }
  }
  throw UsageError("a knot name or --ahat is required");
}

Presentation read_presentation(const std::string& src) {
  std::string text;
  if (src == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(src);
    if (!in) throw UsageError("cannot open presentation file " + src);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Presentation::from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad presentation JSON: ") + e.what());
  }
}

std::string rat_str(const Rat& r) { return r.get_str(); }

nlohmann::json slope_json(const Slope& s) {
  return {{"p", s.p}, {"q", s.q}};
}

void cmd_ahat_deg(Ctx& ctx, const BiLaurent& a) {
  int dm = deg_m(a), dl = deg_l(a);
  std::ostringstream t;
  t << "deg_m = " << dm << "\ndeg_l = " << dl << "\n";
  ctx.emit({{"deg_m", dm}, {"deg_l", dl}}, t.str());
}

void cmd_ahat_mul(Ctx& ctx, const BiLaurent& a, const BiLaurent& b) {
  BiLaurent p = normalize(a * b);
  ctx.emit({{"ahat", p.to_json()}}, p.str() + "\n");
}

void cmd_lambda(Ctx& ctx, const KnotRecord& k) {
  Rat l = lambda_prime(k);
  ctx.emit({{"knot", k.name}, {"lambda_prime", rat_str(l)}}, rat_str(l) + "\n");
}

void cmd_lambda_asym(Ctx& ctx, const KnotRecord& k, int p, int q_max) {
  if (q_max < 2) throw UsageError("--q-max must be >= 2");
  AsymptoticResult r = lambda_prime_asymptotic(k, p, q_max);
  nlohmann::json est = nlohmann::json::array();
  for (auto& [q, v] : r.estimates) est.push_back({q, rat_str(v)});
  nlohmann::json j = {{"knot", k.name},
                      {"p", p},
                      {"estimates", est},
                      {"extrapolated", rat_str(r.extrapolated)}};
  std::ostringstream t;
  if (ctx.format == "csv") {
    t << "q,estimate\n";
    for (auto& [q, v] : r.estimates) t << q << "," << rat_str(v) << "\n";
  } else {
    for (auto& [q, v] : r.estimates)
      t << "q = " << q << "  estimate = " << rat_str(v) << "\n";
    t << "extrapolated = " << rat_str(r.extrapolated) << "\n";
  }
  ctx.emit(j, t.str());
}

void cmd_surgery_intersect(Ctx& ctx, const BiLaurent& a, int p, int q, bool points) {
  Slope slope(p, q);
  if (points) {
    IntersectionReport rep;
    try {
      rep = intersection_points(a, slope);
    } catch (const RootFindingError& e) {
      throw NonConvergence(e.what());
    }
    std::ostringstream t;
    t << "total = " << rep.total << "\nd = " << rep.clearing_exponent << "\n";
    for (const auto& pt : rep.points)
      t << "t = (" << pt.t.real() << ", " << pt.t.imag() << ")  mult = " << pt.multiplicity
        << "  kind = " << kind_name(pt.kind) << "  residual = " << pt.residual << "\n";
    ctx.emit(rep.to_json(), t.str());
    return;
  }
  int d = 0;
  IntPoly1 sub = substitute_surgery(a, slope, &d);
  int total = total_intersection(a, slope);
  std::ostringstream t;
  t << "total = " << total << "\nd = " << d << "\n";
  ctx.emit({{"slope", slope_json(slope)}, {"total", total}, {"d", d}}, t.str());
}

void cmd_surgery_growth(Ctx& ctx, const BiLaurent& a, int p) {
  GrowthParams g = linear_growth_params(a, p);
  std::ostringstream t;
  t << "n = " << g.n << "\nc = " << g.c << "\nq0 = " << g.q0 << "\n";
  ctx.emit({{"p", p}, {"n", g.n}, {"c", g.c}, {"q0", g.q0}}, t.str());
}

void cmd_transversal(Ctx& ctx, const std::string& s1, const std::string& s2) {
  Slope a = Slope::parse(s1), b = Slope::parse(s2);
  TransversalityCertificate cert = transversal(a, b);
  std::ostringstream t;
  t << (cert.transverse ? "transverse" : "not transverse") << " (det=" << cert.determinant
    << ")\n";
  ctx.emit({{"a", slope_json(a)},
            {"b", slope_json(b)},
            {"determinant", cert.determinant},
            {"transverse", cert.transverse}},
           t.str());
}

void cmd_alexander_double(Ctx& ctx, long n) {
  IntPoly1 d = alexander_twisted_double(n);
  ctx.emit({{"n", n}, {"alexander", d.to_json()}}, d.str() + "\n");
}

void cmd_admissible(Ctx& ctx, const KnotRecord& k, int p) {
  AdmissibleResult r = admissible_condition_ii(k.alexander, p);
  std::ostringstream t;
  if (r.ok)
    t << "admissible (p'=" << r.p_prime << ")\n";
  else
    t << "not admissible (p'=" << r.p_prime << "), witness " << r.witness.str() << "\n";
  nlohmann::json j = {{"knot", k.name}, {"p", p}, {"p_prime", r.p_prime}, {"admissible", r.ok}};
  if (!r.ok) j["witness"] = r.witness.to_json();
  ctx.emit(j, t.str());
}

void cmd_apoly(Ctx& ctx, const std::string& src) {
  Presentation p = read_presentation(src);
  BiLaurent a = a_polynomial(p);
  ctx.emit({{"apoly", a.to_json()}, {"deg_m", deg_m(a)}, {"deg_l", deg_l(a)}}, a.str() + "\n");
}

void cmd_seminorm(Ctx& ctx, const BiLaurent& curve, int a, int b, int trials) {
  SeminormQuery q;
  q.curve = curve;
  q.a = a;
  q.b = b;
  SeminormResult r = eigenvalue_seminorm(q, trials, ctx.seed);
  std::ostringstream t;
  t << r.value << (r.degenerate ? " (degenerate)" : "") << "\n";
  ctx.emit({{"a", a}, {"b", b}, {"value", r.value}, {"degenerate", r.degenerate}}, t.str());
}

void cmd_whitehead_verify(Ctx& ctx, int samples) {
  EquivalenceReport rep = f_equivalence_check(samples, ctx.seed);
  std::ostringstream t;
  t << "samples = " << rep.samples << "\non-curve failures = " << rep.on_curve_failures
    << "\noff-curve failures = " << rep.off_curve_failures
    << "\nroot failures = " << rep.root_failures << "\n"
    << (rep.ok() ? "ok" : "FAILED") << "\n";
  ctx.emit(rep.to_json(), t.str());
  if (!rep.ok()) ctx.exit_code = 3;
}

void cmd_whitehead_glue(Ctx& ctx, const KnotRecord& k, int n, int seeds) {
  if (!k.presentation) throw InvariantError("knot '" + k.name + "' has no presentation");
  SolveOptions opts;
  opts.seed = ctx.seed;
  auto sols = solve_gluing(*k.presentation, n, seeds, opts);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : sols) arr.push_back(s.to_json());
  std::ostringstream t;
  t << sols.size() << " solutions\n";
  for (const auto& s : sols)
    t << "residual = " << s.residual << "  m = (" << s.rho1.m.real() << ", " << s.rho1.m.imag()
      << ")  u = (" << s.chart.u.real() << ", " << s.chart.u.imag() << ")  v = ("
      << s.chart.v.real() << ", " << s.chart.v.imag() << ")\n";
  ctx.emit({{"knot", k.name}, {"n", n}, {"solutions", arr}}, t.str());
}

void cmd_db_validate(Ctx& ctx) {
  std::vector<std::string> issues;
  auto records = load_db(ctx.db_path(), &issues);
  nlohmann::json names = nlohmann::json::array();
  for (const auto& k : records) names.push_back(k.name);
  std::ostringstream t;
  if (issues.empty()) {
    t << "ok (" << records.size() << " records)\n";
  } else {
    t << records.size() << " valid records, " << issues.size() << " rejected:\n";
    for (const auto& i : issues) t << "  " << i << "\n";
  }
  ctx.emit({{"records", names}, {"issues", issues}}, t.str());
  if (!issues.empty()) ctx.exit_code = 1;
}

}  // namespace

int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Ctx ctx;
  ctx.out = &out;

  CLI::App app{"exact SL(2,C) Casson knot invariant toolkit"};
  app.require_subcommand(1);
  app.add_flag("--json", ctx.json, "machine-readable JSON output");
  app.add_option("--format", ctx.format, "output format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--db", ctx.db_flag, "knot database path (or env CASSON_DB)");
  app.add_option("--seed", ctx.seed, "random seed for sampling commands");

  // ahat deg|mul
  auto* ahat = app.add_subcommand("ahat", "curve polynomial operations");
  ahat->require_subcommand(1);
  auto* ahat_deg = ahat->add_subcommand("deg", "degrees of the curve polynomial");
  std::string ad_knot, ad_inline;
  ahat_deg->add_option("knot", ad_knot, "knot name");
  ahat_deg->add_option("--ahat", ad_inline, "inline polynomial JSON");
  auto* ahat_mul = ahat->add_subcommand("mul", "product of two curve polynomials");
  std::string am_k1, am_k2;
  ahat_mul->add_option("knot1", am_k1, "first knot")->required();
  ahat_mul->add_option("knot2", am_k2, "second knot")->required();

  auto* lambda = app.add_subcommand("lambda", "Casson invariant of a knot");
  std::string l_knot;
  lambda->add_option("knot", l_knot, "knot name")->required();

  auto* lasym = app.add_subcommand("lambda-asym", "surgery-asymptotic estimates");
  std::string la_knot;
  int la_p = 1, la_qmax = 50;
  lasym->add_option("knot", la_knot, "knot name")->required();
  lasym->add_option("-p", la_p, "slope numerator");
  lasym->add_option("--q-max", la_qmax, "largest q");

  auto* surgery = app.add_subcommand("surgery", "surgery-curve intersections");
  surgery->require_subcommand(1);
  auto* s_int = surgery->add_subcommand("intersect", "intersection count with a surgery curve");
  std::string si_knot, si_inline;
  int si_p = 1, si_q = 1;
  bool si_points = false;
  s_int->add_option("knot", si_knot, "knot name");
  s_int->add_option("--ahat", si_inline, "inline polynomial JSON");
  s_int->add_option("-p", si_p, "slope numerator")->required();
  s_int->add_option("-q", si_q, "slope denominator")->required();
  s_int->add_flag("--points", si_points, "list the intersection points");
  auto* s_gro = surgery->add_subcommand("growth", "linear growth law in q");
  std::string sg_knot, sg_inline;
  int sg_p = 1;
  s_gro->add_option("knot", sg_knot, "knot name");
  s_gro->add_option("--ahat", sg_inline, "inline polynomial JSON");
  s_gro->add_option("-p", sg_p, "slope numerator")->required();

  auto* trans = app.add_subcommand("transversal", "transversality of two slopes");
  std::string t_s1, t_s2;
  trans->add_option("slope1", t_s1, "first slope p/q")->required();
  trans->add_option("slope2", t_s2, "second slope p/q")->required();

  auto* adub = app.add_subcommand("alexander-double", "Alexander polynomial of a twisted double");
  long n_twist = 0;
  adub->add_option("-n", n_twist, "twisting parameter")->required();

  auto* adm = app.add_subcommand("admissible", "root-of-unity condition on the Alexander polynomial");
  std::string adm_knot;
  int adm_p = 1;
  adm->add_option("knot", adm_knot, "knot name")->required();
  adm->add_option("-p", adm_p, "surgery numerator")->required();

  auto* apoly = app.add_subcommand("apoly", "A-polynomial from a presentation");
  std::string ap_src;
  apoly->add_option("--presentation", ap_src, "presentation JSON file, or - for stdin")
      ->required();

  auto* semi = app.add_subcommand("seminorm", "eigenvalue-curve seminorm of a boundary class");
  std::string sm_knot, sm_inline;
  int sm_a = 0, sm_b = 0, sm_trials = 5;
  semi->add_option("knot", sm_knot, "knot name");
  semi->add_option("--curve", sm_inline, "inline polynomial JSON");
  semi->add_option("-a", sm_a, "meridian coefficient")->required();
  semi->add_option("-b", sm_b, "longitude coefficient")->required();
  semi->add_option("--trials", sm_trials, "number of generic values");

  auto* wh = app.add_subcommand("whitehead", "Whitehead-link character variety");
  wh->require_subcommand(1);
  auto* wh_ver = wh->add_subcommand("verify", "statistical f <-> relator equivalence");
  int wv_samples = 500;
  wh_ver->add_option("--samples", wv_samples, "number of (u, v) samples");
  auto* wh_glue = wh->add_subcommand("glue", "solve the doubled-knot gluing equations");
  std::string wg_knot;
  int wg_n = 0, wg_seeds = 50;
  wh_glue->add_option("knot", wg_knot, "companion knot name")->required();
  wh_glue->add_option("-n", wg_n, "twisting parameter");
  wh_glue->add_option("--seeds", wg_seeds, "number of solver starts");

  auto* db = app.add_subcommand("db", "knot database maintenance");
  db->require_subcommand(1);
  db->add_subcommand("validate", "validate the knot database");

  // let the global flags appear after the subcommand as well
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (ctx.format == "json") ctx.json = true;
    if (ahat_deg->parsed()) cmd_ahat_deg(ctx, resolve_curve(ctx, ad_knot, ad_inline));
    if (ahat_mul->parsed())
      cmd_ahat_mul(ctx, find_knot(ctx, am_k1).ahat, find_knot(ctx, am_k2).ahat);
    if (lambda->parsed()) cmd_lambda(ctx, find_knot(ctx, l_knot));
    if (lasym->parsed()) cmd_lambda_asym(ctx, find_knot(ctx, la_knot), la_p, la_qmax);
    if (s_int->parsed())
      cmd_surgery_intersect(ctx, resolve_curve(ctx, si_knot, si_inline), si_p, si_q, si_points);
    if (s_gro->parsed()) cmd_surgery_growth(ctx, resolve_curve(ctx, sg_knot, sg_inline), sg_p);
    if (trans->parsed()) cmd_transversal(ctx, t_s1, t_s2);
    if (adub->parsed()) cmd_alexander_double(ctx, n_twist);
    if (adm->parsed()) cmd_admissible(ctx, find_knot(ctx, adm_knot), adm_p);
    if (apoly->parsed()) cmd_apoly(ctx, ap_src);
    if (semi->parsed()) cmd_seminorm(ctx, resolve_curve(ctx, sm_knot, sm_inline), sm_a, sm_b, sm_trials);
    if (wh_ver->parsed()) cmd_whitehead_verify(ctx, wv_samples);
    if (wh_glue->parsed()) cmd_whitehead_glue(ctx, find_knot(ctx, wg_knot), wg_n, wg_seeds);
    if (db->parsed()) cmd_db_validate(ctx);
    return ctx.exit_code;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (ctx.json)
      out << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
    else
      err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    if (ctx.json)
      out << nlohmann::json{{"error", e.what()}, {"code", 2}}.dump() << "\n";
    else
      err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergence& e) {
    if (ctx.json)
      out << nlohmann::json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
    else
      err << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const RootFindingError& e) {
    if (ctx.json)
      out << nlohmann::json{{"error", e.what()}, {"code", 3}}.dump() << "\n";
    else
      err << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    if (ctx.json)
      out << nlohmann::json{{"error", e.what()}, {"code", 1}}.dump() << "\n";
    else
      err << "error: " << e.what() << "\n";
    return 1;
  } catch (...) {
    err << "error: unknown failure\n";
    return 1;
  }
}

}  // namespace casson
