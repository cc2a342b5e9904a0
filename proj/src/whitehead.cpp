#include "casson/whitehead.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "casson/elimination.hpp"
#include "casson/roots.hpp"

namespace casson {

namespace {

const std::vector<std::string> kGens = {"x", "y"};

Word wparse(const char* src) { return Word::parse(src, kGens); }

}  // namespace

Presentation whitehead_presentation() {
  Presentation p;
  p.generators = kGens;
  Word lhs = wparse("y x Y X y X Y x");
  Word rhs = wparse("x Y X y X Y x y");
  p.relators = {lhs * rhs.inverse()};
  p.meridian = wparse("x");
  p.longitude = wparse("Y x y X y x Y X");  // lambda_x
  return p;
}

Word whitehead_lambda_y() { return wparse("Y X y x Y x y X"); }

MPoly f_poly() {
  static const MPoly f = [] {
    std::vector<std::string> vars = {"s", "t", "u", "v"};
    MPoly f(vars);
    auto add = [&](long c, int es, int et, int eu, int ev) {
      f.set({es, et, eu, ev}, Rat(c));
    };
    // u^2 v^2 (st)^3
    add(1, 3, 3, 2, 2);
    // uv(u^2 v^2 - 2u^2 - 2v^2 + 1)(st)^2
    add(1, 2, 2, 3, 3);
    add(-2, 2, 2, 3, 1);
    add(-2, 2, 2, 1, 3);
    add(1, 2, 2, 1, 1);
    // (u^4 + v^4 - u^2(v^2-1)^2 - v^2(u^2-1)^2) st
    add(1, 1, 1, 4, 0);
    add(1, 1, 1, 0, 4);
    add(-1, 1, 1, 2, 4);
    add(-1, 1, 1, 4, 2);
    add(4, 1, 1, 2, 2);
    add(-1, 1, 1, 2, 0);
    add(-1, 1, 1, 0, 2);
    // uv(u^2-1)(v^2-1)
    add(1, 0, 0, 3, 3);
    add(-1, 0, 0, 3, 1);
    add(-1, 0, 0, 1, 3);
    add(1, 0, 0, 1, 1);
    return f;
  }();
  return f;
}

void WhiteheadChart::check() const {
  if (std::abs(u) < 1e-300 || std::abs(v) < 1e-300)
    throw WhiteheadError("chart requires u, v nonzero");
  if (chart == ChartKind::U1 && s != Cplx(1))
    throw WhiteheadError("chart U1 requires s = 1");
  if (chart == ChartKind::U2 && t != Cplx(1))
    throw WhiteheadError("chart U2 requires t = 1");
  if (chart == ChartKind::Diagonal && (s != Cplx(0) || t != Cplx(0)))
    throw WhiteheadError("diagonal chart requires s = t = 0");
}

Cplx f_eval(const WhiteheadChart& c) {
  return f_poly().eval({c.s, c.t, c.u, c.v});
}

std::map<std::string, Mat2c> chart_rep(const WhiteheadChart& c) {
  c.check();
  std::map<std::string, Mat2c> rep;
  rep["x"] = {c.u, c.s, Cplx(0), Cplx(1) / c.u};
  rep["y"] = {c.v, Cplx(0), c.t, Cplx(1) / c.v};
  return rep;
}

double relator_residual(const WhiteheadChart& c) {
  static const Word lhs = wparse("y x Y X y X Y x");
  static const Word rhs = wparse("x Y X y X Y x y");
  auto rep = chart_rep(c);
  return frobenius_norm(eval_word(lhs, rep, identity_c()) -
                        eval_word(rhs, rep, identity_c()));
}

nlohmann::json EquivalenceReport::to_json() const {
  nlohmann::json j;
  j["samples"] = samples;
  j["on_curve_failures"] = on_curve_failures;
  j["off_curve_failures"] = off_curve_failures;
  j["root_failures"] = root_failures;
  j["ok"] = ok();
  j["failures"] = failures;
  return j;
}

EquivalenceReport f_equivalence_check(int samples, std::uint64_t seed) {
  if (samples < 1) throw WhiteheadError("samples must be positive");
  EquivalenceReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 6.2831853);

  auto draw_unit_safe = [&] {
    for (;;) {
      Cplx z = std::polar(radius(rng), angle(rng));
      if (std::abs(z - 1.0) > 0.15 && std::abs(z + 1.0) > 0.15) return z;
    }
  };

  for (int i = 0; i < samples; ++i) {
    Cplx u = draw_unit_safe(), v = draw_unit_safe();
    Cplx u2 = u * u, v2 = v * v, uv = u * v;
    // f(1, w, u, v) as a cubic in w = st
    std::vector<Cplx> cubic = {
        uv * (u2 - 1.0) * (v2 - 1.0),
        u2 * u2 + v2 * v2 - u2 * (v2 - 1.0) * (v2 - 1.0) - v2 * (u2 - 1.0) * (u2 - 1.0),
        uv * (u2 * v2 - 2.0 * u2 - 2.0 * v2 + 1.0),
        u2 * v2};
    std::vector<Cplx> roots;
    try {
      roots = aberth(cubic);
    } catch (const RootFindingError&) {
      ++rep.root_failures;
      rep.failures.push_back("sample " + std::to_string(i) + ": cubic solver failed");
      continue;
    }
    for (Cplx w : roots) {
      WhiteheadChart c{Cplx(1), w, u, v, ChartKind::U1};
      double r = relator_residual(c);
      if (r >= 1e-9) {
        ++rep.on_curve_failures;
        rep.failures.push_back("sample " + std::to_string(i) +
                               ": on-curve residual " + std::to_string(r));
      }
    }
    // matched off-curve probe at the same (u, v)
    Cplx w_off;
    for (;;) {
      w_off = std::polar(radius(rng), angle(rng));
      Cplx fval = ((cubic[3] * w_off + cubic[2]) * w_off + cubic[1]) * w_off + cubic[0];
      if (std::abs(fval) > 1e-4) break;
    }
    WhiteheadChart c{Cplx(1), w_off, u, v, ChartKind::U1};
    if (relator_residual(c) <= 1e-6) {
      ++rep.off_curve_failures;
      rep.failures.push_back("sample " + std::to_string(i) + ": off-curve residual too small");
    }
  }
  return rep;
}

WhiteheadChart reducible_nonabelian_family(ParabolicSide side, int sign, Cplx param) {
  if (sign != 1 && sign != -1) throw WhiteheadError("sign must be +-1");
  if (param == Cplx(0) || param == Cplx(1) || param == Cplx(-1))
    throw WhiteheadError("family parameter must avoid 0 and +-1");
  WhiteheadChart c;
  if (side == ParabolicSide::X) {
    c.s = 1;
    c.t = 0;
    c.u = sign;
    c.v = param;
  } else {
    c.s = 0;
    c.t = 1;
    c.u = param;
    c.v = sign;
  }
  return c;
}

FamilyCertificate reducible_nonabelian_certificate(ParabolicSide side, int sign) {
  if (sign != 1 && sign != -1) throw WhiteheadError("sign must be +-1");
  std::vector<std::string> vars = {"p"};
  MPoly p = MPoly::variable(vars, "p");
  MPoly pi = MPoly::monomial(vars, 1, {-1});
  MPoly one = MPoly::constant(vars, 1);
  MPoly sg = MPoly::constant(vars, sign);
  MPoly zero = MPoly(vars);

  std::map<std::string, Mat2p> rep;
  if (side == ParabolicSide::X) {
    rep["x"] = {sg, one, zero, sg};
    rep["y"] = {p, zero, zero, pi};
  } else {
    rep["x"] = {p, zero, zero, pi};
    rep["y"] = {sg, zero, one, sg};
  }
  Mat2p id = identity_p(vars);
  Presentation w = whitehead_presentation();
  Mat2p r = eval_word(w.relators[0], rep, id);

  FamilyCertificate cert;
  cert.relator_exact = (r == id);
  cert.trace_y = rep["y"].trace();
  cert.trace_lambda_y = eval_word(whitehead_lambda_y(), rep, id).trace();
  return cert;
}

std::string component_name(Component c) {
  switch (c) {
    case Component::X0: return "X0";
    case Component::X1: return "X1";
    case Component::X0capX1: return "X0capX1";
    default: return "indeterminate";
  }
}

Component component_membership(const WhiteheadChart& c, double tol) {
  if (relator_residual(c) > 1e-6)
    throw WhiteheadError("chart point does not satisfy the relator");
  auto rep = chart_rep(c);
  Mat2c comm = rep["x"] * rep["y"] * rep["x"].inverse() * rep["y"].inverse();
  double d = std::abs(comm.trace() - Cplx(2));
  if (d > 1e-4) return Component::X1;
  if (d >= tol) return Component::Indeterminate;
  // reducible character
  if (std::abs(c.s) < tol && std::abs(c.t) < tol) {
    auto central = [&](Cplx e) {
      return std::abs(e - 1.0) < tol || std::abs(e + 1.0) < tol;
    };
    return (central(c.u) || central(c.v)) ? Component::X0capX1 : Component::X0;
  }
  // nonzero off-diagonal data with reducible character: the reducible
  // nonabelian family, which lies in the closure of the irreducibles
  return Component::X0capX1;
}

nlohmann::json GluingConfig::to_json() const {
  auto cx = [](Cplx z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json j;
  j["n"] = n;
  j["residual"] = residual;
  j["rho1"] = {{"m", cx(rho1.m)}, {"s", cx(rho1.s)}, {"abelian", rho1.abelian}};
  j["chart"] = {{"s", cx(chart.s)}, {"t", cx(chart.t)}, {"u", cx(chart.u)}, {"v", cx(chart.v)}};
  j["conjugator"] = {cx(conj.a), cx(conj.b), cx(conj.c), cx(conj.d)};
  return j;
}

std::map<std::string, Mat2c> rho1_rep(const GluingConfig& g) {
  if (g.rho1.abelian) {
    std::map<std::string, Mat2c> rep;
    for (const auto& gen : g.J.generators)
      rep[gen] = {g.rho1.m, Cplx(0), Cplx(0), Cplx(1) / g.rho1.m};
    return rep;
  }
  return riley_chart_at(g.J, g.rho1.m, g.rho1.s);
}

std::map<std::string, Mat2c> rho2_rep(const GluingConfig& g) {
  return chart_rep(g.chart);
}

double gluing_residual(const GluingConfig& g) {
  auto r1 = rho1_rep(g);
  auto r2 = rho2_rep(g);
  Mat2c ci = g.conj.inverse();
  Cplx dscale = g.conj.det();
  // the stored conjugator is only approximately unimodular; divide the
  // adjugate by det to conjugate consistently
  ci = {ci.a / dscale, ci.b / dscale, ci.c / dscale, ci.d / dscale};
  Word lam_y = whitehead_lambda_y();
  Word y = wparse("y");
  Mat2c lhs1 = eval_word(g.J.meridian, r1, identity_c());
  Mat2c rhs1 = g.conj * eval_word(lam_y, r2, identity_c()) * ci;
  Mat2c lhs2 = eval_word(g.J.longitude, r1, identity_c());
  Mat2c rhs2 = g.conj * eval_word(y * lam_y.pow(g.n), r2, identity_c()) * ci;
  return frobenius_norm(lhs1 - rhs1) + frobenius_norm(lhs2 - rhs2);
}

namespace {

struct GluingSystem {
  Presentation J;
  MPoly phi;  // Riley polynomial in (m, s, l); constant in abelian mode
  bool abelian = false;
  int n = 0;
  Word lam_y = whitehead_lambda_y();
  Word glue2_w;  // y * lambda_y^n
  Word relator_w = whitehead_presentation().relators[0];

  // In the abelian mode rho1 is central-diagonal, so the gluing is imposed
  // entrywise with an explicit conjugator unknown. In the irreducible mode
  // the conjugator is eliminated: simultaneous conjugacy of the two
  // commuting boundary pairs is imposed through traces of mu, lambda, and
  // mu*lambda, and the conjugator is recovered linearly afterwards.
  int num_unknowns() const { return abelian ? 1 + 4 + 4 : 2 + 4; }
  int num_equations() const { return abelian ? 4 + 4 + 4 + 1 : 1 + 4 + 3; }

  GluingConfig unpack(const Eigen::VectorXcd& z) const {
    GluingConfig g;
    g.J = J;
    g.n = n;
    int i = 0;
    g.rho1.m = z(i++);
    g.rho1.abelian = abelian;
    if (!abelian) g.rho1.s = z(i++);
    g.chart.s = z(i++);
    g.chart.t = z(i++);
    g.chart.u = z(i++);
    g.chart.v = z(i++);
    if (abelian) g.conj = {z(i), z(i + 1), z(i + 2), z(i + 3)};
    return g;
  }

  Eigen::VectorXcd residual_vec(const Eigen::VectorXcd& z) const {
    GluingConfig g = unpack(z);
    std::vector<Cplx> f;
    if (std::abs(g.rho1.m) < 1e-8 || std::abs(g.chart.u) < 1e-8 ||
        std::abs(g.chart.v) < 1e-8) {
      // poles of the chart; report a large residual instead of dividing by ~0
      return Eigen::VectorXcd::Constant(num_equations(), Cplx(1e6));
    }
    auto r1 = rho1_rep(g);
    auto r2 = rho2_rep(g);
    Mat2c rel = eval_word(relator_w, r2, identity_c()) - identity_c();
    Mat2c mu1 = eval_word(J.meridian, r1, identity_c());
    Mat2c la1 = eval_word(J.longitude, r1, identity_c());
    Mat2c mu2 = eval_word(lam_y, r2, identity_c());
    Mat2c la2 = eval_word(glue2_w, r2, identity_c());
    if (abelian) {
      f.insert(f.end(), {rel.a, rel.b, rel.c, rel.d});
      Mat2c ci = g.conj.inverse();
      Mat2c glue1 = mu1 - g.conj * mu2 * ci;
      Mat2c glue2 = la1 - g.conj * la2 * ci;
      f.insert(f.end(), {glue1.a, glue1.b, glue1.c, glue1.d});
      f.insert(f.end(), {glue2.a, glue2.b, glue2.c, glue2.d});
      f.push_back(g.conj.det() - Cplx(1));
    } else {
      f.push_back(phi.eval({g.rho1.m, g.rho1.s, Cplx(1)}));
      f.insert(f.end(), {rel.a, rel.b, rel.c, rel.d});
      f.push_back(mu1.trace() - mu2.trace());
      f.push_back(la1.trace() - la2.trace());
      f.push_back((mu1 * la1).trace() - (mu2 * la2).trace());
    }
    Eigen::VectorXcd out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out(i) = f[i];
    return out;
  }

  // Conjugator with rho1(w) C = C rho2(w) for both gluing words, from the
  // null space of the stacked Sylvester system; false when no consistent
  // conjugator exists.
  bool recover_conjugator(GluingConfig* g) const {
    auto r1 = rho1_rep(*g);
    auto r2 = rho2_rep(*g);
    Mat2c pairs[2][2] = {
        {eval_word(J.meridian, r1, identity_c()), eval_word(lam_y, r2, identity_c())},
        {eval_word(J.longitude, r1, identity_c()), eval_word(glue2_w, r2, identity_c())}};
    Eigen::MatrixXcd A(8, 4);
    for (int k = 0; k < 2; ++k) {
      const Mat2c& P = pairs[k][0];
      const Mat2c& Q = pairs[k][1];
      A.row(4 * k + 0) << P.a - Q.a, -Q.c, P.b, Cplx(0);
      A.row(4 * k + 1) << -Q.b, P.a - Q.d, Cplx(0), P.b;
      A.row(4 * k + 2) << P.c, Cplx(0), P.d - Q.a, -Q.c;
      A.row(4 * k + 3) << Cplx(0), P.c, -Q.b, P.d - Q.d;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    if (svd.singularValues()(3) > 1e-7 * std::max(1.0, svd.singularValues()(0)))
      return false;
    Eigen::VectorXcd v = svd.matrixV().col(3);
    Mat2c c = {v(0), v(1), v(2), v(3)};
    Cplx d = c.det();
    if (std::abs(d) < 1e-10) return false;
    Cplx r = std::sqrt(d);
    g->conj = {c.a / r, c.b / r, c.c / r, c.d / r};
    return true;
  }
};

}  // namespace

std::vector<GluingConfig> solve_gluing(const Presentation& J, int n, int seeds,
                                       const SolveOptions& opts) {
  if (seeds < 1) throw WhiteheadError("seeds must be positive");
  GluingSystem sys;
  sys.J = J;
  sys.n = n;
  sys.glue2_w = wparse("y") * whitehead_lambda_y().pow(n);
  RileyResult riley = riley_polynomial(J);
  sys.abelian = riley.phi.is_constant();
  sys.phi = riley.phi;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> radius(0.3, 3.0), angle(0.0, 6.2831853);
  std::uniform_real_distribution<double> radius_m(0.6, 1.7);
  auto draw = [&] { return std::polar(radius(rng), angle(rng)); };

  // start rho1 on the Riley curve: pick m near the unit circle and solve
  // phi(m, s) = 0 for s, so only the gluing equations are far from zero
  auto draw_riley_start = [&]() -> std::pair<Cplx, Cplx> {
    for (int tries = 0; tries < 20; ++tries) {
      Cplx m0 = std::polar(radius_m(rng), angle(rng));
      int is = sys.phi.var_index("s");
      std::vector<Cplx> co;
      for (int e = 0; e <= sys.phi.degree_in(is); ++e)
        co.push_back(sys.phi.coeff_of(is, e).eval({m0, Cplx(0), Cplx(1)}));
      while (co.size() > 1 && std::abs(co.back()) < 1e-12) co.pop_back();
      if (co.size() < 2) continue;
      try {
        auto roots = aberth(co);
        return {m0, roots[rng() % roots.size()]};
      } catch (const RootFindingError&) {
      }
    }
    return {draw(), draw()};
  };

  const int nu = sys.num_unknowns();
  std::vector<GluingConfig> found;
  for (int trial = 0; trial < seeds; ++trial) {
    Eigen::VectorXcd z(nu);
    for (int i = 0; i < nu; ++i) z(i) = draw();
    if (sys.abelian) {
      // start the conjugator near a generic unimodular matrix
      z(nu - 4) = draw();
      z(nu - 1) = (Cplx(1) + z(nu - 3) * z(nu - 2)) / z(nu - 4);
    } else {
      auto [m0, s0] = draw_riley_start();
      z(0) = m0;
      z(1) = s0;
    }

    Eigen::VectorXcd F = sys.residual_vec(z);
    double res = F.norm();
    double lambda = 1e-3;
    for (int iter = 0; iter < opts.max_iter && res >= opts.target; ++iter) {
      Eigen::MatrixXcd Jm(F.size(), nu);
      for (int j = 0; j < nu; ++j) {
        double h = 1e-7 * (1.0 + std::abs(z(j)));
        Eigen::VectorXcd zp = z;
        zp(j) += h;
        Jm.col(j) = (sys.residual_vec(zp) - F) / h;
      }
      // Levenberg-Marquardt step with adaptive damping
      Eigen::MatrixXcd JtJ = Jm.adjoint() * Jm;
      Eigen::VectorXcd Jtf = Jm.adjoint() * F;
      bool improved = false;
      for (int attempt = 0; attempt < 9; ++attempt) {
        Eigen::MatrixXcd M = JtJ;
        M.diagonal().array() += Cplx(lambda);
        Eigen::VectorXcd zt = z + M.ldlt().solve(-Jtf);
        Eigen::VectorXcd Ft = sys.residual_vec(zt);
        if (Ft.norm() < res) {
          z = zt;
          F = Ft;
          res = F.norm();
          lambda = std::max(lambda * 0.3, 1e-14);
          improved = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!improved) break;
    }
    if (res > opts.accept) continue;
    GluingConfig g = sys.unpack(z);
    auto mag_ok = [](Cplx w) { return std::abs(w) > 1e-3 && std::abs(w) < 1e3; };
    if (!mag_ok(g.rho1.m) || !mag_ok(g.chart.u) || !mag_ok(g.chart.v)) continue;
    if (!sys.abelian && !sys.recover_conjugator(&g)) continue;
    g.residual = gluing_residual(g);
    if (g.residual > opts.accept) continue;
    found.push_back(std::move(g));
  }

  auto key = [](const GluingConfig& g) {
    return std::array<double, 9>{g.residual,       g.rho1.m.real(),  g.rho1.m.imag(),
                                 g.chart.u.real(), g.chart.u.imag(), g.chart.v.real(),
                                 g.chart.v.imag(), g.chart.s.real(), g.chart.t.real()};
  };
  std::sort(found.begin(), found.end(),
            [&](const GluingConfig& a, const GluingConfig& b) { return key(a) < key(b); });
  return found;
}

GluingConfig bend(const GluingConfig& g, Cplx a) {
  if (a == Cplx(0)) throw WhiteheadError("bending parameter must be nonzero");
  auto r2 = rho2_rep(g);
  Mat2c ci = g.conj.inverse();
  Cplx dd = g.conj.det();
  ci = {ci.a / dd, ci.b / dd, ci.c / dd, ci.d / dd};
  Mat2c ty = g.conj * r2.at("y") * ci;
  Mat2c tl = g.conj * eval_word(whitehead_lambda_y(), r2, identity_c()) * ci;
  double scale = std::max(1.0, frobenius_norm(ty) + frobenius_norm(tl));
  if (std::abs(ty.b) + std::abs(ty.c) + std::abs(tl.b) + std::abs(tl.c) > 1e-8 * scale)
    throw WhiteheadError("boundary-torus images are not diagonal in the glued frame");
  auto central = [](Cplx e) {
    return std::abs(e - 1.0) < 1e-8 || std::abs(e + 1.0) < 1e-8;
  };
  if (central(ty.a) && central(tl.a))
    throw WhiteheadError("boundary restriction is central; bending is trivial here");
  GluingConfig out = g;
  Mat2c A = {a, Cplx(0), Cplx(0), Cplx(1) / a};
  out.conj = A * g.conj;
  out.residual = gluing_residual(out);
  return out;
}

std::map<std::string, Mat2q> bend(const std::map<std::string, Mat2q>& rho2,
                                  const Word& shared_meridian, const Rat& a) {
  if (a == 0) throw WhiteheadError("bending parameter must be nonzero");
  Mat2q mu = eval_word(shared_meridian, rho2, identity_q());
  if (mu.b != 0 || mu.c != 0)
    throw WhiteheadError("shared meridian image is not diagonal");
  if (mu.a == 1 || mu.a == -1)
    throw WhiteheadError("shared meridian eigenvalue is central");
  std::map<std::string, Mat2q> out;
  for (const auto& [gen, mat] : rho2) out[gen] = bend_conjugate(mat, a);
  return out;
}

}  // namespace casson
