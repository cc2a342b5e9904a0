// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses only frozen constants.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casson/elimination.hpp"
#include "casson/invariants.hpp"
#include "casson/roots.hpp"
#include "casson/surgery.hpp"
#include "casson/whitehead.hpp"

#ifndef CASSON_DATA_DIR
#define CASSON_DATA_DIR "data"
#endif

using namespace casson;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<KnotRecord> g_db;

KnotRecord get(const std::string& name) {
  for (const auto& k : g_db)
    if (k.name == name) return k;
  throw std::runtime_error("missing db record " + name);
}

BiLaurent trefoil_curve() {  // 1 + m^6 l
  return BiLaurent::constant(1) + BiLaurent::monomial(1, 6, 1);
}

// 1: elimination oracle on the trefoil presentation
void criterion1(Check& c) {
  KnotRecord tre = get("trefoil");
  BiLaurent a = a_polynomial(*tre.presentation);
  c.require(a == trefoil_curve(), "curve polynomial mismatch");
  c.require(squarefree_part(a) == a, "curve polynomial not square-free");
  c.require(deg_m(a) == 6, "deg_m != 6");
  c.require(lambda_prime(tre) == Rat(3), "invariant != 3");

  RileyResult riley = riley_polynomial(*tre.presentation);
  int sv = riley.phi.var_index("s");
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> rad(0.7, 1.4), th(0.0, 6.28);
  int lifted = 0;
  for (int trial = 0; trial < 60 && lifted < 20; ++trial) {
    Cplx m = std::polar(rad(rng), th(rng));
    // l-roots of the curve over m
    std::vector<Cplx> lc;
    for (int e = 0; e <= deg_l(a); ++e) {
      Cplx v = 0;
      for (const auto& [k, coeff] : a.terms())
        if (k.second == e) v += Cplx(coeff.get_d()) * std::pow(m, k.first);
      lc.push_back(v);
    }
    while (lc.size() > 1 && std::abs(lc.back()) < 1e-12) lc.pop_back();
    if (lc.size() < 2) continue;
    // s-roots of the chart polynomial over m
    std::vector<Cplx> sc;
    for (int e = 0; e <= riley.phi.degree_in(sv); ++e)
      sc.push_back(riley.phi.coeff_of(sv, e).eval({m, Cplx(0), Cplx(0)}));
    while (sc.size() > 1 && std::abs(sc.back()) < 1e-12) sc.pop_back();
    std::vector<Cplx> s_roots = aberth(sc);
    for (Cplx l : aberth(lc)) {
      double best = 1e100;
      for (Cplx s : s_roots) {
        auto rep = riley_chart_at(*tre.presentation, m, s);
        double res =
            frobenius_norm(eval_word(tre.presentation->relators[0], rep, identity_c()) -
                           identity_c()) +
            std::abs(eval_word(tre.presentation->longitude, rep, identity_c()).a - l);
        best = std::min(best, res);
      }
      c.require(best < 1e-8, "curve point fails to lift to the chart");
      ++lifted;
    }
  }
  c.require(lifted >= 20, "fewer than 20 lifted curve points");
}

// 2: linear growth of the intersection count
void criterion2(Check& c) {
  BiLaurent a = trefoil_curve();
  for (int p = 1; p <= 3; ++p) {
    GrowthParams g = linear_growth_params(a, p);
    c.require(g.n == 6, "slope of the growth law != 6");
    for (int q = std::max(2, g.q0 + 1); q <= 200; ++q) {
      if (std::gcd(p, q) != 1) continue;
      if (total_intersection(a, Slope(p, q)) != 6 * q + g.c) {
        c.require(false, "growth law violated at q=" + std::to_string(q));
        return;
      }
    }
  }
  double est = 0.5 * total_intersection(a, Slope(1, 100)) / 100.0;
  c.require(std::abs(est - 3.0) < 0.05, "q=100 estimate not within 0.05 of 3");
}

// 3: product formula and additivity
void criterion3(Check& c) {
  KnotRecord tre = get("trefoil");
  KnotRecord sum = connected_sum(tre, tre);
  BiLaurent f = trefoil_curve();
  c.require(sum.ahat == normalize(f * f), "curve of the sum is not the exact square");
  for (const auto& k1 : g_db)
    for (const auto& k2 : g_db)
      c.require(lambda_prime(connected_sum(k1, k2)) == lambda_prime(k1) + lambda_prime(k2),
                "invariant not additive for " + k1.name + " # " + k2.name);
}

// 4: transversality certificates
void criterion4(Check& c) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pv(-30, 30), qv(0, 30);
  int done = 0;
  while (done < 100) {
    int p1 = pv(rng), q1 = qv(rng), p2 = pv(rng), q2 = qv(rng);
    if ((p1 == 0 && q1 == 0) || (p2 == 0 && q2 == 0)) continue;
    if (std::gcd(std::abs(p1), q1) != 1 || std::gcd(std::abs(p2), q2) != 1) continue;
    Slope a(p1, q1), b(p2, q2);
    if (a == b) continue;
    TransversalityCertificate cert = transversal(a, b);
    c.require(cert.transverse && cert.determinant != 0, "pair not certified transverse");
    c.require(cert.determinant == long(a.p) * b.q - long(b.p) * a.q, "determinant mismatch");
    for (Slope s : {a, b}) c.require(!check_nonsingular(s).reason.empty(), "no certificate");
    ++done;
  }
}

// 5: chart polynomial vs relator
void criterion5(Check& c) {
  EquivalenceReport rep = f_equivalence_check(500, 20240229);
  c.require(rep.samples == 500, "sample count mismatch");
  c.require(rep.on_curve_failures == 0, "on-curve relator residual >= 1e-9");
  c.require(rep.off_curve_failures == 0, "off-curve residual <= 1e-6");
  c.require(rep.root_failures == 0, "cubic solve failures");

  MPoly f = f_poly();
  const auto& vars = f.vars();
  MPoly g = f.substitute(f.var_index("s"), Rat(1));
  g = g.substitute(g.var_index("u"), Rat(1));
  g = g.substitute(g.var_index("v"), Rat(1));
  MPoly w = MPoly::variable(vars, "t");
  c.require(g == w * w * w - w * w * MPoly::constant(vars, 2) + w * MPoly::constant(vars, 2),
            "specialization identity fails");
}

// 6: reducible non-abelian families
void criterion6(Check& c) {
  for (auto side : {ParabolicSide::X, ParabolicSide::Y})
    for (int sign : {1, -1}) {
      FamilyCertificate cert = reducible_nonabelian_certificate(side, sign);
      c.require(cert.relator_exact, "relator not an exact identity");
      const auto& vars = cert.trace_lambda_y.vars();
      c.require(cert.trace_lambda_y == MPoly::constant(vars, 2), "tr of the longitude != 2");
      if (side == ParabolicSide::Y)
        c.require(cert.trace_y == MPoly::constant(vars, 2 * sign), "tr of y != +-2");
    }
}

// 7: twisted-double Alexander data and admissibility
void criterion7(Check& c) {
  for (long n = -5; n <= 5; ++n) {
    IntPoly1 d = alexander_twisted_double(n);
    if (n == 0) {
      c.require(d == IntPoly1::constant(1), "n = 0 does not normalize to 1");
      continue;
    }
    IntPoly1 raw;
    raw.set(2, n);
    raw.set(1, 1 - 2 * n);
    raw.set(0, n);
    c.require(d == raw.primitive_part(), "polynomial mismatch at n=" + std::to_string(n));
  }
  IntPoly1 tre;
  tre.set(2, 1);
  tre.set(1, -1);
  tre.set(0, 1);
  AdmissibleResult bad = admissible_condition_ii(tre, 12);
  c.require(!bad.ok, "p = 12 wrongly admissible");
  c.require(bad.witness == tre, "witness is not t^2 - t + 1");
  c.require(admissible_condition_ii(tre, 5).ok, "p = 5 wrongly inadmissible");
}

// 8: bending witness on a connected-sum pair
void criterion8(Check& c) {
  KnotRecord tre = get("trefoil");
  const Presentation& p = *tre.presentation;
  Rat m(2), s(-13, 4);
  Mat2q X = {m, Rat(1), Rat(0), Rat(1) / m};
  Mat2q Y = {m, Rat(0), s, Rat(1) / m};
  Mat2q P = {Rat(1), m / (m * m - 1), Rat(0), Rat(1)};
  Mat2q Pi = P.inverse();
  std::map<std::string, Mat2q> rho1 = {{"x", P * X * Pi}, {"y", P * Y * Pi}};
  std::map<std::string, Mat2q> rho2 = rho1;  // second summand, to be bent
  Mat2q mu = eval_word(p.meridian, rho1, identity_q());
  c.require(mu.b == 0 && mu.c == 0, "shared meridian not diagonal");
  Rat lon_trace = eval_word(p.longitude, rho1, identity_q()).trace();

  std::vector<Rat> mixed;
  for (int k = 1; k <= 20; ++k) {
    Rat a(k + 1, k);
    auto bent = bend(rho2, p.meridian, a);
    c.require(eval_word(p.relators[0], bent, identity_q()) == identity_q(),
              "bent factor violates the relator");
    c.require(eval_word(p.meridian, bent, identity_q()) == mu, "meridian image moved");
    c.require(eval_word(p.longitude, bent, identity_q()).trace() == lon_trace,
              "boundary trace not exactly constant");
    mixed.push_back((rho1.at("y") * bent.at("y")).trace());
  }
  double lo = mixed[0].get_d(), hi = mixed[0].get_d();
  for (const Rat& t : mixed) {
    lo = std::min(lo, t.get_d());
    hi = std::max(hi, t.get_d());
  }
  c.require(hi - lo > 1e-6, "mixed-word trace does not vary");
}

// 9: multiplicity handling for the squared curve
void criterion9(Check& c) {
  BiLaurent f = trefoil_curve();
  IntersectionReport r1 = intersection_points(f, Slope(1, 5));
  IntersectionReport r2 = intersection_points(normalize(f * f), Slope(1, 5));
  c.require(r1.total == 29, "base total != 29");
  c.require(r2.total == 58, "squared total != 58");
  c.require(r1.points.size() == r2.points.size(), "support size changed");
  for (size_t i = 0; i < r1.points.size() && i < r2.points.size(); ++i) {
    c.require(std::abs(r1.points[i].t - r2.points[i].t) < 1e-6, "support point moved");
    c.require(r2.points[i].multiplicity == 2 * r1.points[i].multiplicity,
              "multiplicity not doubled");
  }
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    std::function<void(Check&)> fn;
    double budget_s;  // 0 = no runtime requirement
  };
  const std::vector<Item> items = {
      {"elimination oracle (trefoil curve, 20 lifted points, invariant 3)", criterion1, 5.0},
      {"linear growth law 6q + c(p) up to q = 200, estimate at q = 100", criterion2, 10.0},
      {"product formula and exact additivity over all db pairs", criterion3, 0.0},
      {"transversality of 100 random coprime slope pairs", criterion4, 1.0},
      {"chart polynomial <-> relator, 500 + 500 samples, exact identity", criterion5, 10.0},
      {"reducible non-abelian families: exact relator and boundary traces", criterion6, 0.0},
      {"twisted-double Alexander data and root-of-unity admissibility", criterion7, 0.0},
      {"bending witness: constant boundary traces, varying mixed trace", criterion8, 0.0},
      {"doubled multiplicities on the squared curve (29 points, total 58)", criterion9, 0.0},
  };

  g_db = load_db(std::string(CASSON_DATA_DIR) + "/knots.json");
  int failures = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      items[i].fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (items[i].budget_s > 0 && secs > items[i].budget_s)
      c.require(false, "runtime budget exceeded");
    std::printf("criterion %zu: %s - %s (%.2fs)%s%s\n", i + 1, c.ok ? "PASS" : "FAIL",
                items[i].name, secs, c.ok ? "" : " -- ", c.ok ? "" : c.detail.c_str());
    if (!c.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
