#include <doctest.h>

#include <numeric>
#include <random>

#include "casson/surgery.hpp"

using namespace casson;

namespace {

BiLaurent trefoil_ahat() {  // 1 + m^6 l
  return BiLaurent::constant(1) + BiLaurent::monomial(1, 6, 1);
}

BiLaurent figure8_ahat() {
  // frozen from the elimination pipeline on the two-bridge b(5,3) presentation
  BiLaurent a;
  a.set(0, 1, -1);
  a.set(2, 1, 1);
  a.set(4, 0, 1);
  a.set(4, 1, 2);
  a.set(4, 2, 1);
  a.set(6, 1, 1);
  a.set(8, 1, -1);
  return a;
}

}  // namespace

TEST_CASE("Slope canonical form and parsing") {
  CHECK(Slope(1, -2) == Slope(-1, 2));
  CHECK(Slope(-1, 0) == Slope(1, 0));
  CHECK_THROWS_AS(Slope(2, 4), SurgeryError);
  CHECK_THROWS_AS(Slope(2, 0), SurgeryError);
  CHECK(Slope(1, 0).str() == "1/0");
  CHECK(Slope::parse("3/5") == Slope(3, 5));
  CHECK(Slope::parse("-1/2") == Slope(-1, 2));
  CHECK_THROWS_AS(Slope(0, 0), SurgeryError);
  CHECK_THROWS_AS(Slope::parse("nope"), SurgeryError);
}

TEST_CASE("surgery_poly normal form and nonsingularity certificate") {
  BiLaurent s = surgery_poly(Slope(1, 5));
  CHECK(is_normal_form(s));
  // m l^5 - 1 up to normalization: evaluates to zero on m = t^{-5}, l = t
  CHECK(std::abs(s.eval(std::pow(Cplx(1.1), -5), Cplx(1.1))) < 1e-9);
  for (auto sl : {Slope(1, 0), Slope(0, 1), Slope(3, 7), Slope(-2, 5)}) {
    auto cert = check_nonsingular(sl);
    CHECK(cert.slope == sl);
    CHECK_FALSE(cert.reason.empty());
  }
}

TEST_CASE("trefoil substitution: frozen totals") {
  BiLaurent a = trefoil_ahat();
  int d = 0;
  IntPoly1 sub = substitute_surgery(a, Slope(1, 5), &d);
  CHECK(sub.degree() == 29);
  CHECK(d == 0);
  CHECK(total_intersection(a, Slope(1, 5)) == 29);
}

TEST_CASE("divisibility guard names the offending factor") {
  // A divisible by the surgery polynomial of the same slope
  BiLaurent a = normalize(surgery_poly(Slope(1, 5)) * trefoil_ahat());
  CHECK_THROWS_AS(total_intersection(a, Slope(1, 5)), SurgeryError);
}

TEST_CASE("linear growth law over coprime q") {
  for (const BiLaurent& a : {trefoil_ahat(), figure8_ahat()}) {
    for (int p = 1; p <= 3; ++p) {
      GrowthParams g = linear_growth_params(a, p);
      CHECK(g.n == deg_m(a));
      for (int q = 2; q <= 50; ++q) {
        if (std::gcd(p, q) != 1 || q <= g.q0) continue;
        CHECK(total_intersection(a, Slope(p, q)) == g.n * q + g.c);
      }
    }
  }
}

TEST_CASE("trefoil growth constants are exact") {
  BiLaurent a = trefoil_ahat();
  for (int p = 1; p <= 3; ++p) {
    GrowthParams g = linear_growth_params(a, p);
    CHECK(g.n == 6);
    CHECK(g.c == -p);
  }
}

TEST_CASE("transversality of random coprime slope pairs") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pv(-20, 20), qv(0, 20);
  int checked = 0;
  while (checked < 100) {
    int p1 = pv(rng), q1 = qv(rng), p2 = pv(rng), q2 = qv(rng);
    if ((p1 == 0 && q1 == 0) || (p2 == 0 && q2 == 0)) continue;
    if (std::gcd(std::abs(p1), q1) != 1 || std::gcd(std::abs(p2), q2) != 1) continue;
    Slope a(p1, q1), b(p2, q2);
    if (a == b) continue;
    TransversalityCertificate cert = transversal(a, b);
    CHECK(cert.determinant == long(a.p) * b.q - long(b.p) * a.q);
    CHECK(cert.transverse == (cert.determinant != 0));
    ++checked;
  }
  CHECK_THROWS_AS(transversal(Slope(1, 2), Slope(1, 2)), SurgeryError);
}

TEST_CASE("intersection points: residuals, kinds, totals") {
  BiLaurent a = trefoil_ahat();
  IntersectionReport rep = intersection_points(a, Slope(1, 5));
  CHECK(rep.total == 29);
  int sum = 0;
  for (const auto& pt : rep.points) {
    sum += pt.multiplicity;
    CHECK(pt.residual < 1e-8);
    CHECK(std::abs(a.eval(pt.m, pt.l)) < 1e-6);
    // Type3 is never asserted positively
    CHECK(kind_name(pt.kind) != "Type3");
  }
  CHECK(sum == rep.total);
}

TEST_CASE("multiplicity doubling for squared curves") {
  BiLaurent a = trefoil_ahat();
  BiLaurent a2 = normalize(a * a);
  IntersectionReport r1 = intersection_points(a, Slope(1, 5));
  IntersectionReport r2 = intersection_points(a2, Slope(1, 5));
  CHECK(r2.total == 2 * r1.total);
  REQUIRE(r2.points.size() == r1.points.size());
  for (size_t i = 0; i < r1.points.size(); ++i) {
    CHECK(std::abs(r1.points[i].t - r2.points[i].t) < 1e-6);
    CHECK(r2.points[i].multiplicity == 2 * r1.points[i].multiplicity);
  }
}
