#include <doctest.h>

#include <algorithm>
#include <random>

#include "casson/roots.hpp"

using namespace casson;

TEST_CASE("aberth solves cyclotomic-style polynomials") {
  // t^8 - 1: roots are the 8th roots of unity
  std::vector<Cplx> coeffs(9, Cplx(0));
  coeffs[0] = -1;
  coeffs[8] = 1;
  auto roots = aberth(coeffs);
  REQUIRE(roots.size() == 8);
  for (Cplx z : roots) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    CHECK(std::abs(std::pow(z, 8) - Cplx(1)) < 1e-8);
  }
}

TEST_CASE("find_roots reports exact multiplicities") {
  IntPoly1 tm1, tp2;
  tm1.set(1, 1);
  tm1.set(0, -1);
  tp2.set(1, 1);
  tp2.set(0, 2);
  IntPoly1 p = tm1 * tm1 * tm1 * tp2;  // (t-1)^3 (t+2)
  auto roots = find_roots(p);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.z.real() < b.z.real(); });
  CHECK(roots[0].multiplicity == 1);
  CHECK(std::abs(roots[0].z - Cplx(-2)) < 1e-10);
  CHECK(roots[1].multiplicity == 3);
  CHECK(std::abs(roots[1].z - Cplx(1)) < 1e-10);
}

TEST_CASE("find_roots multiplicities sum to the degree on random products") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    IntPoly1 p = IntPoly1::constant(1);
    int degree = 0;
    for (int i = 0; i < 3; ++i) {
      IntPoly1 f;
      f.set(1, 1);
      f.set(0, coeff(rng));
      int mult = 1 + trial % 3;
      for (int j = 0; j < mult; ++j) p = p * f;
      degree += mult;
    }
    auto roots = find_roots(p);
    int total = 0;
    for (auto& r : roots) {
      total += r.multiplicity;
      CHECK(std::abs(p.eval(r.z)) < 1e-6 * p.coeff_magnitude());
    }
    CHECK(total == degree);
  }
}

TEST_CASE("find_roots rejects constants") {
  CHECK_THROWS(find_roots(IntPoly1::constant(3)));
}
