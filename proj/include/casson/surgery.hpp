#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "casson/poly.hpp"
#include "casson/roots.hpp"

namespace casson {

class SurgeryError : public std::runtime_error {
public:
  explicit SurgeryError(const std::string& what) : std::runtime_error(what) {}
};

/// Slope p/q in canonical form: gcd(|p|, q) = 1 and q >= 1, with the single
/// exception (1, 0) for the slope 1/0.
struct Slope {
  int p = 1;
  int q = 0;

  Slope() = default;
  Slope(int p_, int q_);

  bool operator==(const Slope& o) const { return p == o.p && q == o.q; }
  std::string str() const;
  static Slope parse(const std::string& s);  // "p/q"
};

enum class PointKind { Type1, Type2, RegularOrType3 };

std::string kind_name(PointKind k);

struct SurgeryPoint {
  Cplx t;
  Cplx m;
  Cplx l;
  int multiplicity = 1;
  PointKind kind = PointKind::RegularOrType3;
  double residual = 0.0;
};

struct IntersectionReport {
  Slope slope;
  int total = 0;
  int clearing_exponent = 0;  // d
  std::vector<SurgeryPoint> points;

  nlohmann::json to_json() const;
};

struct NonSingularCertificate {
  Slope slope;
  std::string reason;
};

struct TransversalityCertificate {
  Slope a, b;
  long determinant = 0;  // p*q' - p'*q, nonzero iff transverse
  bool transverse = false;
};

/// Normal form of m^p l^q - 1.
BiLaurent surgery_poly(const Slope& slope);

/// Symbolic non-singularity certificate: both partials are unit multiples of
/// monomials on (C*)^2, and when p or q vanishes the other partial is a unit.
NonSingularCertificate check_nonsingular(const Slope& slope);

/// Tangent-line independence at every common point, witnessed by the
/// determinant p*q' - p'*q. Throws on identical slopes.
TransversalityCertificate transversal(const Slope& a, const Slope& b);

/// t^d * A(t^q, t^-p) with d minimal so the result has nonzero constant term.
IntPoly1 substitute_surgery(const BiLaurent& a, const Slope& slope, int* d = nullptr);

/// Degree of the substituted polynomial. Throws SurgeryError when
/// surgery_poly(slope) divides A, naming the offending factor.
int total_intersection(const BiLaurent& a, const Slope& slope);

struct GrowthParams {
  int n = 0;   // deg_m(A)
  long c = 0;  // additive constant: total = n*q + c for q > q0
  int q0 = 0;
};

/// Linear-growth law of the intersection count in q at fixed p, with an
/// explicit threshold q0 past which the extremal t-exponents come from the
/// i = deg_m and i = 0 slices.
GrowthParams linear_growth_params(const BiLaurent& a, int p);

IntersectionReport intersection_points(const BiLaurent& a, const Slope& slope,
                                       const RootOptions& opts = {});

/// Classification per the surgery-point taxonomy; Type3 is never asserted
/// positively (ideal-point data is not available here).
PointKind classify_point(const SurgeryPoint& pt, const IntPoly1& alexander,
                         double tol = 1e-8);

}  // namespace casson
