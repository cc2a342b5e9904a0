#include "casson/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace casson {

Slope::Slope(int p_, int q_) {
  if (q_ < 0) {
    p_ = -p_;
    q_ = -q_;
  }
  if (q_ == 0) {
    if (p_ != 1 && p_ != -1) throw SurgeryError("slope with q = 0 must be 1/0");
    p = 1;
    q = 0;
    return;
  }
  if (std::gcd(std::abs(p_), q_) != 1) throw SurgeryError("slope p/q must be coprime");
  p = p_;
  q = q_;
}

std::string Slope::str() const {
  std::ostringstream os;
  os << p << "/" << q;
  return os.str();
}

Slope Slope::parse(const std::string& s) {
  auto bar = s.find('/');
  if (bar == std::string::npos) throw SurgeryError("slope must have the form p/q");
  try {
    size_t pos1 = 0, pos2 = 0;
    int p = std::stoi(s.substr(0, bar), &pos1);
    int q = std::stoi(s.substr(bar + 1), &pos2);
    if (pos1 != bar || pos2 != s.size() - bar - 1)
      throw std::invalid_argument(s);
    return Slope(p, q);
  } catch (const SurgeryError&) {
    throw;
  } catch (const std::exception&) {
    throw SurgeryError("malformed slope '" + s + "'");
  }
}

std::string kind_name(PointKind k) {
  switch (k) {
    case PointKind::Type1:
      return "Type1";
    case PointKind::Type2:
      return "Type2";
    default:
      return "Regular-or-Type3";
  }
}

BiLaurent surgery_poly(const Slope& slope) {
  BiLaurent f = BiLaurent::monomial(1, slope.p, slope.q) - BiLaurent::constant(1);
  return normalize(f);
}

NonSingularCertificate check_nonsingular(const Slope& slope) {
  std::ostringstream os;
  if (slope.p != 0 && slope.q != 0) {
    os << "dF/dm = " << slope.p << "*m^" << (slope.p - 1) << "*l^" << slope.q
       << " and dF/dl = " << slope.q << "*m^" << slope.p << "*l^" << (slope.q - 1)
       << " are unit multiples of monomials, nonvanishing on (C*)^2";
  } else if (slope.q == 0) {
    os << "dF/dm = " << slope.p << "*m^" << (slope.p - 1) << " is nonvanishing on (C*)^2";
  } else {
    os << "dF/dl = " << slope.q << "*l^" << (slope.q - 1) << " is nonvanishing on (C*)^2";
  }
  return {slope, os.str()};
}

TransversalityCertificate transversal(const Slope& a, const Slope& b) {
  if (a == b) throw SurgeryError("transversality requires distinct slopes");
  // reduced tangent lines p*l0*(m-m0) + q*m0*(l-l0) are independent iff
  // p*q' - p'*q != 0, which holds for distinct slopes
  long det = long(a.p) * b.q - long(b.p) * a.q;
  return {a, b, det, det != 0};
}

IntPoly1 substitute_surgery(const BiLaurent& a, const Slope& slope, int* d) {
  if (a.is_zero()) throw SurgeryError("cannot substitute into zero polynomial");
  if (!is_normal_form(a)) throw SurgeryError("substitute_surgery requires normal form");
  if (slope.q < 1) throw SurgeryError("substitute_surgery requires q >= 1");
  std::map<long, Int> acc;
  for (const auto& [k, c] : a.terms()) {
    long e = long(k.first) * slope.q - long(k.second) * slope.p;
    acc[e] += c;
  }
  for (auto it = acc.begin(); it != acc.end();)
    it = (it->second == 0) ? acc.erase(it) : std::next(it);
  if (acc.empty()) {
    if (d) *d = 0;
    return IntPoly1();
  }
  long e_min = acc.begin()->first;
  if (d) *d = int(-e_min);
  IntPoly1 r;
  for (const auto& [e, c] : acc) r.set(int(e - e_min), c);
  return r;
}

int total_intersection(const BiLaurent& a, const Slope& slope) {
  if (a.is_zero()) throw SurgeryError("total_intersection of zero polynomial");
  BiLaurent f = surgery_poly(slope);
  if (divides_bilaurent(f, a))
    throw SurgeryError("surgery curve " + f.str() + " divides the input polynomial");
  return substitute_surgery(normalize(a), slope).degree();
}

GrowthParams linear_growth_params(const BiLaurent& a, int p) {
  if (a.is_zero()) throw SurgeryError("linear_growth_params of zero polynomial");
  BiLaurent na = normalize(a);
  int n = deg_m(na);
  std::vector<int> top_exps, bot_exps;  // l-exponents in slices n and 0
  for (const auto& [k, c] : na.terms()) {
    if (k.first == n) top_exps.push_back(k.second);
    if (k.first == 0) bot_exps.push_back(k.second);
  }
  if (top_exps.empty() || bot_exps.empty())
    throw SurgeryError("linear_growth_params requires nonzero extreme m-slices");
  long c_top = -long(top_exps.front()) * p;
  for (int j : top_exps) c_top = std::max(c_top, -long(j) * p);
  long c_bot = long(bot_exps.front()) * p;
  for (int j : bot_exps) c_bot = std::max(c_bot, long(j) * p);
  long c = c_top + c_bot;
  // threshold so that the extremal exponents come from slices n and 0
  long q_need = 1;
  for (const auto& [k, coef] : na.terms()) {
    long i = k.first, jp = long(k.second) * p;
    if (i < n) {
      // need (n - i) q >= -jp - c_top
      long num = -jp - c_top;
      if (num > 0) q_need = std::max(q_need, (num + (n - i) - 1) / (n - i));
    }
    if (i >= 1) {
      // need i q >= jp - c_bot  (i.e. i*q - jp >= -c_bot)
      long num = jp - c_bot;
      if (num > 0) q_need = std::max(q_need, (num + i - 1) / i);
    }
  }
  GrowthParams g;
  g.n = n;
  g.c = c;
  g.q0 = int(q_need - 1);
  return g;
}

IntersectionReport intersection_points(const BiLaurent& a, const Slope& slope,
                                       const RootOptions& opts) {
  BiLaurent na = normalize(a);
  IntersectionReport rep;
  rep.slope = slope;
  rep.total = total_intersection(na, slope);
  IntPoly1 sub = substitute_surgery(na, slope, &rep.clearing_exponent);
  if (sub.degree() < 1) return rep;
  for (const Root& r : find_roots(sub, opts)) {
    SurgeryPoint pt;
    pt.t = r.z;
    pt.multiplicity = r.multiplicity;
    pt.m = std::pow(r.z, slope.q);
    pt.l = std::pow(r.z, -slope.p);
    pt.residual = std::abs(na.eval(pt.m, pt.l)) / std::max(1.0, na.coeff_magnitude());
    rep.points.push_back(pt);
  }
  int sum = 0;
  for (const auto& pt : rep.points) sum += pt.multiplicity;
  if (sum != rep.total) throw SurgeryError("multiplicity sum mismatch in intersection report");
  return rep;
}

PointKind classify_point(const SurgeryPoint& pt, const IntPoly1& alexander, double tol) {
  if (alexander.is_zero()) throw SurgeryError("classify_point requires nonzero Alexander polynomial");
  auto near_pm1 = [&](Cplx z) {
    return std::abs(z - Cplx(1.0)) < tol || std::abs(z + Cplx(1.0)) < tol;
  };
  if (near_pm1(pt.m) && near_pm1(pt.l)) return PointKind::Type1;
  if (std::abs(pt.l - Cplx(1.0)) < tol) {
    double scale = std::max(1.0, alexander.coeff_magnitude());
    if (std::abs(alexander.eval(pt.m * pt.m)) < tol * scale) return PointKind::Type2;
  }
  return PointKind::RegularOrType3;
}

nlohmann::json IntersectionReport::to_json() const {
  nlohmann::json j;
  j["p"] = slope.p;
  j["q"] = slope.q;
  j["total"] = total;
  j["d"] = clearing_exponent;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& pt : points) {
    pts.push_back({{"t", {pt.t.real(), pt.t.imag()}},
                   {"m", {pt.m.real(), pt.m.imag()}},
                   {"l", {pt.l.real(), pt.l.imag()}},
                   {"mult", pt.multiplicity},
                   {"kind", kind_name(pt.kind)},
                   {"residual", pt.residual}});
  }
  j["points"] = pts;
  return j;
}

}  // namespace casson
