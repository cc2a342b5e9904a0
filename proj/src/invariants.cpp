#include "casson/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "casson/roots.hpp"
#include "casson/surgery.hpp"

namespace casson {

void KnotRecord::validate() const {
  if (name.empty()) throw InvariantError("record has empty name");
  if (ahat.is_zero()) throw InvariantError(name + ": ahat is zero");
  if (!is_normal_form(ahat)) throw InvariantError(name + ": ahat not in normal form");
  if (alexander.is_zero()) throw InvariantError(name + ": alexander polynomial is zero");
  Int at_one = alexander.eval_int(1);
  if (at_one != 1 && at_one != -1)
    throw InvariantError(name + ": alexander(1) = " + at_one.get_str() + ", not a unit");
}

nlohmann::json KnotRecord::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["ahat"] = ahat.to_json();
  j["alexander"] = alexander.to_json();
  if (presentation) j["presentation"] = presentation->to_json();
  j["provenance"] = provenance;
  return j;
}

KnotRecord KnotRecord::from_json(const nlohmann::json& j) {
  KnotRecord k;
  k.name = j.at("name").get<std::string>();
  k.ahat = BiLaurent::from_json(j.at("ahat"));
  k.alexander = IntPoly1::from_json(j.at("alexander"));
  if (j.contains("presentation") && !j.at("presentation").is_null())
    k.presentation = Presentation::from_json(j.at("presentation"));
  k.provenance = j.value("provenance", std::string());
  return k;
}

std::vector<KnotRecord> load_db(const std::string& path, std::vector<std::string>* issues) {
  std::ifstream in(path);
  if (!in) throw InvariantError("cannot open database " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvariantError("malformed database JSON: " + std::string(e.what()));
  }
  if (!j.is_array()) throw InvariantError("database root is not an array");

  std::vector<KnotRecord> records;
  std::vector<std::string> local;
  for (size_t i = 0; i < j.size(); ++i) {
    try {
      KnotRecord k = KnotRecord::from_json(j[i]);
      k.validate();
      records.push_back(std::move(k));
    } catch (const std::exception& e) {
      local.push_back("record " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!local.empty()) {
    if (!issues) {
      std::string msg = "invalid database records:";
      for (const auto& s : local) msg += "\n  " + s;
      throw InvariantError(msg);
    }
    issues->insert(issues->end(), local.begin(), local.end());
  }
  return records;
}

void save_db(const std::string& path, const std::vector<KnotRecord>& records) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& k : records) j.push_back(k.to_json());
  std::ofstream out(path);
  if (!out) throw InvariantError("cannot write database " + path);
  out << j.dump(2) << "\n";
}

Rat lambda_prime(const KnotRecord& k) {
  k.validate();
  Rat r(deg_m(k.ahat), 2);
  r.canonicalize();
  return r;
}

AsymptoticResult lambda_prime_asymptotic(const KnotRecord& k, int p, int q_max) {
  k.validate();
  if (q_max < 1) throw InvariantError("q_max must be positive");
  AsymptoticResult out;
  for (int q = 1; q <= q_max; ++q) {
    if (std::gcd(std::abs(p), q) != 1) continue;
    int total = total_intersection(k.ahat, Slope(p, q));
    Rat est(total, 2L * q);
    est.canonicalize();
    out.estimates.emplace_back(q, est);
  }
  GrowthParams g = linear_growth_params(k.ahat, p);
  out.extrapolated = Rat(g.n, 2);
  out.extrapolated.canonicalize();
  return out;
}

KnotRecord connected_sum(const KnotRecord& k1, const KnotRecord& k2) {
  k1.validate();
  k2.validate();
  KnotRecord k;
  k.name = k1.name + " # " + k2.name;
  k.ahat = normalize(k1.ahat * k2.ahat);
  k.alexander = (k1.alexander * k2.alexander).shift_to_order_zero().primitive_part();
  k.provenance = "connected sum of '" + k1.name + "' and '" + k2.name + "'";
  return k;
}

IntPoly1 alexander_twisted_double(long n) {
  IntPoly1 p;
  p.set(2, Int(n));
  p.set(1, Int(1 - 2 * n));
  p.set(0, Int(n));
  if (p.is_zero()) return IntPoly1::constant(1);
  return p.shift_to_order_zero().primitive_part();
}

AdmissibleResult admissible_condition_ii(const IntPoly1& alexander, int p) {
  if (alexander.is_zero()) throw InvariantError("Alexander polynomial is zero");
  if (p == 0) throw InvariantError("p must be nonzero");
  AdmissibleResult out;
  int ap = std::abs(p);
  out.p_prime = (ap % 2 != 0) ? ap : ap / 2;
  IntPoly1 cyc;
  cyc.set(out.p_prime, 1);
  cyc.set(0, -1);
  IntPoly1 g = gcd1(alexander, cyc);
  out.ok = g.degree() == 0;
  if (!out.ok) out.witness = g;
  return out;
}

namespace {

constexpr double kZeroTol = 1e-9;

// Specialized univariate complex coefficients of C(m0, l), indexed by
// l-exponent 0..deg_l. Tiny extreme coefficients (relative to the largest)
// are trimmed so root counts reflect the actual degree span.
std::vector<Cplx> specialize_l(const BiLaurent& c, Cplx m0) {
  int dl = c.max_el() - c.min_el();
  std::vector<Cplx> co(dl + 1, Cplx(0));
  for (const auto& [k, v] : c.terms())
    co[k.second - c.min_el()] += Cplx(v.get_d()) * std::pow(m0, k.first);
  return co;
}

std::vector<Cplx> specialize_m(const BiLaurent& c, Cplx l0) {
  int dm = c.max_em() - c.min_em();
  std::vector<Cplx> co(dm + 1, Cplx(0));
  for (const auto& [k, v] : c.terms())
    co[k.first - c.min_em()] += Cplx(v.get_d()) * std::pow(l0, k.second);
  return co;
}

// Nonzero roots of the polynomial with the given dense coefficients, after
// trimming numerically negligible extreme coefficients.
std::vector<Cplx> nonzero_roots(std::vector<Cplx> co) {
  double mag = 0;
  for (const Cplx& z : co) mag = std::max(mag, std::abs(z));
  if (mag == 0) return {};
  size_t lo = 0, hi = co.size();
  while (lo < hi && std::abs(co[lo]) < 1e-10 * mag) ++lo;
  while (hi > lo && std::abs(co[hi - 1]) < 1e-10 * mag) --hi;
  std::vector<Cplx> trimmed(co.begin() + lo, co.begin() + hi);
  if (trimmed.size() <= 1) return {};
  std::vector<Cplx> roots;
  try {
    roots = aberth(trimmed);
  } catch (const RootFindingError& e) {
    for (const Root& r : e.partial_roots) roots.push_back(r.z);
  }
  std::erase_if(roots, [](Cplx z) { return std::abs(z) < kZeroTol; });
  return roots;
}

// Sample points (m, l) on the curve for probing the trace function.
std::vector<std::pair<Cplx, Cplx>> sample_curve_points(const BiLaurent& c,
                                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.4, 2.2), angle(0.0, 6.2831853);
  std::vector<std::pair<Cplx, Cplx>> pts;
  bool l_free = deg_l(c) == 0;
  for (int tries = 0; tries < 40 && pts.size() < 8; ++tries) {
    Cplx w = std::polar(radius(rng), angle(rng));
    if (l_free) {
      // curve constrains m only; pair each m root with a random l
      for (Cplx m0 : nonzero_roots(specialize_m(c, 1.0)))
        pts.emplace_back(m0, std::polar(radius(rng), angle(rng)));
      if (pts.empty()) break;
    } else {
      for (Cplx l0 : nonzero_roots(specialize_l(c, w))) pts.emplace_back(w, l0);
    }
  }
  return pts;
}

Cplx trace_at(Cplx m0, Cplx l0, int a, int b) {
  Cplx w = std::pow(m0, a) * std::pow(l0, b);
  return w + 1.0 / w;
}

// den * m^|a| l^|b| * (m^a l^b + m^-a l^-b - num/den), an exact polynomial
// model of the level set {trace = c}.
BiLaurent trace_level_set(int a, int b, const Int& num, const Int& den) {
  int aa = std::abs(a), ab = std::abs(b);
  BiLaurent t = BiLaurent::monomial(den, a + aa, b + ab) +
                BiLaurent::monomial(den, aa - a, ab - b) -
                BiLaurent::monomial(num, aa, ab);
  return t;
}

// Count solutions of {curve = 0, level = 0} in (C*)^2 when one of the two
// polynomials involves a single variable.
int count_one_variable_case(const BiLaurent& curve, const BiLaurent& level,
                            bool level_in_m_only) {
  const BiLaurent& uni = level;
  std::vector<Cplx> base = level_in_m_only ? nonzero_roots(specialize_m(uni, 1.0))
                                           : nonzero_roots(specialize_l(uni, 1.0));
  int count = 0;
  for (Cplx z : base) {
    auto co = level_in_m_only ? specialize_l(curve, z) : specialize_m(curve, z);
    count += static_cast<int>(nonzero_roots(co).size());
  }
  return count;
}

}  // namespace

SeminormResult eigenvalue_seminorm(const SeminormQuery& query, int trials,
                                   std::uint64_t seed) {
  if (query.curve.is_zero()) throw InvariantError("seminorm curve is zero");
  if (trials < 1) throw InvariantError("trials must be positive");
  BiLaurent curve = normalize(query.curve);
  int a = query.a, b = query.b;
  SeminormResult out;
  if (a == 0 && b == 0) return out;  // trace of the trivial class is 2

  std::mt19937_64 rng(seed);
  auto pts = sample_curve_points(curve, rng);
  if (!pts.empty()) {
    double lo = 1e300, hi = -1e300;
    for (auto [m0, l0] : pts) {
      double v = std::abs(trace_at(m0, l0, a, b));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo < 1e-7 * std::max(1.0, hi)) {
      out.degenerate = true;
      return out;
    }
  }

  std::uniform_int_distribution<long> num_d(-900, 900);
  std::uniform_int_distribution<long> den_d(1, 37);
  MPoly cm = bilaurent_to_mpoly(curve);
  int best = 0;
  for (int t = 0; t < trials; ++t) {
    Int num(num_d(rng)), den(den_d(rng));
    BiLaurent level = trace_level_set(a, b, num, den);
    int count = 0;
    if (b == 0) {
      count = count_one_variable_case(curve, level, true);
    } else if (a == 0) {
      count = count_one_variable_case(curve, level, false);
    } else {
      MPoly res = resultant(cm, bilaurent_to_mpoly(level), "l");
      if (res.is_zero() || res.is_constant()) continue;
      IntPoly1 rm = mpoly_to_intpoly1(res, "m");
      if (rm.degree() < 1) continue;
      std::vector<Root> roots;
      try {
        roots = find_roots(rm);
      } catch (const RootFindingError& e) {
        roots = e.partial_roots;
      }
      for (const Root& r : roots) {
        if (std::abs(r.z) < kZeroTol) continue;
        // keep only resultant roots witnessed by an actual common point
        auto cl = nonzero_roots(specialize_l(curve, r.z));
        auto tl = nonzero_roots(specialize_l(level, r.z));
        bool witnessed = false;
        for (Cplx u : cl)
          for (Cplx v : tl)
            if (std::abs(u - v) < 1e-5 * std::max(1.0, std::abs(u))) witnessed = true;
        if (witnessed) count += r.multiplicity;
      }
    }
    best = std::max(best, count);
  }
  out.value = best;
  return out;
}

}  // namespace casson
