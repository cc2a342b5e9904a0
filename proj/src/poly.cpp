#include "casson/poly.hpp"

#include <algorithm>
#include <sstream>

namespace casson {

namespace {

Cplx ipow(Cplx base, int e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  Cplx r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

double to_double(const Int& z) { return z.get_d(); }

}  // namespace

// ---------------------------------------------------------------- IntPoly1

IntPoly1 IntPoly1::constant(Int c) {
  IntPoly1 p;
  p.set(0, std::move(c));
  return p;
}

IntPoly1 IntPoly1::monomial(Int c, int e) {
  if (e < 0) throw PolyError("IntPoly1 exponent must be nonnegative");
  IntPoly1 p;
  p.set(e, std::move(c));
  return p;
}

IntPoly1 IntPoly1::variable() { return monomial(1, 1); }

Int IntPoly1::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Int(0) : it->second;
}

Int IntPoly1::leading() const {
  if (c_.empty()) throw PolyError("leading coefficient of zero polynomial");
  return c_.rbegin()->second;
}

void IntPoly1::set(int e, Int c) {
  if (e < 0) throw PolyError("IntPoly1 exponent must be nonnegative");
  if (c == 0)
    c_.erase(e);
  else
    c_[e] = std::move(c);
}

IntPoly1 IntPoly1::operator-() const {
  IntPoly1 r;
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

IntPoly1 IntPoly1::operator+(const IntPoly1& o) const {
  IntPoly1 r = *this;
  for (const auto& [e, c] : o.c_) {
    Int s = r.coeff(e) + c;
    r.set(e, s);
  }
  return r;
}

IntPoly1 IntPoly1::operator-(const IntPoly1& o) const { return *this + (-o); }

IntPoly1 IntPoly1::operator*(const IntPoly1& o) const {
  IntPoly1 r;
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Int s = r.coeff(e1 + e2) + c1 * c2;
      r.set(e1 + e2, s);
    }
  return r;
}

IntPoly1 IntPoly1::derivative() const {
  IntPoly1 r;
  for (const auto& [e, c] : c_)
    if (e > 0) r.set(e - 1, c * e);
  return r;
}

Int IntPoly1::content() const {
  Int g = 0;
  for (const auto& [e, c] : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly1 IntPoly1::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (leading() < 0) g = -g;
  IntPoly1 r;
  for (const auto& [e, c] : c_) r.c_[e] = c / g;
  return r;
}

IntPoly1 IntPoly1::shift_to_order_zero(int* removed) const {
  if (is_zero()) {
    if (removed) *removed = 0;
    return *this;
  }
  int o = order();
  if (removed) *removed = o;
  IntPoly1 r;
  for (const auto& [e, c] : c_) r.c_[e - o] = c;
  return r;
}

Int IntPoly1::eval_int(const Int& x) const {
  Int acc = 0;
  for (const auto& [e, c] : c_) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), e);
    acc += c * p;
  }
  return acc;
}

Rat IntPoly1::eval_rat(const Rat& x) const {
  Rat acc = 0;
  for (const auto& [e, c] : c_) {
    Rat p = 1;
    for (int i = 0; i < e; ++i) p *= x;
    acc += Rat(c) * p;
  }
  return acc;
}

Cplx IntPoly1::eval(Cplx x) const {
  Cplx acc = 0.0;
  for (const auto& [e, c] : c_) acc += to_double(c) * ipow(x, e);
  return acc;
}

double IntPoly1::coeff_magnitude() const {
  double m = 0.0;
  for (const auto& [e, c] : c_) m = std::max(m, std::abs(to_double(c)));
  return m;
}

nlohmann::json IntPoly1::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [e, c] : c_) j.push_back({c.get_str(), e});
  return j;
}

IntPoly1 IntPoly1::from_json(const nlohmann::json& j) {
  IntPoly1 p;
  for (const auto& term : j) {
    Int c(term.at(0).get<std::string>());
    int e = term.at(1).get<int>();
    Int s = p.coeff(e) + c;
    p.set(e, s);
  }
  return p;
}

std::string IntPoly1::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Int a = abs(c);
    if (a != 1 || e == 0) os << a.get_str();
    if (e > 0) {
      if (a != 1) os << "*";
      os << var;
      if (e > 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

// Rational long division; remainder returned, quotient in Q cleared only
// when integral.
namespace {

struct QPoly {
  std::map<int, Rat> c;
  bool is_zero() const { return c.empty(); }
  int degree() const { return c.empty() ? -1 : c.rbegin()->first; }
  void set(int e, const Rat& v) {
    if (v == 0)
      c.erase(e);
    else
      c[e] = v;
  }
  Rat coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? Rat(0) : it->second;
  }
};

QPoly to_q(const IntPoly1& p) {
  QPoly q;
  for (const auto& [e, c] : p.terms()) q.c[e] = Rat(c);
  return q;
}

}  // namespace

bool try_exact_div(const IntPoly1& a, const IntPoly1& b, IntPoly1* q) {
  if (b.is_zero()) throw PolyError("division by zero polynomial");
  QPoly r = to_q(a), d = to_q(b), quot;
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int e = r.degree() - d.degree();
    Rat f = r.c.rbegin()->second / d.c.rbegin()->second;
    quot.set(e, quot.coeff(e) + f);
    for (const auto& [de, dc] : d.c) r.set(de + e, r.coeff(de + e) - f * dc);
  }
  if (!r.is_zero()) return false;
  IntPoly1 out;
  for (const auto& [e, c] : quot.c) {
    Rat cc = c;
    cc.canonicalize();
    if (cc.get_den() != 1) return false;
    out.set(e, Int(cc.get_num()));
  }
  if (q) *q = out;
  return true;
}

IntPoly1 gcd1(const IntPoly1& a, const IntPoly1& b) {
  if (a.is_zero() && b.is_zero()) throw PolyError("gcd of two zero polynomials");
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly1 u = a.primitive_part(), v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    // primitive pseudo-remainder sequence
    IntPoly1 r = u;
    Int lv = v.leading();
    int dv = v.degree();
    while (!r.is_zero() && r.degree() >= dv) {
      int e = r.degree() - dv;
      Int lr = r.leading();
      IntPoly1 scaled;
      for (const auto& [ee, cc] : r.terms()) scaled.set(ee, cc * lv);
      r = scaled - IntPoly1::monomial(lr, e) * v;
    }
    u = v;
    v = r.is_zero() ? r : r.primitive_part();
  }
  return u.primitive_part();
}

std::vector<std::pair<IntPoly1, int>> squarefree_decomposition(const IntPoly1& a) {
  if (a.is_zero()) throw PolyError("squarefree decomposition of zero");
  std::vector<std::pair<IntPoly1, int>> out;
  IntPoly1 p = a.primitive_part();
  if (p.degree() < 1) return out;
  IntPoly1 dp = p.derivative();
  IntPoly1 g = gcd1(p, dp);
  IntPoly1 b, c;
  if (!try_exact_div(p, g, &b)) throw PolyError("internal: squarefree division failed");
  if (!try_exact_div(dp, g, &c)) throw PolyError("internal: squarefree division failed");
  IntPoly1 d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    IntPoly1 f = d.is_zero() ? b : gcd1(b, d);
    if (f.degree() > 0) out.emplace_back(f.primitive_part(), i);
    IntPoly1 nb, nc;
    if (!try_exact_div(b, f, &nb)) throw PolyError("internal: Yun step failed");
    if (d.is_zero())
      nc = IntPoly1();
    else if (!try_exact_div(d, f, &nc))
      throw PolyError("internal: Yun step failed");
    b = nb;
    d = nc - b.derivative();
    ++i;
  }
  return out;
}

// --------------------------------------------------------------- BiLaurent

BiLaurent BiLaurent::constant(Int c) {
  BiLaurent p;
  p.set(0, 0, std::move(c));
  return p;
}

BiLaurent BiLaurent::monomial(Int c, int em, int el) {
  BiLaurent p;
  p.set(em, el, std::move(c));
  return p;
}

Int BiLaurent::coeff(int em, int el) const {
  auto it = c_.find({em, el});
  return it == c_.end() ? Int(0) : it->second;
}

void BiLaurent::set(int em, int el, Int c) {
  if (c == 0)
    c_.erase({em, el});
  else
    c_[{em, el}] = std::move(c);
}

BiLaurent BiLaurent::operator-() const {
  BiLaurent r;
  for (const auto& [k, c] : c_) r.c_[k] = -c;
  return r;
}

BiLaurent BiLaurent::operator+(const BiLaurent& o) const {
  BiLaurent r = *this;
  for (const auto& [k, c] : o.c_) {
    Int s = r.coeff(k.first, k.second) + c;
    r.set(k.first, k.second, s);
  }
  return r;
}

BiLaurent BiLaurent::operator-(const BiLaurent& o) const { return *this + (-o); }

BiLaurent BiLaurent::operator*(const BiLaurent& o) const {
  BiLaurent r;
  for (const auto& [k1, c1] : c_)
    for (const auto& [k2, c2] : o.c_) {
      int em = k1.first + k2.first, el = k1.second + k2.second;
      Int s = r.coeff(em, el) + c1 * c2;
      r.set(em, el, s);
    }
  return r;
}

int BiLaurent::min_em() const {
  if (c_.empty()) throw PolyError("exponent range of zero polynomial");
  int m = c_.begin()->first.first;
  for (const auto& [k, c] : c_) m = std::min(m, k.first);
  return m;
}

int BiLaurent::max_em() const {
  if (c_.empty()) throw PolyError("exponent range of zero polynomial");
  int m = c_.begin()->first.first;
  for (const auto& [k, c] : c_) m = std::max(m, k.first);
  return m;
}

int BiLaurent::min_el() const {
  if (c_.empty()) throw PolyError("exponent range of zero polynomial");
  int m = c_.begin()->first.second;
  for (const auto& [k, c] : c_) m = std::min(m, k.second);
  return m;
}

int BiLaurent::max_el() const {
  if (c_.empty()) throw PolyError("exponent range of zero polynomial");
  int m = c_.begin()->first.second;
  for (const auto& [k, c] : c_) m = std::max(m, k.second);
  return m;
}

Int BiLaurent::content() const {
  Int g = 0;
  for (const auto& [k, c] : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Int BiLaurent::lex_leading() const {
  if (c_.empty()) throw PolyError("leading coefficient of zero polynomial");
  // sign convention compares l-exponent first, then m-exponent
  auto best = c_.begin();
  for (auto it = c_.begin(); it != c_.end(); ++it) {
    auto key = std::make_pair(it->first.second, it->first.first);
    auto bkey = std::make_pair(best->first.second, best->first.first);
    if (key > bkey) best = it;
  }
  return best->second;
}

BiLaurent BiLaurent::d_dm() const {
  BiLaurent r;
  for (const auto& [k, c] : c_)
    if (k.first != 0) {
      Int s = r.coeff(k.first - 1, k.second) + c * k.first;
      r.set(k.first - 1, k.second, s);
    }
  return r;
}

BiLaurent BiLaurent::d_dl() const {
  BiLaurent r;
  for (const auto& [k, c] : c_)
    if (k.second != 0) {
      Int s = r.coeff(k.first, k.second - 1) + c * k.second;
      r.set(k.first, k.second - 1, s);
    }
  return r;
}

Cplx BiLaurent::eval(Cplx m, Cplx l) const {
  Cplx acc = 0.0;
  for (const auto& [k, c] : c_) acc += to_double(c) * ipow(m, k.first) * ipow(l, k.second);
  return acc;
}

double BiLaurent::coeff_magnitude() const {
  double m = 0.0;
  for (const auto& [k, c] : c_) m = std::max(m, std::abs(to_double(c)));
  return m;
}

nlohmann::json BiLaurent::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [k, c] : c_) j.push_back({c.get_str(), k.first, k.second});
  return j;
}

BiLaurent BiLaurent::from_json(const nlohmann::json& j) {
  BiLaurent p;
  for (const auto& term : j) {
    Int c(term.at(0).get<std::string>());
    int em = term.at(1).get<int>();
    int el = term.at(2).get<int>();
    Int s = p.coeff(em, el) + c;
    p.set(em, el, s);
  }
  return p;
}

std::string BiLaurent::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [k, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Int a = abs(c);
    bool want_coeff = (a != 1) || (k.first == 0 && k.second == 0);
    if (want_coeff) os << a.get_str();
    if (k.first != 0) {
      if (want_coeff) os << "*";
      os << "m";
      if (k.first != 1) os << "^" << k.first;
    }
    if (k.second != 0) {
      if (want_coeff || k.first != 0) os << "*";
      os << "l";
      if (k.second != 1) os << "^" << k.second;
    }
    first = false;
  }
  return os.str();
}

BiLaurent normalize(const BiLaurent& a) {
  if (a.is_zero()) throw PolyError("cannot normalize zero");
  int sm = a.min_em(), sl = a.min_el();
  Int g = a.content();
  BiLaurent r;
  for (const auto& [k, c] : a.terms()) r.set(k.first - sm, k.second - sl, c / g);
  if (r.lex_leading() < 0) r = -r;
  return r;
}

bool is_normal_form(const BiLaurent& a) {
  if (a.is_zero()) return false;
  return a.min_em() == 0 && a.min_el() == 0 && a.content() == 1 && a.lex_leading() > 0;
}

int deg_m(const BiLaurent& a) {
  if (a.is_zero()) throw PolyError("deg_m of zero polynomial");
  return a.max_em();
}

int deg_l(const BiLaurent& a) {
  if (a.is_zero()) throw PolyError("deg_l of zero polynomial");
  return a.max_el();
}

IntPoly1 coeff_slice(const BiLaurent& a, int i) {
  if (!is_normal_form(a)) throw PolyError("coeff_slice requires normal form");
  if (i < 0 || i > deg_m(a)) throw PolyError("coeff_slice index out of range");
  IntPoly1 r;
  for (const auto& [k, c] : a.terms())
    if (k.first == i) r.set(k.second, c);
  return r;
}

bool divides_bilaurent(const BiLaurent& b, const BiLaurent& a, BiLaurent* q) {
  if (b.is_zero()) throw PolyError("division by zero polynomial");
  if (a.is_zero()) {
    if (q) *q = BiLaurent();
    return true;
  }
  try {
    MPoly qq = exact_div(bilaurent_to_mpoly(normalize(a)), bilaurent_to_mpoly(normalize(b)));
    if (q) *q = normalize(mpoly_to_bilaurent(qq));
    return true;
  } catch (const PolyError&) {
    return false;
  }
}

// ------------------------------------------------------------------- MPoly

MPoly MPoly::constant(std::vector<std::string> vars, Rat c) {
  MPoly p(std::move(vars));
  p.set(Exps(p.vars_.size(), 0), std::move(c));
  return p;
}

MPoly MPoly::variable(std::vector<std::string> vars, const std::string& name) {
  MPoly p(std::move(vars));
  Exps e(p.vars_.size(), 0);
  e[p.var_index(name)] = 1;
  p.set(e, 1);
  return p;
}

MPoly MPoly::monomial(std::vector<std::string> vars, Rat c, Exps e) {
  MPoly p(std::move(vars));
  if (e.size() != p.vars_.size()) throw PolyError("monomial exponent arity mismatch");
  p.set(e, std::move(c));
  return p;
}

bool MPoly::is_constant() const {
  if (c_.empty()) return true;
  if (c_.size() != 1) return false;
  for (int e : c_.begin()->first)
    if (e != 0) return false;
  return true;
}

Rat MPoly::constant_value() const {
  if (!is_constant()) throw PolyError("not a constant polynomial");
  return c_.empty() ? Rat(0) : c_.begin()->second;
}

void MPoly::set(const Exps& e, Rat c) {
  if (e.size() != vars_.size()) throw PolyError("exponent arity mismatch");
  c.canonicalize();
  if (c == 0)
    c_.erase(e);
  else
    c_[e] = std::move(c);
}

int MPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw PolyError("unknown variable " + name);
  return static_cast<int>(it - vars_.begin());
}

int MPoly::degree_in(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : c_) {
    if (first || e[var] > d) d = e[var];
    first = false;
  }
  return d;
}

int MPoly::order_in(int var) const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : c_) {
    if (first || e[var] < d) d = e[var];
    first = false;
  }
  return d;
}

void MPoly::check_compatible(const MPoly& o) const {
  if (vars_ != o.vars_) throw PolyError("MPoly variable lists differ");
}

MPoly MPoly::operator-() const {
  MPoly r(vars_);
  for (const auto& [e, c] : c_) r.c_[e] = -c;
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  check_compatible(o);
  MPoly r = *this;
  for (const auto& [e, c] : o.c_) {
    auto it = r.c_.find(e);
    if (it == r.c_.end()) {
      r.c_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.c_.erase(it);
    }
  }
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  check_compatible(o);
  MPoly r(vars_);
  for (const auto& [e1, c1] : c_)
    for (const auto& [e2, c2] : o.c_) {
      Exps e(e1.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      auto it = r.c_.find(e);
      if (it == r.c_.end()) {
        Rat v = c1 * c2;
        if (v != 0) r.c_[e] = v;
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.c_.erase(it);
      }
    }
  return r;
}

MPoly MPoly::operator*(const Rat& rr) const {
  MPoly r(vars_);
  if (rr == 0) return r;
  for (const auto& [e, c] : c_) r.c_[e] = c * rr;
  return r;
}

bool MPoly::operator==(const MPoly& o) const { return vars_ == o.vars_ && c_ == o.c_; }

MPoly MPoly::derivative(int var) const {
  MPoly r(vars_);
  for (const auto& [e, c] : c_) {
    if (e[var] == 0) continue;
    Exps ne = e;
    ne[var] -= 1;
    Rat v = c * e[var];
    auto it = r.c_.find(ne);
    if (it == r.c_.end())
      r.c_[ne] = v;
    else {
      it->second += v;
      if (it->second == 0) r.c_.erase(it);
    }
  }
  return r;
}

MPoly MPoly::coeff_of(int var, int deg) const {
  MPoly r(vars_);
  for (const auto& [e, c] : c_) {
    if (e[var] != deg) continue;
    Exps ne = e;
    ne[var] = 0;
    r.c_[ne] = c;
  }
  return r;
}

MPoly MPoly::substitute(int var, const MPoly& value) const {
  check_compatible(value);
  MPoly r(vars_);
  for (const auto& [e, c] : c_) {
    if (e[var] < 0) throw PolyError("cannot substitute into negative exponent");
    Exps ne = e;
    ne[var] = 0;
    MPoly term = MPoly::monomial(vars_, c, ne);
    for (int i = 0; i < e[var]; ++i) term = term * value;
    r = r + term;
  }
  return r;
}

MPoly MPoly::substitute(int var, const Rat& value) const {
  MPoly r(vars_);
  for (const auto& [e, c] : c_) {
    Rat v = c;
    int p = e[var];
    if (p >= 0) {
      for (int i = 0; i < p; ++i) v *= value;
    } else {
      if (value == 0) throw PolyError("substituting zero into negative exponent");
      for (int i = 0; i < -p; ++i) v /= value;
    }
    Exps ne = e;
    ne[var] = 0;
    auto it = r.c_.find(ne);
    if (it == r.c_.end()) {
      if (v != 0) r.c_[ne] = v;
    } else {
      it->second += v;
      if (it->second == 0) r.c_.erase(it);
    }
  }
  return r;
}

Cplx MPoly::eval(const std::vector<Cplx>& point) const {
  if (point.size() != vars_.size()) throw PolyError("eval arity mismatch");
  Cplx acc = 0.0;
  for (const auto& [e, c] : c_) {
    Cplx t = c.get_d();
    for (size_t i = 0; i < e.size(); ++i) t *= ipow(point[i], e[i]);
    acc += t;
  }
  return acc;
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat a = abs(c);
    bool all_zero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    bool wrote = false;
    if (a != 1 || all_zero) {
      os << a.get_str();
      wrote = true;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (e[i] != 1) os << "^" << e[i];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw PolyError("division by zero polynomial");
  MPoly q(a.vars());
  if (a.is_zero()) return q;
  const size_t nv = a.vars().size();
  // exponent box the quotient must live in
  std::vector<int> qmin(nv), qmax(nv);
  long cap = 1;
  for (size_t v = 0; v < nv; ++v) {
    int span_a = a.degree_in(int(v)) - a.order_in(int(v));
    int span_b = b.degree_in(int(v)) - b.order_in(int(v));
    if (span_a < span_b) throw PolyError("not divisible (degree span)");
    qmin[v] = a.order_in(int(v)) - b.order_in(int(v));
    qmax[v] = a.degree_in(int(v)) - b.degree_in(int(v));
    cap *= (span_a - span_b + 1);
    if (cap > 2000000) cap = 2000000;
  }
  MPoly r = a;
  auto lead = [](const MPoly& p) { return std::prev(p.terms().end()); };
  auto blead = lead(b);
  long iters = 0;
  while (!r.is_zero()) {
    if (++iters > cap + 1) throw PolyError("not divisible");
    auto rl = lead(r);
    MPoly::Exps e(nv);
    for (size_t v = 0; v < nv; ++v) {
      e[v] = rl->first[v] - blead->first[v];
      if (e[v] < qmin[v] || e[v] > qmax[v]) throw PolyError("not divisible");
    }
    MPoly t = MPoly::monomial(a.vars(), rl->second / blead->second, e);
    q = q + t;
    r = r - t * b;
  }
  return q;
}

MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var) {
  if (a.vars() != b.vars()) throw PolyError("resultant variable lists differ");
  int v = a.var_index(var);
  // clear Laurent offsets in var (unit multiples; resultant is used up to
  // normalization downstream)
  auto shift_var = [&](const MPoly& p) {
    int o = p.order_in(v);
    if (o >= 0) return p;
    MPoly r(p.vars());
    for (const auto& [e, c] : p.terms()) {
      MPoly::Exps ne = e;
      ne[v] -= o;
      r.set(ne, c);
    }
    return r;
  };
  MPoly pa = shift_var(a), pb = shift_var(b);
  int da = pa.degree_in(v), db = pb.degree_in(v);
  if (pa.is_zero() || pb.is_zero()) return MPoly(a.vars());
  if (da == 0 && db == 0) return MPoly::constant(a.vars(), 1);
  std::vector<MPoly> ca(da + 1, MPoly(a.vars())), cb(db + 1, MPoly(a.vars()));
  for (int i = 0; i <= da; ++i) ca[i] = pa.coeff_of(v, i);
  for (int i = 0; i <= db; ++i) cb[i] = pb.coeff_of(v, i);
  int n = da + db;
  std::vector<std::vector<MPoly>> M(n, std::vector<MPoly>(n, MPoly(a.vars())));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) M[i][i + j] = ca[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) M[db + i][i + j] = cb[db - j];
  // Bareiss fraction-free elimination
  MPoly prev = MPoly::constant(a.vars(), 1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k].is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!M[i][k].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return MPoly(a.vars());  // singular: resultant is 0
      std::swap(M[k], M[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        MPoly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = num.is_zero() ? num : exact_div(num, prev);
      }
      M[i][k] = MPoly(a.vars());
    }
    prev = M[k][k];
  }
  MPoly res = M[n - 1][n - 1];
  if (sign < 0) res = -res;
  return res;
}

MPoly bilaurent_to_mpoly(const BiLaurent& a) {
  MPoly p({"m", "l"});
  for (const auto& [k, c] : a.terms()) p.set({k.first, k.second}, Rat(c));
  return p;
}

BiLaurent mpoly_to_bilaurent(const MPoly& a) {
  int im = a.var_index("m"), il = a.var_index("l");
  // common denominator
  Int den = 1;
  for (const auto& [e, c] : a.terms()) {
    for (size_t i = 0; i < e.size(); ++i)
      if (int(i) != im && int(i) != il && e[i] != 0)
        throw PolyError("mpoly_to_bilaurent: extra variable present");
    Int d = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = den / g * d;
  }
  BiLaurent r;
  for (const auto& [e, c] : a.terms()) {
    Rat v = Rat(c) * Rat(den);
    v.canonicalize();
    r.set(e[im], e[il], Int(v.get_num()));
  }
  return r;
}

IntPoly1 mpoly_to_intpoly1(const MPoly& a, const std::string& var) {
  int iv = a.var_index(var);
  Int den = 1;
  for (const auto& [e, c] : a.terms()) {
    for (size_t i = 0; i < e.size(); ++i)
      if (int(i) != iv && e[i] != 0) throw PolyError("mpoly_to_intpoly1: extra variable present");
    Int d = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = den / g * d;
  }
  int shift = std::min(0, a.order_in(iv));
  IntPoly1 r;
  for (const auto& [e, c] : a.terms()) {
    Rat v = Rat(c) * Rat(den);
    v.canonicalize();
    r.set(e[iv] - shift, Int(v.get_num()));
  }
  return r;
}

// -------------------------------------------------- bivariate gcd machinery

namespace {

// Rational function in one variable, as a reduced quotient of IntPoly1.
struct RatFunc {
  IntPoly1 num, den;
  RatFunc() : num(), den(IntPoly1::constant(1)) {}
  explicit RatFunc(IntPoly1 n) : num(std::move(n)), den(IntPoly1::constant(1)) {}
  RatFunc(IntPoly1 n, IntPoly1 d) : num(std::move(n)), den(std::move(d)) { reduce(); }
  bool is_zero() const { return num.is_zero(); }
  void reduce() {
    if (den.is_zero()) throw PolyError("rational function with zero denominator");
    if (num.is_zero()) {
      den = IntPoly1::constant(1);
      return;
    }
    IntPoly1 g = gcd1(num, den);
    IntPoly1 qn, qd;
    try_exact_div(num, g, &qn);
    try_exact_div(den, g, &qd);
    // also cancel integer content
    Int cn = qn.content(), cd = qd.content();
    Int gc;
    mpz_gcd(gc.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    IntPoly1 n2, d2;
    for (const auto& [e, c] : qn.terms()) n2.set(e, c / gc);
    for (const auto& [e, c] : qd.terms()) d2.set(e, c / gc);
    if (d2.leading() < 0) {
      n2 = -n2;
      d2 = -d2;
    }
    num = n2;
    den = d2;
  }
  RatFunc operator+(const RatFunc& o) const { return RatFunc(num * o.den + o.num * den, den * o.den); }
  RatFunc operator-(const RatFunc& o) const { return RatFunc(num * o.den - o.num * den, den * o.den); }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw PolyError("rational function division by zero");
    return RatFunc(num * o.den, den * o.num);
  }
};

using RFPoly = std::map<int, RatFunc>;  // polynomial in the main variable

void rf_set(RFPoly& p, int e, RatFunc v) {
  if (v.is_zero())
    p.erase(e);
  else
    p[e] = std::move(v);
}

int rf_deg(const RFPoly& p) { return p.empty() ? -1 : p.rbegin()->first; }

RFPoly rf_mod(RFPoly a, const RFPoly& b) {
  int db = rf_deg(b);
  const RatFunc& lb = b.rbegin()->second;
  while (rf_deg(a) >= db) {
    int e = rf_deg(a) - db;
    RatFunc f = a.rbegin()->second / lb;
    for (const auto& [be, bc] : b) {
      RatFunc cur = a.count(be + e) ? a[be + e] : RatFunc();
      rf_set(a, be + e, cur - f * bc);
    }
  }
  return a;
}

// main variable m, coefficient variable l
RFPoly bil_to_rf(const BiLaurent& a) {
  RFPoly p;
  int dm = a.max_em();
  for (int i = a.min_em(); i <= dm; ++i) {
    IntPoly1 s;
    for (const auto& [k, c] : a.terms())
      if (k.first == i) s.set(k.second - a.min_el(), c);
    if (!s.is_zero()) p[i - a.min_em()] = RatFunc(s);
  }
  return p;
}

BiLaurent rf_to_bil(const RFPoly& p) {
  // clear denominators: multiply by lcm
  IntPoly1 lcm = IntPoly1::constant(1);
  for (const auto& [e, rf] : p) {
    IntPoly1 g = gcd1(lcm, rf.den);
    IntPoly1 q;
    try_exact_div(rf.den, g, &q);
    lcm = lcm * q;
  }
  BiLaurent r;
  for (const auto& [e, rf] : p) {
    IntPoly1 q;
    try_exact_div(lcm, rf.den, &q);
    IntPoly1 co = rf.num * q;
    for (const auto& [el, c] : co.terms()) r.set(e, el, c);
  }
  return r;
}

// content of a BiLaurent as a polynomial in m with IntPoly1(l) coefficients
IntPoly1 content_in_l(const BiLaurent& a) {
  IntPoly1 g;
  bool first = true;
  for (int i = a.min_em(); i <= a.max_em(); ++i) {
    IntPoly1 s;
    for (const auto& [k, c] : a.terms())
      if (k.first == i) s.set(k.second - a.min_el(), c);
    if (s.is_zero()) continue;
    g = first ? s.primitive_part() : gcd1(g, s);
    first = false;
    if (g.degree() == 0) break;
  }
  return g;
}

}  // namespace

BiLaurent gcd_bilaurent(const BiLaurent& a, const BiLaurent& b) {
  if (a.is_zero() && b.is_zero()) throw PolyError("gcd of two zero polynomials");
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  BiLaurent na = normalize(a), nb = normalize(b);
  if (deg_m(na) == 0 && deg_m(nb) == 0) {
    // both univariate in l
    IntPoly1 pa = coeff_slice(na, 0), pb = coeff_slice(nb, 0);
    IntPoly1 g = gcd1(pa, pb);
    BiLaurent r;
    for (const auto& [e, c] : g.terms()) r.set(0, e, c);
    return normalize(r);
  }
  IntPoly1 cont = gcd1(content_in_l(na), content_in_l(nb));
  RFPoly u = bil_to_rf(na), v = bil_to_rf(nb);
  if (rf_deg(u) < rf_deg(v)) std::swap(u, v);
  while (!v.empty()) {
    RFPoly r = rf_mod(u, v);
    u = v;
    v = r;
  }
  BiLaurent pp = rf_to_bil(u);
  // primitive part in l
  IntPoly1 ppc = content_in_l(pp);
  BiLaurent pp2;
  for (int i = pp.min_em(); i <= pp.max_em(); ++i) {
    IntPoly1 s;
    for (const auto& [k, c] : pp.terms())
      if (k.first == i) s.set(k.second - pp.min_el(), c);
    if (s.is_zero()) continue;
    IntPoly1 q;
    if (!try_exact_div(s, ppc, &q)) throw PolyError("internal: content division failed");
    for (const auto& [e, c] : q.terms()) pp2.set(i, e, c);
  }
  BiLaurent cb;
  for (const auto& [e, c] : cont.terms()) cb.set(0, e, c);
  return normalize(pp2 * cb);
}

BiLaurent squarefree_part(const BiLaurent& a) {
  BiLaurent p = normalize(a);
  if (p.terms().size() == 1) return BiLaurent::constant(1);
  if (!p.d_dm().is_zero()) {
    BiLaurent g = gcd_bilaurent(p, p.d_dm());
    BiLaurent q;
    if (!divides_bilaurent(g, p, &q)) throw PolyError("internal: squarefree division failed");
    p = q;
  }
  if (!p.d_dl().is_zero()) {
    BiLaurent g = gcd_bilaurent(p, p.d_dl());
    BiLaurent q;
    if (!divides_bilaurent(g, p, &q)) throw PolyError("internal: squarefree division failed");
    p = q;
  }
  return normalize(p);
}

}  // namespace casson
