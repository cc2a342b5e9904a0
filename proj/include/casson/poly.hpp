#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace casson {

using Int = mpz_class;
using Rat = mpq_class;
using Cplx = std::complex<double>;

class PolyError : public std::runtime_error {
public:
  explicit PolyError(const std::string& what) : std::runtime_error(what) {}
};

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored sparsely as exponent -> coefficient. No zero coefficients are
/// stored; the zero polynomial is the empty map.
class IntPoly1 {
public:
  IntPoly1() = default;
  static IntPoly1 constant(Int c);
  static IntPoly1 monomial(Int c, int e);
  static IntPoly1 variable();  // t

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return c_.empty() ? -1 : c_.rbegin()->first; }
  /// Lowest stored exponent; -1 for zero.
  int order() const { return c_.empty() ? -1 : c_.begin()->first; }
  Int coeff(int e) const;
  Int leading() const;
  const std::map<int, Int>& terms() const { return c_; }

  void set(int e, Int c);

  IntPoly1 operator-() const;
  IntPoly1 operator+(const IntPoly1& o) const;
  IntPoly1 operator-(const IntPoly1& o) const;
  IntPoly1 operator*(const IntPoly1& o) const;
  bool operator==(const IntPoly1& o) const { return c_ == o.c_; }

  IntPoly1 derivative() const;
  /// gcd of coefficients (positive); 0 for the zero polynomial.
  Int content() const;
  /// divide by content and fix sign of leading coefficient positive.
  IntPoly1 primitive_part() const;
  /// divide out the largest power of t; returns removed power.
  IntPoly1 shift_to_order_zero(int* removed = nullptr) const;

  Int eval_int(const Int& x) const;
  Rat eval_rat(const Rat& x) const;
  Cplx eval(Cplx x) const;
  /// max |coefficient| as double (for residual scaling).
  double coeff_magnitude() const;

  nlohmann::json to_json() const;
  static IntPoly1 from_json(const nlohmann::json& j);
  std::string str(const std::string& var = "t") const;

private:
  std::map<int, Int> c_;
};

/// Quotient and remainder of exact pseudo-division free division over Q,
/// cleared back to integers: returns true and sets q iff b | a exactly in Q[t]
/// up to no denominator at all (integer quotient).
bool try_exact_div(const IntPoly1& a, const IntPoly1& b, IntPoly1* q);

/// Primitive gcd (positive leading coefficient).
IntPoly1 gcd1(const IntPoly1& a, const IntPoly1& b);

/// Yun square-free decomposition: list of (factor, multiplicity) with
/// product of factor^multiplicity equal to the primitive part of a.
std::vector<std::pair<IntPoly1, int>> squarefree_decomposition(const IntPoly1& a);

/// Bivariate Laurent polynomial in (m, l) with integer coefficients,
/// stored sparsely as (e_m, e_l) -> coefficient. Exponents may be negative.
class BiLaurent {
public:
  using Key = std::pair<int, int>;  // (e_m, e_l)

  BiLaurent() = default;
  static BiLaurent constant(Int c);
  static BiLaurent monomial(Int c, int em, int el);

  bool is_zero() const { return c_.empty(); }
  Int coeff(int em, int el) const;
  const std::map<Key, Int>& terms() const { return c_; }
  void set(int em, int el, Int c);

  BiLaurent operator-() const;
  BiLaurent operator+(const BiLaurent& o) const;
  BiLaurent operator-(const BiLaurent& o) const;
  BiLaurent operator*(const BiLaurent& o) const;
  bool operator==(const BiLaurent& o) const { return c_ == o.c_; }

  int min_em() const;
  int max_em() const;
  int min_el() const;
  int max_el() const;
  Int content() const;
  /// Leading coefficient in lexicographic (m, l) term order.
  Int lex_leading() const;

  BiLaurent d_dm() const;
  BiLaurent d_dl() const;

  Cplx eval(Cplx m, Cplx l) const;
  double coeff_magnitude() const;

  nlohmann::json to_json() const;
  static BiLaurent from_json(const nlohmann::json& j);
  std::string str() const;

private:
  std::map<Key, Int> c_;
};

/// Shift exponent minima to zero, divide by content, make lex-leading
/// coefficient positive. Throws PolyError on zero input.
BiLaurent normalize(const BiLaurent& a);

bool is_normal_form(const BiLaurent& a);

/// Maximum m-exponent of a normal-form polynomial. Throws on zero.
int deg_m(const BiLaurent& a);
int deg_l(const BiLaurent& a);

/// The slice alpha_i(l) with A = sum_i m^i alpha_i(l); requires normal form
/// and 0 <= i <= deg_m(A).
IntPoly1 coeff_slice(const BiLaurent& a, int i);

/// Exact divisibility test of normal forms, up to monomial units.
/// If it returns true and q != nullptr, *q holds the quotient (normalized).
bool divides_bilaurent(const BiLaurent& b, const BiLaurent& a, BiLaurent* q = nullptr);

/// Multivariate Laurent polynomial with rational coefficients over a fixed
/// ordered variable list. Exponents may be negative.
class MPoly {
public:
  using Exps = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  static MPoly constant(std::vector<std::string> vars, Rat c);
  static MPoly variable(std::vector<std::string> vars, const std::string& name);
  static MPoly monomial(std::vector<std::string> vars, Rat c, Exps e);

  const std::vector<std::string>& vars() const { return vars_; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // requires is_constant()
  const std::map<Exps, Rat>& terms() const { return c_; }
  void set(const Exps& e, Rat c);
  int var_index(const std::string& name) const;

  int degree_in(int var) const;  // max exponent; 0 for zero polynomial
  int order_in(int var) const;   // min exponent; 0 for zero polynomial

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Rat& r) const;
  bool operator==(const MPoly& o) const;

  MPoly derivative(int var) const;
  /// Coefficient of var^e, as an MPoly over the same variable list
  /// (the named variable appears with exponent 0).
  MPoly coeff_of(int var, int e) const;
  /// Substitute a polynomial for one variable (exponents of that variable
  /// must be >= 0).
  MPoly substitute(int var, const MPoly& value) const;
  MPoly substitute(int var, const Rat& value) const;

  Cplx eval(const std::vector<Cplx>& point) const;

  std::string str() const;

private:
  std::vector<std::string> vars_;
  std::map<Exps, Rat> c_;
  void check_compatible(const MPoly& o) const;
};

/// Exact division in the Laurent polynomial ring; throws PolyError if b
/// does not divide a.
MPoly exact_div(const MPoly& a, const MPoly& b);

/// Sylvester resultant eliminating exactly the named variable, computed by
/// fraction-free (Bareiss) elimination over the Laurent polynomial ring.
MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var);

/// Conversions between BiLaurent and MPoly over {m, l}.
MPoly bilaurent_to_mpoly(const BiLaurent& a);
BiLaurent mpoly_to_bilaurent(const MPoly& a);
/// MPoly that involves only one effective variable -> IntPoly1 (clears
/// rational denominators and Laurent offsets; reports cleared data if asked).
IntPoly1 mpoly_to_intpoly1(const MPoly& a, const std::string& var);

/// Square-free part of a normal-form BiLaurent (gcd with both partials
/// divided out), normalized.
BiLaurent squarefree_part(const BiLaurent& a);

/// gcd of two BiLaurent polynomials, normalized; computed via univariate
/// Euclid over the rational-function field in the other variable.
BiLaurent gcd_bilaurent(const BiLaurent& a, const BiLaurent& b);

}  // namespace casson
