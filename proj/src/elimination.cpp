#include "casson/elimination.hpp"

#include <algorithm>

namespace casson {

namespace {

// View an MPoly in chart_vars() with no l-dependence as a BiLaurent in
// (m, s) so the bivariate gcd machinery applies.
BiLaurent ms_to_bilaurent(const MPoly& p) {
  int im = p.var_index("m"), is = p.var_index("s"), il = p.var_index("l");
  Int den = 1;
  for (const auto& [e, c] : p.terms()) {
    if (e[il] != 0) throw EliminationError("unexpected l-dependence");
    Int d = c.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    den = den / g * d;
  }
  BiLaurent r;
  for (const auto& [e, c] : p.terms()) {
    Rat v = Rat(c) * Rat(den);
    v.canonicalize();
    r.set(e[im], e[is], Int(v.get_num()));
  }
  return r;
}

MPoly bilaurent_to_ms(const BiLaurent& b) {
  MPoly p(chart_vars());
  for (const auto& [k, c] : b.terms()) p.set({k.first, k.second, 0}, Rat(c));
  return p;
}

}  // namespace

std::map<std::string, Mat2p> riley_chart(const Presentation& p) {
  if (p.generators.size() != 2)
    throw EliminationError("Riley chart requires exactly 2 generators");
  const auto& vars = chart_vars();
  MPoly m = MPoly::variable(vars, "m");
  MPoly mi = MPoly::monomial(vars, 1, {-1, 0, 0});
  MPoly s = MPoly::variable(vars, "s");
  MPoly one = MPoly::constant(vars, 1);
  MPoly zero = MPoly(vars);
  std::map<std::string, Mat2p> chart;
  chart[p.generators[0]] = {m, one, zero, mi};
  chart[p.generators[1]] = {m, zero, s, mi};
  return chart;
}

std::map<std::string, Mat2c> riley_chart_at(const Presentation& p, Cplx m, Cplx s) {
  if (p.generators.size() != 2)
    throw EliminationError("Riley chart requires exactly 2 generators");
  std::map<std::string, Mat2c> chart;
  chart[p.generators[0]] = {m, 1.0, 0.0, 1.0 / m};
  chart[p.generators[1]] = {m, 0.0, s, 1.0 / m};
  return chart;
}

RileyResult riley_polynomial(const Presentation& p) {
  if (p.relators.empty()) throw EliminationError("presentation has no relator");
  auto chart = riley_chart(p);
  const auto& vars = chart_vars();
  Mat2p id = identity_p(vars);

  BiLaurent g;  // gcd of the entry conditions, in (m, s)
  bool have = false;
  for (const Word& rel : p.relators) {
    Mat2p c = eval_word(rel, chart, id) - id;
    for (const MPoly* entry : {&c.a, &c.b, &c.c, &c.d}) {
      if (entry->is_zero()) continue;
      BiLaurent e = ms_to_bilaurent(*entry);
      g = have ? gcd_bilaurent(g, e) : normalize(e);
      have = true;
    }
  }
  if (!have) throw EliminationError("entry conditions identically zero (degenerate presentation)");

  RileyResult out;
  out.removed_factors = MPoly::constant(vars, 1);
  // normalization already strips monomial units m^a s^b; strip any s-free
  // content (gcd of the s-slices as polynomials in m)
  BiLaurent phi = g;  // normalized by gcd_bilaurent
  IntPoly1 content;   // in m
  bool first = true;
  int ds = phi.max_el();
  for (int i = 0; i <= ds; ++i) {
    IntPoly1 slice;
    for (const auto& [k, c] : phi.terms())
      if (k.second == i) slice.set(k.first, c);
    if (slice.is_zero()) continue;
    content = first ? slice.primitive_part() : gcd1(content, slice);
    first = false;
  }
  if (content.degree() > 0) {
    BiLaurent cb;
    for (const auto& [e, c] : content.terms()) cb.set(e, 0, c);
    BiLaurent q;
    if (!divides_bilaurent(cb, phi, &q))
      throw EliminationError("internal: content division failed");
    phi = q;
    out.removed_factors = out.removed_factors * bilaurent_to_ms(cb);
  }
  out.phi = bilaurent_to_ms(normalize(phi));
  return out;
}

BiLaurent a_polynomial(const Presentation& p) {
  RileyResult riley = riley_polynomial(p);
  if (riley.phi.is_constant())
    return BiLaurent::constant(1);  // no irreducible locus
  if (p.longitude.empty()) throw EliminationError("presentation has no longitude word");
  const auto& vars = chart_vars();

  auto chart = riley_chart(p);
  Mat2p lambda = eval_word(p.longitude, chart, identity_p(vars));
  // on the solution locus rho(longitude) is upper triangular; its (1,1)
  // entry is the eigenvalue paired with the meridian eigenvalue m
  MPoly rel = MPoly::variable(vars, "l") - lambda.a;

  MPoly res = resultant(riley.phi, rel, "s");
  if (res.is_zero())
    throw EliminationError("resultant vanished identically; factor: " + riley.phi.str());

  BiLaurent b = normalize(mpoly_to_bilaurent(res));
  // strip the reducible-locus factor l - 1
  BiLaurent lm1 = BiLaurent::monomial(1, 0, 1) - BiLaurent::constant(1);
  BiLaurent q;
  while (divides_bilaurent(lm1, b, &q)) b = q;
  if (b.terms().size() == 1) return BiLaurent::constant(1);
  return squarefree_part(b);
}

}  // namespace casson
