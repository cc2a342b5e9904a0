#include "casson/roots.hpp"

#include <algorithm>
#include <cmath>

namespace casson {

namespace {

// Horner evaluation of p and p' at z.
std::pair<Cplx, Cplx> eval_with_derivative(const std::vector<Cplx>& c, Cplx z) {
  Cplx p = 0.0, dp = 0.0;
  for (int i = int(c.size()) - 1; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

}  // namespace

std::vector<Cplx> aberth(const std::vector<Cplx>& coeffs, const RootOptions& opts) {
  std::vector<Cplx> c = coeffs;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() < 2) throw RootFindingError("degree < 1", {});
  int n = int(c.size()) - 1;
  // scale for conditioning
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  for (auto& v : c) v /= scale;

  // initial guesses on a circle sized by the Cauchy bound
  double radius = 0.0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i] / c[n]));
  radius = 1.0 + radius;
  std::vector<Cplx> z(n);
  for (int i = 0; i < n; ++i) {
    double theta = 2.0 * M_PI * i / n + 0.4;  // offset to avoid symmetry lock
    z[i] = std::polar(0.5 * radius, theta);
  }

  double tol = opts.rel_tol;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      auto [p, dp] = eval_with_derivative(c, z[i]);
      if (std::abs(p) == 0.0) continue;
      Cplx newton = (dp == Cplx(0.0)) ? Cplx(0.0) : p / dp;
      Cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      Cplx denom = 1.0 - newton * sum;
      Cplx step = (std::abs(denom) < 1e-300) ? newton : newton / denom;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (max_step < tol) {
      std::vector<Root> out;
      for (auto& r : z) out.push_back({r, 1});
      // residual check, scaled by coefficient magnitude
      for (const auto& r : z) {
        auto [p, dp] = eval_with_derivative(c, r);
        double s = std::max(1.0, std::pow(std::abs(r), n));
        if (std::abs(p) > 1e-8 * s)
          throw RootFindingError("root residual too large", out);
      }
      return z;
    }
  }
  std::vector<Root> partial;
  for (auto& r : z) partial.push_back({r, 1});
  throw RootFindingError("Aberth iteration did not converge", partial);
}

std::vector<Root> find_roots(const IntPoly1& p, const RootOptions& opts) {
  if (p.degree() < 1) throw RootFindingError("find_roots requires degree >= 1", {});
  std::vector<Root> out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    if (factor.degree() < 1) continue;
    std::vector<Cplx> coeffs(factor.degree() + 1, 0.0);
    for (const auto& [e, c] : factor.terms()) coeffs[e] = c.get_d();
    std::vector<Cplx> roots;
    if (factor.degree() == 1) {
      roots.push_back(-coeffs[0] / coeffs[1]);
    } else {
      try {
        roots = aberth(coeffs, opts);
      } catch (RootFindingError& e) {
        for (auto& r : e.partial_roots) r.multiplicity = mult;
        std::vector<Root> partial = out;
        partial.insert(partial.end(), e.partial_roots.begin(), e.partial_roots.end());
        throw RootFindingError(e.what(), partial);
      }
    }
    // Newton polish against the exact factor
    for (auto& r : roots) {
      for (int k = 0; k < 4; ++k) {
        Cplx pv = factor.eval(r);
        Cplx dv = factor.derivative().eval(r);
        if (std::abs(dv) < 1e-300) break;
        r -= pv / dv;
      }
      out.push_back({r, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  int total = 0;
  for (const auto& r : out) total += r.multiplicity;
  if (total != p.degree()) throw RootFindingError("multiplicity sum mismatch", out);
  return out;
}

}  // namespace casson
