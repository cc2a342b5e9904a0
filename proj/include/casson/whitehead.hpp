#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "casson/poly.hpp"
#include "casson/words.hpp"

namespace casson {

class WhiteheadError : public std::runtime_error {
public:
  explicit WhiteheadError(const std::string& what) : std::runtime_error(what) {}
};

enum class ChartKind { General, U1, U2, Diagonal };

/// Point of the representation chart rho(x) = [[u, s], [0, 1/u]],
/// rho(y) = [[v, 0], [t, 1/v]].
struct WhiteheadChart {
  Cplx s, t, u, v;
  ChartKind chart = ChartKind::General;

  /// Enforces u, v != 0 and the per-chart constraints (U1: s = 1,
  /// U2: t = 1, Diagonal: s = t = 0).
  void check() const;
};

/// Two-generator presentation of the Whitehead-link group with both
/// longitude words; the x-side longitude is stored as the presentation
/// longitude and the y-side longitude is returned by whitehead_lambda_y().
Presentation whitehead_presentation();
Word whitehead_lambda_y();

/// The chart polynomial cutting out the nonabelian representations,
/// a cubic in the product st over variables (s, t, u, v).
MPoly f_poly();

Cplx f_eval(const WhiteheadChart& c);

std::map<std::string, Mat2c> chart_rep(const WhiteheadChart& c);

/// Frobenius norm of eval(relator) - I at the chart point.
double relator_residual(const WhiteheadChart& c);

struct EquivalenceReport {
  int samples = 0;
  int on_curve_failures = 0;
  int off_curve_failures = 0;
  int root_failures = 0;
  std::vector<std::string> failures;

  bool ok() const {
    return on_curve_failures == 0 && off_curve_failures == 0 && root_failures == 0;
  }
  nlohmann::json to_json() const;
};

/// Statistical check that the relator is satisfied exactly on {f = 0} and
/// violated off it, sampling (u, v) away from 0 and the +-1 degeneracies.
EquivalenceReport f_equivalence_check(int samples, std::uint64_t seed);

enum class ParabolicSide { X, Y };

/// The reducible nonabelian family: one generator parabolic with sign +-1,
/// the other diagonal with the given parameter (excluded values 0, +-1).
WhiteheadChart reducible_nonabelian_family(ParabolicSide side, int sign, Cplx param);

/// Exact symbolic verification that the family satisfies the relator for
/// all parameter values, together with the boundary traces tr rho(y) and
/// tr rho(lambda_y) as polynomials in the parameter.
struct FamilyCertificate {
  bool relator_exact = false;
  MPoly trace_y;         // in the single variable p
  MPoly trace_lambda_y;  // in the single variable p
};
FamilyCertificate reducible_nonabelian_certificate(ParabolicSide side, int sign);

enum class Component { X0, X1, X0capX1, Indeterminate };
std::string component_name(Component c);

/// Locate a relator-satisfying chart point within the character variety:
/// reducible characters on X0, irreducible on X1, the reducible nonabelian
/// family and central-image diagonals on the intersection.
Component component_membership(const WhiteheadChart& c, double tol = 1e-8);

/// Riley-chart coordinates of the companion representation; for knots with
/// no irreducible locus (constant Riley polynomial) the representation is
/// the diagonal abelian one determined by m alone and s is 0.
struct RileyPoint {
  Cplx m = 1.0;
  Cplx s = 0.0;
  bool abelian = false;
};

struct GluingConfig {
  Presentation J;
  RileyPoint rho1;
  WhiteheadChart chart;
  Mat2c conj = {1.0, 0.0, 0.0, 1.0};  // applied to rho2 before comparing
  int n = 0;
  double residual = 0.0;

  nlohmann::json to_json() const;
};

std::map<std::string, Mat2c> rho1_rep(const GluingConfig& g);
std::map<std::string, Mat2c> rho2_rep(const GluingConfig& g);

/// || rho1(mu_J) - C rho2(lambda_y) C^-1 || + || rho1(lambda_J) -
/// C rho2(y lambda_y^n) C^-1 || with C the stored conjugator.
double gluing_residual(const GluingConfig& g);

struct SolveOptions {
  int max_iter = 100;
  double target = 1e-12;
  double accept = 1e-9;
  std::uint64_t seed = 20240229;
};

/// Damped Gauss-Newton on {companion equations, Whitehead relator, gluing
/// equations} from random starts; returns configs with residual below the
/// acceptance threshold, sorted by residual then parameters. May be empty.
std::vector<GluingConfig> solve_gluing(const Presentation& J, int n, int seeds,
                                       const SolveOptions& opts = {});

/// A M A^-1 for A = diag(a, 1/a).
template <typename T>
Mat2<T> bend_conjugate(const Mat2<T>& mat, const T& a) {
  return {mat.a, mat.b * a * a, mat.c / (a * a), mat.d};
}

/// Conjugate the Whitehead-side representation by diag(a, 1/a). Requires the
/// boundary-torus images rho2(y), rho2(lambda_y) diagonal in the glued frame
/// with eigenvalue != +-1, so the restriction is unchanged.
GluingConfig bend(const GluingConfig& g, Cplx a);

/// Bending for a connected-sum pair: conjugates every matrix of the second
/// assignment by diag(a, 1/a). The shared meridian image must be diagonal
/// with eigenvalue != +-1.
std::map<std::string, Mat2q> bend(const std::map<std::string, Mat2q>& rho2,
                                  const Word& shared_meridian, const Rat& a);

}  // namespace casson
