#pragma once

#include <map>
#include <string>
#include <vector>

#include "casson/poly.hpp"
#include "casson/words.hpp"

namespace casson {

class EliminationError : public std::runtime_error {
public:
  explicit EliminationError(const std::string& what) : std::runtime_error(what) {}
};

/// Variable order used throughout the elimination pipeline.
inline const std::vector<std::string>& chart_vars() {
  static const std::vector<std::string> v = {"m", "s", "l"};
  return v;
}

/// Triangular normal-form assignment for a 2-generator presentation:
/// g1 -> [[m, 1], [0, 1/m]], g2 -> [[m, 0], [s, 1/m]]. Entries are Laurent
/// in m, polynomial in s.
std::map<std::string, Mat2p> riley_chart(const Presentation& p);

/// Numeric specialization of the chart at (m, s).
std::map<std::string, Mat2c> riley_chart_at(const Presentation& p, Cplx m, Cplx s);

struct RileyResult {
  MPoly phi;               // vars (m, s, l); l does not occur
  MPoly removed_factors;   // product of stripped factors (monomial units, content)
};

/// The single polynomial phi(m, s) whose vanishing (with s != 0)
/// characterizes irreducible chart representations satisfying the relator:
/// gcd of the relator entry-difference matrix over Q(m)[s], with monomial
/// units and s-free content stripped and reported.
RileyResult riley_polynomial(const Presentation& p);

/// A-polynomial by resultant elimination of s between phi and the
/// longitude-eigenvalue relation l = (rho(longitude))_11, with the l - 1
/// factor and repeated factors stripped. Returns 1 when there is no
/// irreducible locus.
BiLaurent a_polynomial(const Presentation& p);

}  // namespace casson
