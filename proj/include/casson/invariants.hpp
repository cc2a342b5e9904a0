#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "casson/poly.hpp"
#include "casson/words.hpp"

namespace casson {

class InvariantError : public std::runtime_error {
public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

struct KnotRecord {
  std::string name;
  BiLaurent ahat;      // normal form; reducible-locus factor l-1 excluded
  IntPoly1 alexander;  // |alexander(1)| = 1
  std::optional<Presentation> presentation;
  std::string provenance;

  /// Throws InvariantError naming the violated invariant.
  void validate() const;

  nlohmann::json to_json() const;
  static KnotRecord from_json(const nlohmann::json& j);
};

/// Load records from a JSON database file. Invalid records are skipped and
/// described in *issues; with issues == nullptr any invalid record throws.
/// An empty file yields an empty list.
std::vector<KnotRecord> load_db(const std::string& path,
                                std::vector<std::string>* issues = nullptr);
void save_db(const std::string& path, const std::vector<KnotRecord>& records);

/// Half the m-degree of the Ahat-polynomial, as an exact rational.
Rat lambda_prime(const KnotRecord& k);

struct AsymptoticResult {
  std::vector<std::pair<int, Rat>> estimates;  // (q, total/(2q)) over coprime q
  Rat extrapolated;                            // exact limit, deg_m / 2
};

/// Intersection-count estimates (1/2) * total / q over coprime q <= q_max,
/// with the exact limit extracted from the linear growth law.
AsymptoticResult lambda_prime_asymptotic(const KnotRecord& k, int p, int q_max);

KnotRecord connected_sum(const KnotRecord& k1, const KnotRecord& k2);

/// n t^2 + (1 - 2n) t + n, normalized (content, sign, and t-power units
/// removed); n = 0 yields the constant 1.
IntPoly1 alexander_twisted_double(long n);

struct AdmissibleResult {
  bool ok = false;
  int p_prime = 0;
  IntPoly1 witness;  // nontrivial gcd with t^p' - 1 when not admissible
};

/// Condition (ii): no p'-th root of unity is a root of the Alexander
/// polynomial, where p' = p for odd p and p' = p/2 for even p.
AdmissibleResult admissible_condition_ii(const IntPoly1& alexander, int p);

struct SeminormQuery {
  BiLaurent curve;  // nonzero, normal form
  int a = 0;        // xi = a*meridian + b*longitude
  int b = 0;
};

struct SeminormResult {
  int value = 0;
  bool degenerate = false;  // trace function constant on the curve
};

/// Generic fiber cardinality of the trace function m^a l^b + m^-a l^-b
/// restricted to the curve, via resultant elimination at `trials` random
/// generic values.
SeminormResult eigenvalue_seminorm(const SeminormQuery& query, int trials,
                                   std::uint64_t seed = 12345);

}  // namespace casson
