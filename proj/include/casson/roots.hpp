#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "casson/poly.hpp"

namespace casson {

struct Root {
  Cplx z;
  int multiplicity = 1;
};

struct RootOptions {
  double rel_tol = 1e-12;
  int max_iter = 200;
};

class RootFindingError : public std::runtime_error {
public:
  RootFindingError(const std::string& what, std::vector<Root> partial)
      : std::runtime_error(what), partial_roots(std::move(partial)) {}
  std::vector<Root> partial_roots;
};

/// Aberth simultaneous iteration on a dense complex coefficient vector
/// (c[0] + c[1] z + ...). The polynomial should be square-free for full
/// accuracy. Throws RootFindingError on nonconvergence.
std::vector<Cplx> aberth(const std::vector<Cplx>& coeffs, const RootOptions& opts = {});

/// All complex roots with exact multiplicities: square-free decomposition
/// first, then Aberth on each square-free factor. Multiplicities sum to the
/// degree. Requires degree >= 1.
std::vector<Root> find_roots(const IntPoly1& p, const RootOptions& opts = {});

}  // namespace casson
