#ifndef NILSOLITON_EXTENSION_HPP
#define NILSOLITON_EXTENSION_HPP

#include "nilsoliton/minimality.hpp"

namespace nilsoliton {

/// s = R H + n with H = e_{n+1} orthonormal to n, [H, X] = D' X on n where
/// D' = D / sqrt(tr D), and the bracket of n unchanged. Throws NotMinimal
/// (residual >= tol.minimal, c >= 0, or a structured certificate),
/// AbelianDerivation (D = 0) or NonPositiveTrace (tr D <= 0).
MetricSolvableAlgebra rank_one_extension(const Bracket& b, const MinimalityCertificate& cert,
                                         const Tolerances& tol = {});

/// Same as rank_one_extension but with an explicit operator for ad(H)|n;
/// no derivation check is made beyond the Jacobi identity of the result.
MetricSolvableAlgebra solvable_extension(const Bracket& b, const Operator& ad_h);

struct EinsteinVerdict {
  bool einstein = false;
  /// scal / dim.
  double constant = 0;
  /// ||Ric - (scal/dim) I||_max.
  double deviation = 0;
  Operator ricci;
};

/// Ricci operator by the Koszul formula and comparison with a multiple of I.
EinsteinVerdict einstein_check(const MetricSolvableAlgebra& s, double tol = 1e-9);

}  // namespace nilsoliton

#endif  // NILSOLITON_EXTENSION_HPP
