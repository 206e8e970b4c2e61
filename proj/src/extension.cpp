#include "nilsoliton/extension.hpp"

#include <cmath>

namespace nilsoliton {

MetricSolvableAlgebra solvable_extension(const Bracket& b, const Operator& ad_h) {
  const int n = b.dim();
  if (ad_h.rows() != n || ad_h.cols() != n) throw InvalidBracket("ad(H) must act on the nilpotent part");
  std::vector<Term> terms = b.terms();
  // [e_h, e_x] = sum_k ad_h(k, x) e_k; stored as (x, h) with i < j, so negate.
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < n; ++k)
      if (ad_h(k, x) != 0.0) terms.push_back({x, n, k, -ad_h(k, x)});
  return MetricSolvableAlgebra{Bracket(n + 1, std::move(terms))};
}

MetricSolvableAlgebra rank_one_extension(const Bracket& b, const MinimalityCertificate& cert,
                                         const Tolerances& tol) {
  if (cert.kind != StructureKind::none) throw NotMinimal("extensions need a certificate without structure");
  if (!cert.minimal(tol.minimal)) throw NotMinimal("certificate residual is above the minimality tolerance");
  if (cert.derivation.rows() != b.dim()) throw NotMinimal("certificate does not match the bracket");
  const double scale = std::max(1.0, std::abs(cert.c));
  if (max_abs(cert.derivation) <= tol.rank * scale) throw AbelianDerivation("derivation part vanishes");
  if (!(cert.c < 0)) throw NotMinimal("soliton constant must be negative");
  const double trace = cert.derivation.trace();
  if (!(trace > 0)) throw NonPositiveTrace("derivation trace must be positive");
  return solvable_extension(b, cert.derivation / std::sqrt(trace));
}

EinsteinVerdict einstein_check(const MetricSolvableAlgebra& s, double tol) {
  EinsteinVerdict v;
  v.ricci = ricci_general(s);
  const int n = s.dim();
  v.constant = v.ricci.trace() / n;
  v.deviation = max_abs(v.ricci - v.constant * Operator::Identity(n, n));
  v.einstein = v.deviation < tol;
  return v;
}

}  // namespace nilsoliton
