#include "nilsoliton/minimality.hpp"

#include <cmath>
#include <numeric>

namespace nilsoliton {

std::optional<std::vector<int>> eigenvalue_type(const Operator& d, const EigenvalueTypeOptions& options) {
  if (d.size() == 0) return std::nullopt;
  const Vector eig = symmetric_spectrum(d);
  const double lmin = eig(0);
  const double scale = eig.cwiseAbs().maxCoeff();
  if (!(scale > 0) || !(lmin > options.tolerance * scale)) return std::nullopt;
  for (int m = 1; m <= options.max_multiplier; ++m) {
    const double s = m / lmin;
    std::vector<int> ints;
    ints.reserve(eig.size());
    bool fits = true;
    for (Eigen::Index i = 0; i < eig.size() && fits; ++i) {
      const double x = s * eig(i);
      const double k = std::round(x);
      fits = k >= 1 && std::abs(x - k) <= options.tolerance * x;
      ints.push_back(static_cast<int>(k));
    }
    if (fits) return ints;  // smallest m gives gcd 1
  }
  return std::nullopt;
}

ComparisonReport compare(const Bracket& first, const StructureTensor& gamma_first, const Bracket& second,
                         const StructureTensor& gamma_second, const Tolerances& tol) {
  if (gamma_first.kind != gamma_second.kind) throw WrongKind("structures of different kinds are not comparable");
  ComparisonReport report;
  const Bracket a = normalize_scal(first);
  const Bracket b = normalize_scal(second);
  report.residual_first = certify(a, gamma_first, tol).residual;
  report.residual_second = certify(b, gamma_second, tol).residual;
  report.spectrum_first = symmetric_spectrum(ricci_nilpotent(a));
  report.spectrum_second = symmetric_spectrum(ricci_nilpotent(b));
  if (a.dim() != b.dim()) {
    report.spectral_gap = std::numeric_limits<double>::infinity();
  } else {
    report.spectral_gap = max_abs(report.spectrum_first - report.spectrum_second);
  }
  const bool certified = report.residual_first < tol.minimal && report.residual_second < tol.minimal;
  if (certified && report.spectral_gap > tol.spectrum) report.verdict = Comparison::distinct;
  return report;
}

}  // namespace nilsoliton
