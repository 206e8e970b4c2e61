#ifndef NILSOLITON_MINIMALITY_HPP
#define NILSOLITON_MINIMALITY_HPP

#include "nilsoliton/curvature.hpp"

#include <optional>
#include <vector>

namespace nilsoliton {

/// Orthogonal projector (trace inner product) onto span(I) + Der(mu), with
/// the decomposition of a projected operator into c I + D.
template <typename Scalar>
class SolitonSubspace {
 public:
  explicit SolitonSubspace(const BasicBracket<Scalar>& b, const Tolerances& tol = {}) : n_(b.dim()) {
    derivations_ = kernel_basis(action_matrix(b), Scalar(tol.rank));
    const VectorX<Scalar> id = vec(MatrixX<Scalar>::Identity(n_, n_));
    identity_perp_ = id - project_der(id);
    const Scalar norm = identity_perp_.norm();
    // Only the abelian bracket has I in Der(mu); there c stays 0.
    if (norm > std::sqrt(Scalar(n_)) * Scalar(tol.rank)) unit_identity_perp_ = identity_perp_ / norm;
  }

  /// Orthonormal basis of Der(mu) as columns of vec'd operators.
  const MatrixX<Scalar>& derivations() const { return derivations_; }

  /// Least-squares split of `r` as c I + D + remainder with D in Der(mu).
  struct Split {
    Scalar c = 0;
    MatrixX<Scalar> derivation;
    MatrixX<Scalar> remainder;
  };

  template <typename Derived>
  Split split(const Eigen::MatrixBase<Derived>& r) const {
    const VectorX<Scalar> v = vec(r);
    VectorX<Scalar> projected = project_der(v);
    Split out;
    if (unit_identity_perp_) {
      projected += unit_identity_perp_->dot(v) * *unit_identity_perp_;
      out.c = v.dot(identity_perp_) / identity_perp_.squaredNorm();
    }
    VectorX<Scalar> d = projected;
    for (int i = 0; i < n_; ++i) d(i + i * n_) -= out.c;
    out.derivation = unvec(d, n_);
    out.remainder = unvec(VectorX<Scalar>(v - projected), n_);
    return out;
  }

 private:
  VectorX<Scalar> project_der(const VectorX<Scalar>& v) const {
    if (derivations_.cols() == 0) return VectorX<Scalar>::Zero(v.size());
    return derivations_ * (derivations_.transpose() * v);
  }

  int n_;
  MatrixX<Scalar> derivations_;
  VectorX<Scalar> identity_perp_;
  std::optional<VectorX<Scalar>> unit_identity_perp_;
};

/// Witness (or refutation) of Ric^gamma = c I + D with D in Der(mu).
template <typename Scalar>
struct BasicMinimalityCertificate {
  Scalar c = 0;
  MatrixX<Scalar> derivation;
  /// Frobenius distance of Ric^gamma to span(I) + Der(mu).
  Scalar residual = 0;
  /// Coprime positive integers (sorted, with multiplicity) proportional to
  /// the eigenvalues of D, when such a scaling exists.
  std::optional<std::vector<int>> eigenvalue_type;
  /// Ascending eigenvalues of the symmetric part of D.
  VectorX<Scalar> derivation_spectrum;
  StructureKind kind = StructureKind::none;
  /// Integrability residual of gamma for this bracket; informative only.
  double integrability_residual = 0;

  bool minimal(double tol) const { return static_cast<double>(residual) < tol; }
};

using MinimalityCertificate = BasicMinimalityCertificate<double>;

struct EigenvalueTypeOptions {
  double tolerance = 1e-6;
  int max_multiplier = 60;
};

/// Searches scalings m / lambda_min, m = 1..max_multiplier, that send every
/// eigenvalue of (D + D^T) / 2 to a positive integer within a relative
/// tolerance. Empty when an eigenvalue is not positive or no scaling fits.
std::optional<std::vector<int>> eigenvalue_type(const Operator& d, const EigenvalueTypeOptions& options = {});

template <typename Scalar>
BasicMinimalityCertificate<Scalar> certify(const BasicBracket<Scalar>& b,
                                           const BasicStructureTensor<Scalar>& gamma = {},
                                           const Tolerances& tol = {}) {
  const MatrixX<Scalar> ric = invariant_ricci(ricci_nilpotent(b), gamma);
  const SolitonSubspace<Scalar> subspace(b, tol);
  auto split = subspace.split(ric);
  BasicMinimalityCertificate<Scalar> cert;
  cert.c = split.c;
  cert.residual = split.remainder.norm();
  cert.derivation = std::move(split.derivation);
  cert.derivation_spectrum = symmetric_spectrum(cert.derivation);
  cert.kind = gamma.kind;
  cert.integrability_residual = integrability(gamma, b, tol).residual;
  const Operator d = cert.derivation.template cast<double>();
  cert.eigenvalue_type = eigenvalue_type(d);
  return cert;
}

/// Rescales a nonzero bracket so that scal = -1/4 ||mu||^2 = -1. Throws ZeroBracket.
template <typename Scalar>
BasicBracket<Scalar> normalize_scal(const BasicBracket<Scalar>& b) {
  const Scalar norm2 = b.squared_norm();
  if (!(norm2 > Scalar(0))) throw ZeroBracket("cannot normalize the zero bracket");
  return (Scalar(2) / std::sqrt(norm2)) * b;
}

enum class Comparison { distinct, inconclusive };

inline std::string_view to_string(Comparison c) {
  return c == Comparison::distinct ? "distinct" : "inconclusive";
}

struct ComparisonReport {
  Comparison verdict = Comparison::inconclusive;
  /// Max-norm gap between the sorted Ricci spectra (after scal = -1).
  double spectral_gap = 0;
  Vector spectrum_first;
  Vector spectrum_second;
  double residual_first = 0;
  double residual_second = 0;
};

/// Spectral non-isomorphism test for two structures with minimal compatible
/// metrics. Never claims isomorphism: "distinct" certifies the structures
/// are not isomorphic, anything else is inconclusive. Throws WrongKind when
/// the structure kinds differ.
ComparisonReport compare(const Bracket& first, const StructureTensor& gamma_first, const Bracket& second,
                         const StructureTensor& gamma_second, const Tolerances& tol = {});

}  // namespace nilsoliton

#endif  // NILSOLITON_MINIMALITY_HPP
