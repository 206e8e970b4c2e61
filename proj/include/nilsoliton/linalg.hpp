#ifndef NILSOLITON_LINALG_HPP
#define NILSOLITON_LINALG_HPP

#include "nilsoliton/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

namespace nilsoliton {

/// Frobenius (trace) inner product tr(A B^T).
template <typename DerivedA, typename DerivedB>
auto trace_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a.cwiseProduct(b).sum();
}

template <typename Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  return m.size() == 0 ? Scalar(0) : m.cwiseAbs().maxCoeff();
}

/// Matrix exponential by scaling and squaring of the truncated Taylor series.
template <typename Derived>
MatrixX<typename Derived::Scalar> matrix_exp(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using std::ceil;
  using std::log2;
  const Eigen::Index n = a.rows();
  const Scalar norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Scalar(0.5)) squarings = static_cast<int>(ceil(log2(norm / Scalar(0.5))));
  const MatrixX<Scalar> scaled = a / std::ldexp(Scalar(1), squarings);

  MatrixX<Scalar> result = MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> term = MatrixX<Scalar>::Identity(n, n);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int k = 1; k < 64; ++k) {
    term = (term * scaled) / Scalar(k);
    result += term;
    if (max_abs(term) <= eps * max_abs(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

/// Orthonormal basis (as columns) of the numerical kernel of `m`. Singular
/// values at or below rel_tol * sigma_max count as zero; a zero matrix has
/// the whole domain as kernel.
template <typename Derived>
MatrixX<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m,
                                               typename Derived::Scalar rel_tol) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0 || max_abs(m) == Scalar(0)) return MatrixX<Scalar>::Identity(cols, cols);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Scalar cutoff = rel_tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

/// Orthonormal basis (as columns) of the column span of `m`, with singular
/// values at or below abs_tol discarded.
template <typename Derived>
MatrixX<typename Derived::Scalar> range_basis(const Eigen::MatrixBase<Derived>& m,
                                              typename Derived::Scalar abs_tol) {
  using Scalar = typename Derived::Scalar;
  if (m.cols() == 0) return MatrixX<Scalar>(m.rows(), 0);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > abs_tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Ascending eigenvalues of the symmetric part of `m`.
template <typename Derived>
VectorX<typename Derived::Scalar> symmetric_spectrum(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> sym = (m + m.transpose()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Column-major flattening of a square matrix; the inverse is unvec.
template <typename Derived>
VectorX<typename Derived::Scalar> vec(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> dense = m;
  return VectorX<Scalar>(Eigen::Map<const VectorX<Scalar>>(dense.data(), dense.size()));
}

template <typename Derived>
MatrixX<typename Derived::Scalar> unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index n) {
  MatrixX<typename Derived::Scalar> m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = v(r + c * n);
  return m;
}

}  // namespace nilsoliton

#endif  // NILSOLITON_LINALG_HPP
