#ifndef NILSOLITON_CURVATURE_HPP
#define NILSOLITON_CURVATURE_HPP

#include "nilsoliton/bracket.hpp"
#include "nilsoliton/structures.hpp"

#include <vector>

namespace nilsoliton {

/// Ricci operator of a nilpotent bracket under the fixed orthonormal metric:
///   <Ric X, Y> = -1/2 sum_ij <mu(X,e_i),e_j><mu(Y,e_i),e_j>
///              + 1/4 sum_ij <mu(e_i,e_j),X><mu(e_i,e_j),Y>.
template <typename Scalar>
MatrixX<Scalar> ricci_nilpotent(const BasicBracket<Scalar>& b) {
  const int n = b.dim();
  const auto ad = b.adjoints();
  MatrixX<Scalar> gram(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) gram(x, y) = gram(y, x) = trace_inner(ad[x], ad[y]);
  const MatrixX<Scalar> m = b.structure_matrix();
  return -gram / Scalar(2) + (m * m.transpose()) / Scalar(4);
}

/// A Lie algebra (not necessarily nilpotent or unimodular) with the basis
/// e_1..e_n declared orthonormal.
template <typename Scalar>
struct BasicMetricAlgebra {
  BasicBracket<Scalar> bracket;

  int dim() const { return bracket.dim(); }
};

using MetricSolvableAlgebra = BasicMetricAlgebra<double>;

/// Connection matrices of the Levi-Civita connection from the Koszul formula:
/// nabla[i](k, j) = <nabla_{e_i} e_j, e_k>
///   = 1/2 (<[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>).
/// Throws InvalidBracket if Jacobi fails beyond `jacobi_tol`.
template <typename Scalar>
std::vector<MatrixX<Scalar>> levi_civita(const BasicMetricAlgebra<Scalar>& s, double jacobi_tol = 1e-9) {
  const auto& b = s.bracket;
  const double jr = static_cast<double>(jacobi_residual(b));
  if (!(jr <= jacobi_tol * std::max(1.0, static_cast<double>(b.max_coefficient() * b.max_coefficient()))))
    throw InvalidBracket("bracket violates the Jacobi identity");
  const int n = b.dim();
  const auto ad = b.adjoints();  // ad[a](c, b) = <[e_a, e_b], e_c>
  auto c = [&](int a, int bb, int cc) { return ad[a](cc, bb); };
  std::vector<MatrixX<Scalar>> nabla(n, MatrixX<Scalar>::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) nabla[i](k, j) = (c(i, j, k) - c(j, k, i) + c(k, i, j)) / Scalar(2);
  return nabla;
}

/// Ricci operator from the full curvature tensor
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
/// Ric(Y, Z) = sum_i <R(e_i, Y) Z, e_i>.
template <typename Scalar>
MatrixX<Scalar> ricci_general(const BasicMetricAlgebra<Scalar>& s, double jacobi_tol = 1e-9) {
  const auto nabla = levi_civita(s, jacobi_tol);
  const int n = s.dim();
  const auto ad = s.bracket.adjoints();
  MatrixX<Scalar> ric = MatrixX<Scalar>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      MatrixX<Scalar> r = nabla[i] * nabla[a] - nabla[a] * nabla[i];
      for (int c = 0; c < n; ++c) {
        const Scalar coeff = ad[i](c, a);
        if (coeff != Scalar(0)) r -= coeff * nabla[c];
      }
      // column b of r is R(e_i, e_a) e_b; pick the e_i component
      ric.row(a) += r.row(i);
    }
  return ric;
}

/// Curvature data for a nilpotent bracket with a structure.
template <typename Scalar>
struct BasicCurvatureReport {
  MatrixX<Scalar> ricci;
  MatrixX<Scalar> invariant_ricci;
  Scalar scal = 0;
  StructureKind kind = StructureKind::none;
};

using CurvatureReport = BasicCurvatureReport<double>;

template <typename Scalar>
BasicCurvatureReport<Scalar> curvature(const BasicBracket<Scalar>& b,
                                       const BasicStructureTensor<Scalar>& gamma = {}) {
  BasicCurvatureReport<Scalar> out;
  out.ricci = ricci_nilpotent(b);
  out.invariant_ricci = invariant_ricci(out.ricci, gamma);
  out.scal = scalar_curvature(b);
  out.kind = gamma.kind;
  return out;
}

}  // namespace nilsoliton

#endif  // NILSOLITON_CURVATURE_HPP
