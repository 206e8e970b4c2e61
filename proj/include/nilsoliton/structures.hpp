#ifndef NILSOLITON_STRUCTURES_HPP
#define NILSOLITON_STRUCTURES_HPP

#include "nilsoliton/bracket.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilsoliton {

enum class StructureKind { none, symplectic, complex, hypercomplex };

inline std::string_view to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::none: return "none";
    case StructureKind::symplectic: return "symplectic";
    case StructureKind::complex: return "complex";
    case StructureKind::hypercomplex: return "hypercomplex";
  }
  return "none";
}

inline std::optional<StructureKind> parse_structure_kind(std::string_view s) {
  if (s == "none") return StructureKind::none;
  if (s == "symplectic") return StructureKind::symplectic;
  if (s == "complex") return StructureKind::complex;
  if (s == "hypercomplex") return StructureKind::hypercomplex;
  return std::nullopt;
}

/// A geometric structure on R^n with the fixed inner product <e_i, e_j> = delta_ij.
/// Symplectic forms are carried by J through omega(X, Y) = <X, J Y>.
template <typename Scalar>
struct BasicStructureTensor {
  StructureKind kind = StructureKind::none;
  /// J (symplectic, complex) or J1, J2, J3 (hypercomplex).
  std::vector<MatrixX<Scalar>> operators;

  static BasicStructureTensor none() { return {}; }
  static BasicStructureTensor symplectic(MatrixX<Scalar> j) { return {StructureKind::symplectic, {std::move(j)}}; }
  static BasicStructureTensor complex(MatrixX<Scalar> j) { return {StructureKind::complex, {std::move(j)}}; }
  static BasicStructureTensor hypercomplex(MatrixX<Scalar> j1, MatrixX<Scalar> j2, MatrixX<Scalar> j3) {
    return {StructureKind::hypercomplex, {std::move(j1), std::move(j2), std::move(j3)}};
  }

  const MatrixX<Scalar>& j(std::size_t index = 0) const { return operators.at(index); }
};

using StructureTensor = BasicStructureTensor<double>;

/// Max-norm residuals of the algebraic identities a structure must satisfy.
struct StructureResiduals {
  double square = 0;      ///< max_i |J_i^2 + I|
  double orthogonal = 0;  ///< max_i |J_i^T J_i - I|
  double quaternion = 0;  ///< |J1 J2 - J3| and |J2 J1 + J3| (hypercomplex only)

  double worst() const { return std::max({square, orthogonal, quaternion}); }
  bool ok(double tol) const { return worst() < tol; }
};

template <typename Scalar>
StructureResiduals check_structure(const BasicStructureTensor<Scalar>& gamma) {
  StructureResiduals r;
  for (const auto& j : gamma.operators) {
    const auto id = MatrixX<Scalar>::Identity(j.rows(), j.cols());
    r.square = std::max(r.square, static_cast<double>(max_abs(j * j + id)));
    r.orthogonal = std::max(r.orthogonal, static_cast<double>(max_abs(j.transpose() * j - id)));
  }
  if (gamma.kind == StructureKind::hypercomplex) {
    const auto& j1 = gamma.j(0);
    const auto& j2 = gamma.j(1);
    const auto& j3 = gamma.j(2);
    r.quaternion = static_cast<double>(std::max(max_abs(j1 * j2 - j3), max_abs(j2 * j1 + j3)));
  }
  return r;
}

/// A predicate decided from a max-norm residual.
struct Predicate {
  bool holds = false;
  double residual = 0;
};

/// Cyclic sum omega(mu(X,Y),Z) + omega(mu(Y,Z),X) + omega(mu(Z,X),Y) over
/// basis triples, omega(X, Y) = <X, J Y>.
template <typename Scalar>
Predicate is_closed(const BasicStructureTensor<Scalar>& gamma, const BasicBracket<Scalar>& b,
                    const Tolerances& tol = {}) {
  if (gamma.kind != StructureKind::symplectic) throw WrongKind("closedness needs a symplectic structure");
  const int n = b.dim();
  const MatrixX<Scalar>& j = gamma.j();
  const auto ad = b.adjoints();
  // omega(mu(e_a,e_b), e_c) = mu(e_a,e_b)^T J e_c
  Scalar worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        const Scalar s = ad[x].col(y).dot(j.col(z)) + ad[y].col(z).dot(j.col(x)) + ad[z].col(x).dot(j.col(y));
        worst = std::max(worst, Scalar(std::abs(s)));
      }
  const double r = static_cast<double>(worst);
  return {r < tol.structure, r};
}

namespace detail {

template <typename Scalar>
void require_almost_complex(const MatrixX<Scalar>& j, int n, double tol) {
  if (j.rows() != n || j.cols() != n) throw BadAlmostComplex("J shape does not match bracket");
  if (max_abs(j * j + MatrixX<Scalar>::Identity(n, n)) >= Scalar(tol))
    throw BadAlmostComplex("J^2 != -I");
}

// Max over basis pairs of |f(X, Y)| where f is given per pair by a callable.
template <typename Scalar, typename F>
Scalar pairwise_max(int n, F&& f) {
  Scalar worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) worst = std::max(worst, Scalar(max_abs(f(x, y))));
  return worst;
}

}  // namespace detail

/// Defect of mu(JX,JY) = mu(X,Y) + J mu(JX,Y) + J mu(X,JY). Throws
/// BadAlmostComplex unless J^2 = -I.
template <typename Scalar, typename Derived>
Predicate is_integrable(const Eigen::MatrixBase<Derived>& j_in, const BasicBracket<Scalar>& b,
                        const Tolerances& tol = {}) {
  const int n = b.dim();
  const MatrixX<Scalar> j = j_in;
  detail::require_almost_complex(j, n, tol.structure);
  const Scalar r = detail::pairwise_max<Scalar>(n, [&](int x, int y) {
    const auto jx = j.col(x);
    const auto jy = j.col(y);
    const auto ex = MatrixX<Scalar>::Identity(n, n).col(x);
    const auto ey = MatrixX<Scalar>::Identity(n, n).col(y);
    return VectorX<Scalar>(b(jx, jy) - b(ex, ey) - j * b(jx, ey) - j * b(ex, jy));
  });
  return {static_cast<double>(r) < tol.structure, static_cast<double>(r)};
}

/// Defect of mu(JX, JY) = mu(X, Y).
template <typename Scalar, typename Derived>
Predicate is_abelian(const Eigen::MatrixBase<Derived>& j_in, const BasicBracket<Scalar>& b,
                     const Tolerances& tol = {}) {
  const int n = b.dim();
  const MatrixX<Scalar> j = j_in;
  detail::require_almost_complex(j, n, tol.structure);
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(n, n);
  const Scalar r = detail::pairwise_max<Scalar>(
      n, [&](int x, int y) { return VectorX<Scalar>(b(j.col(x), j.col(y)) - b(id.col(x), id.col(y))); });
  return {static_cast<double>(r) < tol.structure, static_cast<double>(r)};
}

/// Defect of mu(JX, Y) = J mu(X, Y), over all ordered basis pairs.
template <typename Scalar, typename Derived>
Predicate is_bi_invariant(const Eigen::MatrixBase<Derived>& j_in, const BasicBracket<Scalar>& b,
                          const Tolerances& tol = {}) {
  const int n = b.dim();
  const MatrixX<Scalar> j = j_in;
  detail::require_almost_complex(j, n, tol.structure);
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(n, n);
  Scalar worst = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      worst = std::max(worst, Scalar(max_abs(b(j.col(x), id.col(y)) - j * b(id.col(x), id.col(y)))));
  return {static_cast<double>(worst) < tol.structure, static_cast<double>(worst)};
}

/// Flags that apply to the structure kind; the others stay empty. For
/// hypercomplex structures each flag is the conjunction over J1, J2, J3 with
/// the worst residual.
struct StructureClassification {
  std::optional<Predicate> integrable;
  std::optional<Predicate> abelian;
  std::optional<Predicate> bi_invariant;
  std::optional<Predicate> closed;
};

template <typename Scalar>
StructureClassification classify(const BasicStructureTensor<Scalar>& gamma, const BasicBracket<Scalar>& b,
                                 const Tolerances& tol = {}) {
  StructureClassification out;
  auto merge = [](std::optional<Predicate>& acc, const Predicate& p) {
    if (!acc) {
      acc = p;
      return;
    }
    acc->holds = acc->holds && p.holds;
    acc->residual = std::max(acc->residual, p.residual);
  };
  switch (gamma.kind) {
    case StructureKind::none: break;
    case StructureKind::symplectic: out.closed = is_closed(gamma, b, tol); break;
    case StructureKind::complex:
    case StructureKind::hypercomplex:
      for (const auto& j : gamma.operators) {
        merge(out.integrable, is_integrable(j, b, tol));
        merge(out.abelian, is_abelian(j, b, tol));
        merge(out.bi_invariant, is_bi_invariant(j, b, tol));
      }
      break;
  }
  return out;
}

/// Residual of the integrability condition attached to the structure kind
/// (closedness for symplectic, all J_i integrable otherwise, 0 for none).
template <typename Scalar>
Predicate integrability(const BasicStructureTensor<Scalar>& gamma, const BasicBracket<Scalar>& b,
                        const Tolerances& tol = {}) {
  switch (gamma.kind) {
    case StructureKind::none: return {true, 0.0};
    case StructureKind::symplectic: return is_closed(gamma, b, tol);
    case StructureKind::complex:
    case StructureKind::hypercomplex: {
      Predicate all{true, 0.0};
      for (const auto& j : gamma.operators) {
        const Predicate p = is_integrable(j, b, tol);
        all.holds = all.holds && p.holds;
        all.residual = std::max(all.residual, p.residual);
      }
      return all;
    }
  }
  return {true, 0.0};
}

/// Orthogonal projection of a symmetric operator onto p_gamma: the symmetric
/// maps anti-commuting with J (symplectic), commuting with J (complex), or
/// commuting with every J_i (hypercomplex). The identity for kind none.
template <typename Scalar, typename Derived>
MatrixX<Scalar> invariant_ricci(const Eigen::MatrixBase<Derived>& ric, const BasicStructureTensor<Scalar>& gamma) {
  const MatrixX<Scalar> r = ric;
  switch (gamma.kind) {
    case StructureKind::none: return r;
    case StructureKind::symplectic: return (r + gamma.j() * r * gamma.j()) / Scalar(2);
    case StructureKind::complex: return (r - gamma.j() * r * gamma.j()) / Scalar(2);
    case StructureKind::hypercomplex: {
      MatrixX<Scalar> acc = r;
      for (const auto& j : gamma.operators) acc -= j * r * j;
      return acc / Scalar(4);
    }
  }
  return r;
}

/// Orthonormal (trace inner product) basis of p_gamma.
template <typename Scalar>
std::vector<MatrixX<Scalar>> invariant_symmetric_basis(int n, const BasicStructureTensor<Scalar>& gamma) {
  const int count = n * (n + 1) / 2;
  MatrixX<Scalar> images(n * n, count);
  int c = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b, ++c) {
      MatrixX<Scalar> e = MatrixX<Scalar>::Zero(n, n);
      e(a, b) = e(b, a) = Scalar(1);
      images.col(c) = vec(invariant_ricci(e, gamma));
    }
  const MatrixX<Scalar> range = range_basis(images, Scalar(1e-12));
  std::vector<MatrixX<Scalar>> basis;
  for (Eigen::Index k = 0; k < range.cols(); ++k) basis.push_back(unvec(range.col(k), n));
  return basis;
}

}  // namespace nilsoliton

#endif  // NILSOLITON_STRUCTURES_HPP
