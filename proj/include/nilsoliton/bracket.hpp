#ifndef NILSOLITON_BRACKET_HPP
#define NILSOLITON_BRACKET_HPP

#include "nilsoliton/linalg.hpp"
#include "nilsoliton/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace nilsoliton {

/// One structure constant: mu(e_i, e_j) has coefficient c along e_k.
/// Indices are 0-based with i < j.
template <typename Scalar>
struct BasicTerm {
  int i = 0;
  int j = 0;
  int k = 0;
  Scalar c = 0;

  friend bool operator==(const BasicTerm&, const BasicTerm&) = default;
};

/// A skew-symmetric bilinear map mu on R^n, stored as sparse structure
/// constants in canonical (i < j) order. Elements of the bracket space V that
/// fail Jacobi (e.g. infinitesimal actions) use the same type.
template <typename Scalar>
class BasicBracket {
 public:
  using Term = BasicTerm<Scalar>;

  BasicBracket() = default;

  /// Zero bracket on R^n.
  explicit BasicBracket(int dim) : dim_(dim) {
    if (dim <= 0) throw InvalidTerm("bracket dimension must be positive");
  }

  /// Throws InvalidTerm for out-of-range indices, i >= j, or a repeated (i,j,k).
  BasicBracket(int dim, std::vector<Term> terms) : BasicBracket(dim) {
    for (const Term& t : terms) {
      if (t.i < 0 || t.j < 0 || t.k < 0 || t.i >= dim || t.j >= dim || t.k >= dim)
        throw InvalidTerm("structure constant index out of range");
      if (t.i >= t.j) throw InvalidTerm("structure constants must satisfy i < j");
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    for (std::size_t p = 1; p < terms.size(); ++p) {
      if (terms[p].i == terms[p - 1].i && terms[p].j == terms[p - 1].j && terms[p].k == terms[p - 1].k)
        throw InvalidTerm("duplicate structure constant (" + std::to_string(terms[p].i + 1) + "," +
                          std::to_string(terms[p].j + 1) + "," + std::to_string(terms[p].k + 1) + ")");
    }
    std::erase_if(terms, [](const Term& t) { return t.c == Scalar(0); });
    terms_ = std::move(terms);
  }

  /// Builds a bracket from its n x n^2 structure matrix (column i*n+j holds
  /// mu(e_i, e_j)); only the i < j columns are read.
  template <typename Derived>
  static BasicBracket from_structure_matrix(const Eigen::MatrixBase<Derived>& expr) {
    const MatrixX<Scalar> m = expr;
    const int n = static_cast<int>(m.rows());
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (m(k, i * n + j) != Scalar(0)) terms.push_back({i, j, k, m(k, i * n + j)});
    return BasicBracket(n, std::move(terms));
  }

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  template <typename Other>
  BasicBracket<Other> cast() const {
    std::vector<BasicTerm<Other>> out;
    out.reserve(terms_.size());
    for (const Term& t : terms_) out.push_back({t.i, t.j, t.k, static_cast<Other>(t.c)});
    return BasicBracket<Other>(dim_, std::move(out));
  }
  bool is_zero() const { return terms_.empty(); }

  /// Dense n x n^2 matrix whose column i*n+j is mu(e_i, e_j).
  MatrixX<Scalar> structure_matrix() const {
    MatrixX<Scalar> m = MatrixX<Scalar>::Zero(dim_, dim_ * dim_);
    for (const Term& t : terms_) {
      m(t.k, t.i * dim_ + t.j) += t.c;
      m(t.k, t.j * dim_ + t.i) -= t.c;
    }
    return m;
  }

  /// ad(e_i) for every i: ad[i](k, j) = <mu(e_i, e_j), e_k>.
  std::vector<MatrixX<Scalar>> adjoints() const {
    std::vector<MatrixX<Scalar>> ad(dim_, MatrixX<Scalar>::Zero(dim_, dim_));
    for (const Term& t : terms_) {
      ad[t.i](t.k, t.j) += t.c;
      ad[t.j](t.k, t.i) -= t.c;
    }
    return ad;
  }

  template <typename DX, typename DY>
  VectorX<Scalar> operator()(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) const {
    VectorX<Scalar> out = VectorX<Scalar>::Zero(dim_);
    for (const Term& t : terms_) out(t.k) += t.c * (x(t.i) * y(t.j) - x(t.j) * y(t.i));
    return out;
  }

  /// ||mu||^2 summed over ordered pairs (i, j), i.e. twice the i < j sum.
  Scalar squared_norm() const {
    Scalar s = 0;
    for (const Term& t : terms_) s += t.c * t.c;
    return Scalar(2) * s;
  }

  /// Largest |c| over all structure constants.
  Scalar max_coefficient() const {
    Scalar m = 0;
    for (const Term& t : terms_) m = std::max(m, Scalar(std::abs(t.c)));
    return m;
  }

  friend BasicBracket operator*(Scalar s, const BasicBracket& b) {
    BasicBracket out(b.dim_);
    if (s == Scalar(0)) return out;
    out.terms_ = b.terms_;
    for (Term& t : out.terms_) t.c *= s;
    return out;
  }

  friend BasicBracket operator+(const BasicBracket& a, const BasicBracket& b) {
    if (a.dim_ != b.dim_) throw InvalidTerm("bracket dimensions differ");
    return from_structure_matrix(a.structure_matrix() + b.structure_matrix());
  }

  friend BasicBracket operator-(const BasicBracket& a, const BasicBracket& b) {
    return a + Scalar(-1) * b;
  }

 private:
  int dim_ = 0;
  std::vector<Term> terms_;
};

using Term = BasicTerm<double>;
using Bracket = BasicBracket<double>;

/// Max-norm distance between two brackets' structure constants.
template <typename Scalar>
Scalar distance(const BasicBracket<Scalar>& a, const BasicBracket<Scalar>& b) {
  return max_abs(a.structure_matrix() - b.structure_matrix());
}

/// Jacobi residual and lower central series of a bracket.
struct ValidationReport {
  double jacobi_residual = 0;
  /// Length of the lower central series; 0 for the abelian bracket and
  /// empty when the series stalls above zero.
  std::optional<int> nilpotency_step;
  /// dim n, dim mu(n,n), dim mu(n, mu(n,n)), ... down to the last nonzero
  /// term (empty for the abelian bracket).
  std::vector<int> lcs_dims;

  bool valid(double tol) const { return jacobi_residual <= tol && nilpotency_step.has_value(); }
};

/// Max over i < j < k of the max-norm of the Jacobi sum.
template <typename Scalar>
Scalar jacobi_residual(const BasicBracket<Scalar>& b) {
  const int n = b.dim();
  const auto ad = b.adjoints();
  Scalar worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // mu(mu(e_i,e_j),e_k) = -ad(e_k) mu(e_i,e_j)
        const VectorX<Scalar> s = -ad[k] * ad[i].col(j) - ad[i] * ad[j].col(k) - ad[j] * ad[k].col(i);
        worst = std::max(worst, max_abs(s));
      }
  return worst;
}

template <typename Scalar>
ValidationReport validate(const BasicBracket<Scalar>& b, const Tolerances& tol = {}) {
  ValidationReport report;
  report.jacobi_residual = static_cast<double>(jacobi_residual(b));
  const int n = b.dim();
  if (b.is_zero()) {
    report.nilpotency_step = 0;
    return report;
  }
  const auto ad = b.adjoints();
  const Scalar cutoff = Scalar(tol.rank) * std::sqrt(b.squared_norm());
  MatrixX<Scalar> current = MatrixX<Scalar>::Identity(n, n);
  report.lcs_dims.push_back(n);
  for (int step = 1; step <= n; ++step) {
    MatrixX<Scalar> gens(n, n * current.cols());
    for (int i = 0; i < n; ++i) gens.middleCols(i * current.cols(), current.cols()) = ad[i] * current;
    MatrixX<Scalar> next = range_basis(gens, cutoff);
    if (next.cols() == 0) {
      report.nilpotency_step = step;
      return report;
    }
    if (next.cols() >= current.cols()) return report;  // series stalled: not nilpotent
    report.lcs_dims.push_back(static_cast<int>(next.cols()));
    current = std::move(next);
  }
  return report;
}

/// -1/4 ||mu||^2 with the ordered-pair norm: -1/2 sum over i<j,k of c^2.
template <typename Scalar>
Scalar scalar_curvature(const BasicBracket<Scalar>& b) {
  return -b.squared_norm() / Scalar(4);
}

/// Kronecker product of two square matrices, index (a*n+b, i*n+j).
template <typename Scalar>
MatrixX<Scalar> kron(const MatrixX<Scalar>& x, const MatrixX<Scalar>& y) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = y.rows();
  MatrixX<Scalar> out(n * m, x.cols() * y.cols());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index i = 0; i < x.cols(); ++i) out.block(a * m, i * y.cols(), m, y.cols()) = x(a, i) * y;
  return out;
}

/// g.mu(X, Y) = g mu(g^-1 X, g^-1 Y). Throws SingularOperator when the
/// condition number of g exceeds 1 / tol.rank.
template <typename Derived, typename Scalar>
BasicBracket<Scalar> act(const Eigen::MatrixBase<Derived>& g, const BasicBracket<Scalar>& b,
                         const Tolerances& tol = {}) {
  const int n = b.dim();
  if (g.rows() != n || g.cols() != n) throw SingularOperator("operator shape does not match bracket");
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(g);
  const auto& sv = svd.singularValues();
  if (!(sv(n - 1) > Scalar(tol.rank) * sv(0))) throw SingularOperator("operator is not invertible");
  const MatrixX<Scalar> h = MatrixX<Scalar>(g).inverse();
  return BasicBracket<Scalar>::from_structure_matrix(g * b.structure_matrix() * kron(h, h));
}

/// pi(A)mu(X, Y) = A mu(X, Y) - mu(A X, Y) - mu(X, A Y), the derivative of
/// act(exp(tA), mu) at t = 0.
template <typename Derived, typename Scalar>
BasicBracket<Scalar> infinitesimal_act(const Eigen::MatrixBase<Derived>& a, const BasicBracket<Scalar>& b) {
  const int n = b.dim();
  const MatrixX<Scalar> id = MatrixX<Scalar>::Identity(n, n);
  const MatrixX<Scalar> m = b.structure_matrix();
  const MatrixX<Scalar> am = a;
  return BasicBracket<Scalar>::from_structure_matrix(a * m - m * (kron(am, id) + kron(id, am)));
}

/// Matrix of the linear map vec(A) -> (pi(A)mu restricted to i < j
/// columns), of size n * n(n-1)/2 by n^2.
template <typename Scalar>
MatrixX<Scalar> action_matrix(const BasicBracket<Scalar>& b) {
  const int n = b.dim();
  const int pairs = n * (n - 1) / 2;
  const MatrixX<Scalar> m = b.structure_matrix();
  const auto ad = b.adjoints();
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(n * pairs, n * n);
  // Column for E_{rs} (r row, s col), vec index r + s*n.
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      const int col = r + s * n;
      int p = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++p) {
          // E mu(e_i,e_j) = mu_s(e_i,e_j) e_r
          out(p * n + r, col) += m(s, i * n + j);
          // -mu(E e_i, e_j) = -delta_{s i} mu(e_r, e_j)
          if (s == i) out.block(p * n, col, n, 1) -= ad[r].col(j);
          // -mu(e_i, E e_j) = -delta_{s j} mu(e_i, e_r)
          if (s == j) out.block(p * n, col, n, 1) -= ad[i].col(r);
        }
    }
  return out;
}

/// Orthonormal (trace inner product) basis of Der(mu), the kernel of
/// A -> pi(A)mu.
template <typename Scalar>
std::vector<MatrixX<Scalar>> derivation_space(const BasicBracket<Scalar>& b, const Tolerances& tol = {}) {
  const int n = b.dim();
  const MatrixX<Scalar> kernel = kernel_basis(action_matrix(b), Scalar(tol.rank));
  std::vector<MatrixX<Scalar>> basis;
  basis.reserve(kernel.cols());
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) basis.push_back(unvec(kernel.col(c), n));
  return basis;
}

/// j(Z) on the complement v of the listed center indices: <j(Z)X, Y> =
/// <mu(X, Y), Z> for X, Y in v. `z_coords` are the coordinates of Z along
/// `center` (0-based basis indices). Throws NotTwoStepSplit when mu(v, v)
/// leaves z or mu(z, .) != 0.
template <typename Scalar, typename Derived>
MatrixX<Scalar> j_map(const BasicBracket<Scalar>& b, std::span<const int> center,
                      const Eigen::MatrixBase<Derived>& z_coords, const Tolerances& tol = {}) {
  const int n = b.dim();
  if (z_coords.size() != static_cast<Eigen::Index>(center.size()))
    throw NotTwoStepSplit("Z must have one coordinate per center index");
  std::vector<int> slot(n, -1);  // position inside z, or -1 when in v
  for (std::size_t p = 0; p < center.size(); ++p) {
    if (center[p] < 0 || center[p] >= n || slot[center[p]] != -1)
      throw NotTwoStepSplit("invalid center index list");
    slot[center[p]] = static_cast<int>(p);
  }
  std::vector<int> complement;
  for (int i = 0; i < n; ++i)
    if (slot[i] == -1) complement.push_back(i);

  const Scalar cutoff = Scalar(tol.rank) * std::max(Scalar(1), b.max_coefficient());
  for (const auto& t : b.terms()) {
    if (std::abs(t.c) <= cutoff) continue;
    if (slot[t.i] != -1 || slot[t.j] != -1) throw NotTwoStepSplit("mu(z, .) is not zero");
    if (slot[t.k] == -1) throw NotTwoStepSplit("mu(v, v) is not contained in z");
  }

  std::vector<int> position(n, -1);
  for (std::size_t p = 0; p < complement.size(); ++p) position[complement[p]] = static_cast<int>(p);
  const Eigen::Index m = static_cast<Eigen::Index>(complement.size());
  MatrixX<Scalar> j = MatrixX<Scalar>::Zero(m, m);
  for (const auto& t : b.terms()) {
    if (slot[t.k] == -1 || position[t.i] < 0 || position[t.j] < 0) continue;
    const Scalar w = t.c * z_coords(slot[t.k]);
    // <j X_a, X_b> = <mu(X_a, X_b), Z>
    j(position[t.j], position[t.i]) += w;
    j(position[t.i], position[t.j]) -= w;
  }
  return j;
}

}  // namespace nilsoliton

#endif  // NILSOLITON_BRACKET_HPP
