#ifndef NILSOLITON_TESTS_SUPPORT_HPP
#define NILSOLITON_TESTS_SUPPORT_HPP

#include "nilsoliton/catalog.hpp"
#include "nilsoliton/extension.hpp"
#include "nilsoliton/flow.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <random>

namespace testing {

using namespace nilsoliton;

inline Operator gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = normal(rng);
  return m;
}

/// Orthogonal matrix from the QR factor of a Gaussian matrix.
inline Operator random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Operator> qr(gaussian(rng, n, n));
  return qr.householderQ() * Operator::Identity(n, n);
}

/// I + small Gaussian, well conditioned.
inline Operator random_near_identity(std::mt19937_64& rng, int n, double scale = 0.3) {
  return Operator::Identity(n, n) + scale * gaussian(rng, n, n);
}

/// Random 2-step bracket with mu(v, v) in z, v = first n - m, z = last m.
inline Bracket random_two_step(std::mt19937_64& rng, int n, int m) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Term> terms;
  for (int i = 0; i < n - m; ++i)
    for (int j = i + 1; j < n - m; ++j)
      for (int k = n - m; k < n; ++k) terms.push_back({i, j, k, normal(rng)});
  return Bracket(n, std::move(terms));
}

/// Standard filiform algebra: mu(e1, e_i) = e_{i+1}, i = 2..n-1.
inline Bracket filiform(int n) {
  std::vector<Term> terms;
  for (int i = 1; i + 1 < n; ++i) terms.push_back({0, i, i + 1, 1.0});
  return Bracket(n, std::move(terms));
}

/// N-graded algebra with mu(e_i, e_j) = c_ij e_{i+j} (1-based), random c_ij,
/// i < j, i + j <= n; Jacobi forced by using c_ij = (j - i) (Witt-type).
inline Bracket witt_type(int n) {
  std::vector<Term> terms;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; i + j <= n; ++j) terms.push_back({i - 1, j - 1, i + j - 1, double(j - i)});
  return Bracket(n, std::move(terms));
}

/// A random valid nilpotent bracket of dimension n (3..8): a conjugate of a
/// 2-step, filiform or Witt-type algebra by a random well conditioned g.
inline Bracket random_nilpotent(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> pick(0, 2);
  Bracket base(n);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> center(1, std::max(1, n - 2));
      base = random_two_step(rng, n, center(rng));
      break;
    }
    case 1: base = filiform(n); break;
    default: base = witt_type(n); break;
  }
  return act(random_near_identity(rng, n), base);
}

/// Derivations by a direct evaluation of D mu(x, y) - mu(D x, y) - mu(x, D y)
/// on basis vectors, independent of action_matrix; returns dim Der.
inline int derivation_dimension_oracle(const Bracket& b) {
  const int n = b.dim();
  Operator system = Operator::Zero(n * n * n, n * n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      Operator d = Operator::Zero(n, n);
      d(r, s) = 1;
      int row = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j);
          const Vector defect = d * b(ei, ej) - b(d * ei, ej) - b(ei, d * ej);
          system.block(row, r * n + s, n, 1) = defect;
          row += n;
        }
    }
  Eigen::FullPivLU<Operator> lu(system);
  lu.setThreshold(1e-10);
  return n * n - static_cast<int>(lu.rank());
}

inline double max_diff(const Operator& a, const Operator& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Operator diag(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

}  // namespace testing

#endif  // NILSOLITON_TESTS_SUPPORT_HPP
