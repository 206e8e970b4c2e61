#ifndef NILSOLITON_CATALOG_HPP
#define NILSOLITON_CATALOG_HPP

#include "nilsoliton/bracket.hpp"
#include "nilsoliton/structures.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nilsoliton::catalog {

/// A bracket with the structure it is studied with, in the fixed basis.
struct Entry {
  std::string name;
  Bracket bracket;
  StructureTensor structure;
  /// Free-form isomorphism-type label; informational and unverified.
  std::string label;
};

/// Whether constructors insist on scal = -1 (||mu||^2 = 4).
enum class Normalization { required, any };

// Fixed structure operators.

/// Antidiagonal J on R^{2n}: J e_{2n+1-i} = -e_i for i <= n and J e_i = e_{2n+1-i}.
Operator symplectic_j(int n);
/// Block diagonal J with [[0,-1],[1,0]] blocks on R^{2n}.
Operator complex_j(int n);
/// The quaternionic triple on R^4 (J1 J2 = J3).
std::array<Operator, 3> quaternion_triple();
/// J1, J2, J3 acting diagonally on R^4 + R^4.
StructureTensor hypercomplex_structure();

// gamma = none

Entry heisenberg3();
Entry filiform4();

// Symplectic

/// mu_n(X1, X2) = X3 on R^{2n}, n >= 2.
Entry heisenberg_symplectic(int n);
/// lambda(X1, X2) = X3, lambda(X1, X3) = X4.
Entry filiform4_symplectic();
/// mu(X1,X2) = a X4, mu(X1,X3) = b X5, mu(X2,X3) = c X6. Closed iff a - b + c = 0.
Entry symplectic_abc(double a, double b, double c, Normalization norm = Normalization::required);
/// mu(s, s + t, t) with s^2 + st + t^2 = 1, 0 <= t <= 1/sqrt(3).
Entry symplectic_abc_curve(double t);

// Complex, on R^4 + R^2

struct ComplexParams {
  Eigen::Vector2d a = Eigen::Vector2d::Zero(), b = Eigen::Vector2d::Zero(), c = Eigen::Vector2d::Zero(),
                  d = Eigen::Vector2d::Zero(), e = Eigen::Vector2d::Zero(), f = Eigen::Vector2d::Zero();
};

/// mu(X1,X2) = A, mu(X1,X3) = B, mu(X1,X4) = C, mu(X2,X3) = D, mu(X2,X4) = E,
/// mu(X3,X4) = F, each an element of span(Z1, Z2).
Entry complex_family(const ComplexParams& p, Normalization norm = Normalization::required);
/// A = (s, t), F = (-s, t), rest 0, t = sqrt(1 - s^2), 0 <= s <= 1/sqrt(2).
Entry complex_abelian_curve(double s);
/// A = (s, t), F = (-s, t), B = C = -D = E = (1/2, 0), t = sqrt(1/2 - s^2), |s| <= 1/sqrt(2).
Entry complex_iwasawa_curve(double s);
/// A = (s, 0) = -F, B = (0, t) = E, t = sqrt(1 - s^2), 0 <= s <= 1/sqrt(2).
Entry complex_htype_curve(double s);

// Hypercomplex, on R^4 + R^4

/// D = -C + T, E = B + J1 T, F = -A + J2 T.
Entry hypercomplex_family(const Eigen::Vector4d& a, const Eigen::Vector4d& b, const Eigen::Vector4d& c,
                          const Eigen::Vector4d& t, Normalization norm = Normalization::required);
/// T = 0, A = (0, r, 0, 0), B = (0, 0, s, 0), C = (0, 0, 0, t) with
/// 0 <= r <= s <= t and r^2 + s^2 + t^2 = 2, rescaled by 1/sqrt(2) so that
/// scal = -1 and Ric on the center is diag(0, r^2, s^2, t^2) / 2.
Entry hypercomplex_rst(double r, double s, double t);
/// T = 0 with v1 = (1,0,0,0,0,-1)/sqrt(2), v2 = (0,1,0,0,1,0) sqrt(3/8) and
/// (a_i, b_i, c_i) = p3, p4 for i = 3, 4; needs 2(|p3|^2 + |p4|^2) = 1/4 and |p3| > |p4|.
Entry hypercomplex_5g3(const Eigen::Vector3d& p3, const Eigen::Vector3d& p4);
/// The non-abelian curve mu_t, 0 <= t <= 1/sqrt(3), with T = (0, 0, 0, 2t).
Entry hypercomplex_curve(double t);

/// Name, parameter list and domain of a catalog constructor, with a
/// type-erased builder used by the command line.
struct Constructor {
  std::string name;
  std::string parameters;
  std::string domain;
  std::size_t arity = 0;
  std::function<Entry(std::span<const double>)> build;
};

const std::vector<Constructor>& constructors();

/// Throws DomainError for an unknown name or wrong parameter count.
Entry emit(const std::string& name, std::span<const double> params);

}  // namespace nilsoliton::catalog

#endif  // NILSOLITON_CATALOG_HPP
