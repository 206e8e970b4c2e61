#include "support.hpp"

#include <doctest.h>

#include <map>

using namespace testing;

namespace {

struct Sample {
  std::string name;
  std::vector<double> params;
};

std::vector<Sample> samples() {
  const double r = 0.5, s = 0.7, t = std::sqrt(2 - r * r - s * s);
  const double q = std::sqrt(1.0 / 8.0);
  return {{"heisenberg3", {}},
          {"filiform4", {}},
          {"heisenberg_symplectic", {2}},
          {"heisenberg_symplectic", {3}},
          {"heisenberg_symplectic", {5}},
          {"filiform4_symplectic", {}},
          {"symplectic_abc", {1, 1, 0}},
          {"symplectic_abc_curve", {0.2}},
          {"complex_family", {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0}},
          {"complex_abelian_curve", {0.3}},
          {"complex_iwasawa_curve", {-0.4}},
          {"complex_htype_curve", {0.6}},
          {"hypercomplex_family", {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
          {"hypercomplex_rst", {r, s, t}},
          {"hypercomplex_5g3", {q * 0.8, q * 0.5, 0, 0, 0, q * std::sqrt(0.11)}},
          {"hypercomplex_curve", {0.3}}};
}

// Ric restricted to n1 from the pairwise inner products of A..F.
template <int M>
Operator ricci_first_block(const std::array<Eigen::Matrix<double, M, 1>, 6>& v) {
  const auto& [a, b, c, d, e, f] = v;
  Operator r(4, 4);
  r << a.squaredNorm() + b.squaredNorm() + c.squaredNorm(), b.dot(d) + c.dot(e), -a.dot(d) + c.dot(f),
      -a.dot(e) - b.dot(f),  //
      b.dot(d) + c.dot(e), a.squaredNorm() + d.squaredNorm() + e.squaredNorm(), a.dot(b) + e.dot(f),
      a.dot(c) - d.dot(f),  //
      -a.dot(d) + c.dot(f), a.dot(b) + e.dot(f), b.squaredNorm() + d.squaredNorm() + f.squaredNorm(),
      b.dot(c) + d.dot(e),  //
      -a.dot(e) - b.dot(f), a.dot(c) - d.dot(f), b.dot(c) + d.dot(e),
      c.squaredNorm() + e.squaredNorm() + f.squaredNorm();
  return -0.5 * r;
}

// The six coefficient vectors mu(X_i, X_j), i < j <= 4, read back from a bracket.
template <int M>
std::array<Eigen::Matrix<double, M, 1>, 6> pair_vectors(const Bracket& mu) {
  std::array<Eigen::Matrix<double, M, 1>, 6> out;
  int slot = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out[slot++] = mu(Vector::Unit(4 + M, i), Vector::Unit(4 + M, j)).tail(M);
  return out;
}

// Ric restricted to n2: (1/2) <v_i, v_j>, v_i the i-th components of A..F.
template <int M>
Operator ricci_second_block(const std::array<Eigen::Matrix<double, M, 1>, 6>& v) {
  Eigen::Matrix<double, 6, M> rows;
  for (int k = 0; k < 6; ++k) rows.row(k) = v[k].transpose();
  return 0.5 * rows.transpose() * rows;
}

}  // namespace

TEST_CASE("every catalog entry is a valid structured nilpotent algebra") {
  CHECK(catalog::constructors().size() == 14);
  std::map<std::string, int> seen;
  for (const Sample& sample : samples()) {
    CAPTURE(sample.name);
    const catalog::Entry e = catalog::emit(sample.name, sample.params);
    ++seen[e.name];
    const ValidationReport report = validate(e.bracket);
    CHECK(report.valid(1e-12));
    CHECK(report.jacobi_residual < 1e-12);
    CHECK(report.nilpotency_step.has_value());
    CHECK(check_structure(e.structure).ok(1e-12));
    // mu_n(X1, X2) = X3 pairs X3 with X_{2n-2} under omega, so only n = 2 is closed.
    const bool open_heisenberg = e.name == "heisenberg_symplectic" && sample.params[0] > 2;
    CHECK((integrability(e.structure, e.bracket).residual < 1e-12) == !open_heisenberg);
    // The Heisenberg brackets keep the unit coefficient of the examples.
    const bool unit_heisenberg = e.name == "heisenberg3" || e.name == "heisenberg_symplectic";
    CHECK(scalar_curvature(e.bracket) == doctest::Approx(unit_heisenberg ? -0.5 : -1.0).epsilon(1e-12));
  }
  for (const catalog::Constructor& c : catalog::constructors()) CHECK(seen.count(c.name) == 1);
}

TEST_CASE("catalog entries from the examples are minimal") {
  for (const Sample& sample : samples()) {
    CAPTURE(sample.name);
    const catalog::Entry e = catalog::emit(sample.name, sample.params);
    if (e.name == "symplectic_abc" || e.name == "complex_family" || e.name == "hypercomplex_family") continue;
    CHECK(certify(e.bracket, e.structure).residual < 1e-10);
  }
}

TEST_CASE("Ricci blocks of the complex curves") {
  for (double s : {0.0, 0.2, 0.5, 1 / std::sqrt(2.0)}) {
    const double t = std::sqrt(1 - s * s);
    const Operator abelian = ricci_nilpotent(catalog::complex_abelian_curve(s).bracket);
    CHECK(max_diff(abelian.bottomRightCorner(2, 2), diag({s * s, t * t})) < 1e-14);
    const Operator htype = ricci_nilpotent(catalog::complex_htype_curve(s).bracket);
    CHECK(max_diff(htype.bottomRightCorner(2, 2), diag({s * s, t * t})) < 1e-14);
  }
  for (double s : {-0.7, -0.3, 0.0, 0.4, 0.7}) {
    const double t2 = 0.5 - s * s;
    const Operator iwasawa = ricci_nilpotent(catalog::complex_iwasawa_curve(s).bracket);
    CHECK(max_diff(iwasawa.bottomRightCorner(2, 2), diag({s * s + 0.5, t2})) < 1e-14);
  }
}

TEST_CASE("Ricci blocks of the W-spaces against the inner product formulas") {
  std::mt19937_64 rng(200);
  for (int trial = 0; trial < 200; ++trial) {
    catalog::ComplexParams p;
    for (Eigen::Vector2d* x : {&p.a, &p.b, &p.c, &p.d, &p.e, &p.f}) *x = gaussian(rng, 2, 1);
    const Bracket mu = catalog::complex_family(p, catalog::Normalization::any).bracket;
    const Operator ric = ricci_nilpotent(mu);
    const auto v = pair_vectors<2>(mu);
    CHECK(max_diff(v[0], p.a) == 0.0);
    CHECK(max_diff(v[5], p.f) == 0.0);
    CHECK(max_diff(ric.topLeftCorner(4, 4), ricci_first_block<2>(v)) < 1e-12);
    CHECK(max_diff(ric.bottomRightCorner(2, 2), ricci_second_block<2>(v)) < 1e-12);
    CHECK(ric.topRightCorner(4, 2).isZero());

    const Bracket h = catalog::hypercomplex_family(gaussian(rng, 4, 1), gaussian(rng, 4, 1), gaussian(rng, 4, 1),
                                                   gaussian(rng, 4, 1), catalog::Normalization::any)
                          .bracket;
    const Operator rh = ricci_nilpotent(h);
    const auto w = pair_vectors<4>(h);
    CHECK(max_diff(rh.topLeftCorner(4, 4), ricci_first_block<4>(w)) < 1e-12);
    CHECK(max_diff(rh.bottomRightCorner(4, 4), ricci_second_block<4>(w)) < 1e-12);
  }
}

TEST_CASE("hypercomplex curves and families") {
  for (double t : {0.0, 0.1, 0.3, 1 / std::sqrt(3.0)}) {
    const Operator ric = ricci_nilpotent(catalog::hypercomplex_curve(t).bracket);
    CHECK(max_diff(ric.bottomRightCorner(4, 4), diag({1 - 3 * t * t, t * t, t * t, t * t})) < 1e-14);
  }
  const catalog::Entry c = catalog::hypercomplex_curve(0.2);
  CHECK_FALSE(is_abelian(c.structure.operators[0], c.bracket).holds);

  const double r = 0.3, s = 0.8, t = std::sqrt(2 - r * r - s * s);
  const catalog::Entry rst = catalog::hypercomplex_rst(r, s, t);
  CHECK(max_diff(ricci_nilpotent(rst.bracket).bottomRightCorner(4, 4), 0.5 * diag({0, r * r, s * s, t * t})) < 1e-14);
  for (const Operator& j : rst.structure.operators) CHECK(is_abelian(j, rst.bracket).holds);

  // Any W-space element is minimal.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const catalog::Entry e = catalog::hypercomplex_family(gaussian(rng, 4, 1), gaussian(rng, 4, 1),
                                                          gaussian(rng, 4, 1), gaussian(rng, 4, 1),
                                                          catalog::Normalization::any);
    CHECK(certify(e.bracket, e.structure).residual < 1e-9);
  }
}

TEST_CASE("symplectic curve coefficients") {
  for (double t : {0.0, 0.25, 0.5, 1 / std::sqrt(3.0)}) {
    const catalog::Entry e = catalog::symplectic_abc_curve(t);
    double a = 0, b = 0, c = 0;
    for (const Term& term : e.bracket.terms()) (term.k == 3 ? a : term.k == 4 ? b : c) = term.c;
    CHECK(a * a + a * c + c * c == doctest::Approx(1.0));
    CHECK(b == doctest::Approx(a + c));
    CHECK(c == doctest::Approx(t));
  }
}

TEST_CASE("bi-invariant complex structures are minimal") {
  std::mt19937_64 rng(12);
  const Eigen::Matrix2d j2 = (Eigen::Matrix2d() << 0, -1, 1, 0).finished();
  for (int trial = 0; trial < 20; ++trial) {
    catalog::ComplexParams p;
    p.b = gaussian(rng, 2, 1);
    p.c = j2 * p.b;
    p.d = j2 * p.b;
    p.e = -p.b;
    const catalog::Entry e = catalog::complex_family(p, catalog::Normalization::any);
    CHECK(is_bi_invariant(e.structure.j(), e.bracket).holds);
    CHECK(certify(e.bracket, e.structure).residual < 1e-10);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(catalog::emit("no_such_entry", {}), DomainError);
  CHECK_THROWS_AS(catalog::emit("heisenberg3", std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(catalog::heisenberg_symplectic(1), DomainError);
  CHECK_THROWS_AS(catalog::symplectic_abc(1, 1, 1), DomainError);
  CHECK_THROWS_AS(catalog::symplectic_abc_curve(0.7), DomainError);
  CHECK_THROWS_AS(catalog::complex_abelian_curve(0.9), DomainError);
  CHECK_THROWS_AS(catalog::complex_iwasawa_curve(0.8), DomainError);
  CHECK_THROWS_AS(catalog::hypercomplex_rst(0.8, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(catalog::hypercomplex_rst(0.5, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(catalog::hypercomplex_curve(0.6), DomainError);
  const double q = std::sqrt(1.0 / 8.0);
  CHECK_THROWS_AS(catalog::hypercomplex_5g3(Eigen::Vector3d(0, 0, q * 0.6), Eigen::Vector3d(q * 0.8, 0, 0)),
                  DomainError);
}
