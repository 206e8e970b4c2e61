#include "support.hpp"

#include <doctest.h>

using namespace testing;

namespace {

// [H, X] = X on span(H, X), H = e1.
MetricSolvableAlgebra hyperbolic_plane() { return {Bracket(2, {{0, 1, 1, 1.0}})}; }

}  // namespace

TEST_CASE("closed-form Ricci operator") {
  CHECK(ricci_nilpotent(Bracket(5)).isZero());
  CHECK(max_diff(ricci_nilpotent(catalog::filiform4().bracket), diag({-1, -0.5, 0, 0.5})) < 1e-15);
  CHECK(max_diff(ricci_nilpotent(catalog::heisenberg3().bracket), diag({-0.5, -0.5, 0.5})) < 1e-15);

  for (const auto& [a, b, c] : std::vector<std::array<double, 3>>{{1, 1, 0}, {0.3, 1.1, 0.8}, {-0.5, 0.2, 1.3}}) {
    const Operator ric = ricci_nilpotent(catalog::symplectic_abc(a, b, c, catalog::Normalization::any).bracket);
    CHECK(max_diff(ric.bottomRightCorner(3, 3), 0.5 * diag({a * a, b * b, c * c})) < 1e-15);
  }
}

TEST_CASE("Koszul connection") {
  const MetricSolvableAlgebra abelian{Bracket(3)};
  for (const Operator& g : levi_civita(abelian)) CHECK(g.isZero());

  const auto h3 = levi_civita(MetricSolvableAlgebra{catalog::heisenberg3().bracket});
  CHECK(h3[0](2, 1) == doctest::Approx(0.5));

  // <nabla_X X, H> with X = e2, H = e1: the formula gives 1/2 (0 + 1 + 1).
  const auto plane = levi_civita(hyperbolic_plane());
  CHECK(plane[1](0, 1) == doctest::Approx(1.0));

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto nabla = levi_civita(MetricSolvableAlgebra{random_nilpotent(rng, 5)});
    for (const Operator& g : nabla) CHECK(max_diff(g, -g.transpose()) < 1e-14);
  }

  const Bracket broken(3, {{0, 1, 0, 1.0}, {0, 2, 1, 1.0}});
  CHECK_THROWS_AS(levi_civita(MetricSolvableAlgebra{broken}), InvalidBracket);
  CHECK_THROWS_AS(ricci_general(MetricSolvableAlgebra{broken}), InvalidBracket);
}

TEST_CASE("general Ricci operator") {
  CHECK(ricci_general(MetricSolvableAlgebra{Bracket(4)}).isZero());
  CHECK(max_diff(ricci_general(hyperbolic_plane()), -Operator::Identity(2, 2)) < 1e-15);
  CHECK(max_diff(ricci_general(MetricSolvableAlgebra{catalog::filiform4().bracket}), diag({-1, -0.5, 0, 0.5})) < 1e-15);
}

TEST_CASE("oracle equivalence on random nilpotent brackets") {
  std::mt19937_64 rng(77);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Bracket mu = random_nilpotent(rng, 3 + trial % 4);
    worst = std::max(worst, max_diff(ricci_general(MetricSolvableAlgebra{mu}), ricci_nilpotent(mu)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("Ricci equivariance, scaling and trace") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const Bracket mu = random_nilpotent(rng, n);
    const Operator ric = ricci_nilpotent(mu);
    const Operator k = random_orthogonal(rng, n);
    CHECK(max_diff(ricci_nilpotent(act(k, mu)), k * ric * k.transpose()) < 1e-11);
    const double s = 0.3 + trial % 5;
    CHECK(max_diff(ricci_nilpotent(s * mu), s * s * ric) < 1e-12 * s * s * std::max(1.0, ric.norm()));
    CHECK(ric.trace() == doctest::Approx(scalar_curvature(mu)).epsilon(1e-12));
    const CurvatureReport report = curvature(mu);
    CHECK(report.scal == doctest::Approx(report.ricci.trace()).epsilon(1e-12));
  }
}
