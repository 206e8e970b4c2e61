#include "nilsoliton/flow.hpp"

#include <cmath>
#include <random>

namespace nilsoliton {

namespace {

using Wide = long double;
using WideMatrix = MatrixX<Wide>;
using WideBracket = BasicBracket<Wide>;
using WideStructure = BasicStructureTensor<Wide>;

WideStructure widen(const StructureTensor& gamma) {
  WideStructure out;
  out.kind = gamma.kind;
  for (const auto& j : gamma.operators) out.operators.push_back(j.cast<Wide>());
  return out;
}

// Ric^gamma / ||mu||^2, so that F = tr(G^2).
template <typename Scalar>
MatrixX<Scalar> scaled_ricci(const BasicBracket<Scalar>& b, const BasicStructureTensor<Scalar>& gamma) {
  return invariant_ricci(ricci_nilpotent(b), gamma) / b.squared_norm();
}

template <typename Scalar>
Scalar functional(const BasicBracket<Scalar>& b, const BasicStructureTensor<Scalar>& gamma) {
  const MatrixX<Scalar> g = scaled_ricci(b, gamma);
  return trace_inner(g, g);
}

// Coordinates of `target` in p_gamma, with each singular direction of
// B -> pi(B)mu (mod R mu) damped by sigma^2 / (sigma^2 + delta^2), where
// delta = damping * sigma_max. Directions that barely move [mu], such as
// near-stabilizers, drop out.
WideMatrix filtered_direction(const WideBracket& mu, const std::vector<WideMatrix>& p_basis, const WideMatrix& target,
                              Wide damping) {
  const int n = mu.dim();
  const Eigen::Index count = static_cast<Eigen::Index>(p_basis.size());
  if (count == 0) return WideMatrix::Zero(n, n);
  const WideMatrix m = mu.structure_matrix();
  const VectorX<Wide> unit = vec(m) / vec(m).norm();
  WideMatrix images(m.size(), count);
  VectorX<Wide> coords(count);
  for (Eigen::Index l = 0; l < count; ++l) {
    VectorX<Wide> v = vec(infinitesimal_act(p_basis[l], mu).structure_matrix());
    v -= unit.dot(v) * unit;
    images.col(l) = v;
    coords(l) = trace_inner(target, p_basis[l]);
  }
  const Eigen::JacobiSVD<WideMatrix> svd(images, Eigen::ComputeFullV);
  const VectorX<Wide>& sigma = svd.singularValues();
  const Wide delta = damping * sigma(0);
  VectorX<Wide> weights = VectorX<Wide>::Zero(count);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const Wide s2 = sigma(i) * sigma(i);
    if (s2 > 0) weights(i) = s2 / (s2 + delta * delta);
  }
  const WideMatrix& v = svd.matrixV();
  const VectorX<Wide> filtered = v * (weights.asDiagonal() * (v.transpose() * coords));
  WideMatrix out = WideMatrix::Zero(n, n);
  for (Eigen::Index l = 0; l < count; ++l) out += filtered(l) * p_basis[l];
  return out;
}

}  // namespace

std::string_view to_string(FlowStop s) {
  switch (s) {
    case FlowStop::converged: return "converged";
    case FlowStop::stalled: return "stalled";
    case FlowStop::max_iterations: return "max_iterations";
  }
  return "max_iterations";
}

double flow_functional(const Bracket& b, const StructureTensor& gamma) { return functional(b, gamma); }

Operator random_structure_algebra_element(const StructureTensor& gamma, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Operator x(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = normal(rng);
  switch (gamma.kind) {
    case StructureKind::none: return x;
    case StructureKind::symplectic: {
      // J S with S symmetric satisfies A^T J + J A = 0.
      const Operator s = (x + x.transpose()) / 2.0;
      return gamma.j() * s;
    }
    case StructureKind::complex: return (x - gamma.j() * x * gamma.j()) / 2.0;
    case StructureKind::hypercomplex: {
      Operator acc = x;
      for (const auto& j : gamma.operators) acc -= j * x * j;
      return acc / 4.0;
    }
  }
  return x;
}

Operator random_structure_perturbation(const StructureTensor& gamma, int n, double scale, std::uint64_t seed) {
  return matrix_exp(Operator(scale * random_structure_algebra_element(gamma, n, seed)));
}

FlowTrace flow_minimize(const Bracket& b0, const StructureTensor& gamma, const FlowOptions& options) {
  const Tolerances& tol = options.tolerances;
  const int n = b0.dim();
  if (b0.is_zero()) throw ZeroBracket("the flow needs a nonzero bracket");
  const Bracket start_unperturbed = normalize_scal(b0);
  const Predicate ic = integrability(gamma, start_unperturbed, tol);
  if (!ic.holds) throw NotIntegrable("structure is not integrable for the initial bracket");

  Bracket start = start_unperturbed;
  if (options.perturb != 0.0)
    start = normalize_scal(act(random_structure_perturbation(gamma, n, options.perturb, options.seed), start, tol));

  const WideStructure wide_gamma = widen(gamma);
  const std::vector<WideMatrix> p_basis = invariant_symmetric_basis(n, wide_gamma);

  FlowTrace trace;
  trace.initial_bracket = start;
  WideBracket mu = start.cast<Wide>();
  auto bracket_at = [&](const WideMatrix& g) { return normalize_scal(act(g, mu, tol)); };
  Wide value = functional(mu, wide_gamma);
  Wide step = options.step0;

  for (int k = 0;; ++k) {
    const WideMatrix ric = invariant_ricci(ricci_nilpotent(mu), wide_gamma);
    const Bracket narrow = mu.cast<double>();
    const double residual = certify(narrow, gamma, tol).residual;
    const WideMatrix ric0 = ric - (ric.trace() / Wide(n)) * WideMatrix::Identity(n, n);
    const Wide gradient = std::sqrt(infinitesimal_act(ric0, mu).squared_norm());

    FlowIterate it;
    it.step = k;
    it.functional = static_cast<double>(value);
    it.gradient_norm = static_cast<double>(gradient);
    it.scal = static_cast<double>(scalar_curvature(mu));
    it.residual = residual;
    it.orbit_residual = std::max(jacobi_residual(narrow), integrability(gamma, narrow, tol).residual);
    trace.iterates.push_back(it);
    if (it.gradient_norm > 0)
      trace.residual_gradient_ratio = std::max(trace.residual_gradient_ratio, it.residual / it.gradient_norm);

    if (it.residual < options.tol) {
      trace.stop = FlowStop::converged;
      break;
    }
    if (k >= options.max_iter) {
      trace.stop = FlowStop::max_iterations;
      break;
    }

    const WideMatrix direction = filtered_direction(mu, p_basis, ric0, Wide(options.damping));

    // dF/dh = 2 tr(G G'); differencing G keeps the slope accurate where F itself is flat.
    auto scaled_at = [&](Wide h) {
      return scaled_ricci(bracket_at(matrix_exp(WideMatrix(-h * direction))), wide_gamma);
    };
    const Wide probe = Wide(1e-4) / std::max(direction.norm(), Wide(1e-30));
    const WideMatrix dg = (scaled_at(probe) - scaled_at(-probe)) / (2 * probe);
    const Wide slope = 2 * trace_inner(scaled_ricci(mu, wide_gamma), dg);
    if (!(slope < 0)) {
      trace.stop = FlowStop::stalled;
      break;
    }

    step = (k == 0) ? Wide(options.step0) : std::min(Wide(2) * step, Wide(1e3));
    bool accepted = false;
    WideBracket next_mu;
    Wide next_value = 0;
    while (step > Wide(1e-30)) {
      next_mu = bracket_at(matrix_exp(WideMatrix(-step * direction)));
      next_value = functional(next_mu, wide_gamma);
      if (next_value <= value + Wide(options.slope_fraction) * step * slope && next_value <= value) {
        accepted = true;
        break;
      }
      step *= Wide(options.shrink);
    }
    if (!accepted) {
      trace.stop = FlowStop::stalled;
      break;
    }
    // Each step acts on the current iterate, so no group element accumulates.
    mu = next_mu;
    value = next_value;
  }

  trace.converged = trace.stop == FlowStop::converged;
  trace.final_bracket = mu.cast<double>();
  trace.final_certificate = certify(trace.final_bracket, gamma, tol);
  return trace;
}

}  // namespace nilsoliton
