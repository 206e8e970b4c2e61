#ifndef NILSOLITON_FLOW_HPP
#define NILSOLITON_FLOW_HPP

#include "nilsoliton/minimality.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nilsoliton {

struct FlowOptions {
  /// Initial Armijo trial step.
  double step0 = 0.1;
  /// Stop once the certificate residual of an iterate drops below this.
  double tol = 1e-9;
  int max_iter = 10000;
  /// Seed and size of the random G_gamma perturbation applied to the start.
  std::uint64_t seed = 0;
  double perturb = 0.0;
  double shrink = 0.5;
  /// Relative singular value below which descent directions that hardly move
  /// [mu] are damped.
  double damping = 0.1;
  double slope_fraction = 1e-4;
  Tolerances tolerances;
};

struct FlowIterate {
  int step = 0;
  double functional = 0;
  /// ||pi(Ric0) mu|| with Ric0 the traceless part of Ric^gamma.
  double gradient_norm = 0;
  double scal = 0;
  double residual = 0;
  /// Largest of the Jacobi and integrability residuals.
  double orbit_residual = 0;
};

enum class FlowStop { converged, stalled, max_iterations };

std::string_view to_string(FlowStop s);

struct FlowTrace {
  std::vector<FlowIterate> iterates;
  Bracket initial_bracket;
  Bracket final_bracket;
  bool converged = false;
  FlowStop stop = FlowStop::max_iterations;
  MinimalityCertificate final_certificate;
  /// max residual / gradient_norm over the iterates with nonzero gradient.
  double residual_gradient_ratio = 0;
};

/// F([mu]) = tr(Ric^gamma(mu)^2) / ||mu||^4, invariant under scaling mu.
double flow_functional(const Bracket& b, const StructureTensor& gamma = {});

/// A random element of the Lie algebra g_gamma of the structure group: all of
/// gl(n), sp(J), gl(n,C) or gl(n,H), with entries of unit variance before the
/// projection.
Operator random_structure_algebra_element(const StructureTensor& gamma, int n, std::uint64_t seed);

/// exp(scale * X) for X = random_structure_algebra_element(gamma, n, seed);
/// an element of G_gamma.
Operator random_structure_perturbation(const StructureTensor& gamma, int n, double scale, std::uint64_t seed);

/// Descends F inside the G_gamma orbit of b0: mu_{k+1} = exp(-h_k A_k) . mu_k
/// rescaled to scal = -1. A_k is the traceless part of Ric^gamma with the
/// components that barely move [mu_k] damped (see FlowOptions::damping), and
/// h_k comes from Armijo backtracking. Internally runs in extended precision.
/// Throws NotIntegrable when gamma is not integrable for b0.
FlowTrace flow_minimize(const Bracket& b0, const StructureTensor& gamma = {}, const FlowOptions& options = {});

}  // namespace nilsoliton

#endif  // NILSOLITON_FLOW_HPP
