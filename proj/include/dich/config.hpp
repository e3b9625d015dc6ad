#pragma once

#include <cstdint>
#include <string>

namespace dich {

/// Global numeric configuration. All tolerances are strictly positive;
/// defaults are the ones the test suite is calibrated against.
struct Tolerances {
  double eigen_offdiag = 1e-12;   ///< Jacobi sweep stop: off-diagonal Frobenius norm, relative to matrix scale
  double cluster_rel = 1e-9;      ///< relative gap below which eigenvalues share a degenerate cluster
  double density_negative = 1e-10;///< eigenvalues in [-density_negative, 0) are clamped to 0
  double trace_one = 1e-8;        ///< allowed deviation of Tr(rho) from 1 before renormalisation
  double full_rank = 1e-12;       ///< lambda_min threshold for the full-rank requirement on sigma
  double commute = 1e-10;         ///< commutator norm below which a pair is treated as commuting
  double bracket = 1e-8;          ///< default target width for quantum_beta brackets
  double alpha_near_one = 1e-6;   ///< Renyi orders within this of 1 route to the relative entropy
  double branch_edge = 1e-9;      ///< lambda/mu within this of a branch boundary use the closed edge value
  double resonance_xi = 1e-6;     ///< |xi - 1| tolerance for the weak-resonance verdict
  double resonance_alpha = 1e-3;  ///< |argmin alpha - 1| tolerance for the strong-resonance verdict
};

struct RunConfig {
  Tolerances tol;
  int optimizer_grid = 33;        ///< seed points for 1D scalar optimizations
  int mu_grid = 129;              ///< mu samples for large-deviation low-error scans
  int alpha_grid = 65;            ///< tanh-spaced extended-alpha samples for zero-error scans
  int pinched_n_max = 6;          ///< default copies for finite-n pinched estimates
  double log_base = 0.0;          ///< 0 = natural log (nats); 2 = bits; only affects CLI output
  std::uint64_t seed = 1;
};

/// Library-wide defaults (immutable after startup; the CLI builds its own).
const RunConfig& default_config();

}  // namespace dich
