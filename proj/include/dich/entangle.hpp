#pragma once

#include "dich/rates.hpp"

namespace dich {

/// Schmidt spectrum of a bipartite pure state: probabilities sorted
/// descending.
struct SchmidtVector {
  std::vector<double> probs;
  explicit SchmidtVector(std::vector<double> p);
  int local_dim() const { return static_cast<int>(probs.size()); }
};

/// Optimal LOCC transformation rates psi1 -> psi2 in the requested regime;
/// the entropic substitutions D -> H(p), V -> V(p), D_t -> H_t(p) turn the
/// dichotomy formulas into pure Schmidt-spectrum expressions. Also the
/// documented entry point for pure-state coherence transformations (same
/// majorisation structure, probs read in the distinguished basis).
RateResult locc_rate(const SchmidtVector& p1, const SchmidtVector& p2, Regime regime, double eps,
                     double lambda, double a, const RunConfig& cfg = default_config());

/// The entanglement large-deviation r(mu): constant 1 below -D(f||p), then
/// the two saddle branches.
double locc_r_function(const SchmidtVector& p1, const SchmidtVector& p2, double mu,
                       const RunConfig& cfg = default_config());

/// Exact finite-copy LOCC feasibility psi1^{(x)n} -> psi2^{(x)m} with trace
/// distance error eps on the Schmidt vector, via the hypothesis-testing
/// condition with the dimension factors kept in log domain.
bool locc_feasible_finite(const SchmidtVector& p1, const SchmidtVector& p2, int n, int m,
                          double eps);

}  // namespace dich
