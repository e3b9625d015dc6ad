#pragma once

#include "dich/rates.hpp"

namespace dich {

/// Input/output Hamiltonians plus a shared inverse temperature; Gibbs states
/// are derived on construction.
struct ThermalSetting {
  CMatrix hamiltonian_in;
  CMatrix hamiltonian_out;
  double beta;
  DensityOperator gibbs_in;
  DensityOperator gibbs_out;

  ThermalSetting(CMatrix h_in, CMatrix h_out, double beta_);
};

/// Battery energetics w = w1 n + w2 sqrt(n).
struct BatterySpec {
  double w1 = 0;
  double w2 = 0;
};

/// Optimal eps-deterministic extracted work per copy:
/// (1/beta)(D(rho||gamma) + sqrt(V(rho||gamma)/n) Phi^{-1}(eps)).
double work_extraction_bound(const DensityOperator& rho, const ThermalSetting& s, double eps,
                             int n);

/// Erasure cost per copy for a trivial Hamiltonian:
/// (1/beta)(S(rho) - sqrt(V(rho)/n) Phi^{-1}(eps)).
double erasure_cost(const DensityOperator& rho, double beta, double eps, int n);

/// Thermodynamically free encoding: log M / n = D + sqrt(V/n) Phi^{-1}(eps).
double encoding_capacity(const DensityOperator& rho, const ThermalSetting& s, double eps, int n);

/// Work-assisted small-deviation rate. When the target equals its Gibbs
/// state the rate is unconstrained and the returned RateResult instead
/// carries the work-feasibility bound (per copy) in `value`.
RateResult work_assisted_rate(const RateQuery& q, const ThermalSetting& s, const BatterySpec& b,
                              const RunConfig& cfg = default_config());

/// Phenomenological transformation error S_nu(mu) with mu1 = n D1,
/// mu2 = R n D2, nu1 = n V1, nu2 = R n V2.
double phenomenological_error(const RateQuery& q, int n, double rate);

/// Qubit family interpolating incoherent (x=0) and pure coherent (x=1)
/// states: diagonal (p, 1-p), off-diagonal x sqrt(p(1-p)).
DensityOperator coherent_qubit_family(double p, double x);

struct ResonancePoint {
  double x;
  double xi;
  double eps_threshold;
};
struct ResonanceScan {
  std::vector<ResonancePoint> table;
  std::vector<double> roots;  ///< x with xi(x) = 1, located by bisection
};
/// Threshold error eps = S_{1/xi}(0) for the transformation
/// (rho1(x), gamma) -> (diag(q, 1-q), gamma) along the coherence parameter x.
ResonanceScan coherent_resonance_scan(double p, double q, const DensityOperator& gamma,
                                      const std::vector<double>& x_grid,
                                      const RunConfig& cfg = default_config());

struct ResonanceVerdict {
  bool weak;
  bool strong;
  double xi;
  double argmin_alpha;
};
/// Weak: xi = 1. Strong: argmin_alpha of the minimal-Renyi ratio sits at 1.
ResonanceVerdict strong_resonance_check(const DichotomyProfile& input,
                                        const DichotomyProfile& target,
                                        const RunConfig& cfg = default_config());

enum class MixDirection { Forward, Reverse };
struct MixturePoint {
  double lambda_mix;
  double first_order;           ///< C
  double zero_error;            ///< Z (upper bound; exact here, all commuting)
  double xi;
  bool weak;
  bool strong;
  std::vector<double> rate_at_mu;  ///< large-deviation low-error rate per requested exponent
};
/// Scan over the mixing fraction of two input (forward) or output
/// (reverse) states against a common reference (the fig6 preset states).
std::vector<MixturePoint> mixture_resonance_scan(
    const std::vector<double>& rho1, const std::vector<double>& rho1p,
    const std::vector<double>& rho2, const std::vector<double>& sigma, MixDirection direction,
    const std::vector<double>& lambda_grid, const std::vector<double>& mu_exponents = {},
    const RunConfig& cfg = default_config());

}  // namespace dich
