#pragma once

#include <vector>

#include "dich/density.hpp"

namespace dich {

// Quantum divergences, natural log. Extended Renyi orders use +-inf doubles.

/// D(rho||sigma) = Tr rho (log rho - log sigma); log rho taken on the support.
double relative_entropy(const Dichotomy& d);
/// V(rho||sigma) = Tr rho (log rho - log sigma)^2 - D^2.
double relative_entropy_variance(const Dichotomy& d);

/// Petz Renyi divergence; alpha within tol of 1 routes to relative_entropy.
double petz_renyi(const Dichotomy& d, double alpha);

/// Minimal (sandwiched for alpha >= 1/2, reverse-sandwiched for alpha <= 1/2)
/// Renyi divergence. alpha = -inf requires full-rank rho.
double minimal_renyi(const Dichotomy& d, double alpha);

enum class PinchSide { Left, Right };

/// Left/right-pinched Renyi relative entropy. Closed forms exist for
/// Left & alpha >= 0 (sandwiched) and Right & alpha <= 1 (reverse
/// sandwiched); outside those ranges the value is the finite-n estimate
/// f_{n_max} of the regularised limit, with the full history reported.
/// n f_n is subadditive there (the data-processing chain runs downward at
/// negative orders), so f_n approaches the limit from above in signed value
/// and f_{n_max} underestimates its magnitude -- conservative for every
/// rate bound that consumes it. No convergence rate is certified.
struct PinchedEstimate {
  double value;
  bool is_closed_form;
  int n_used;                         ///< 0 if closed form
  std::vector<double> history;        ///< f_1 .. f_{n_max} when finite-n
};
PinchedEstimate pinched_renyi(const Dichotomy& d, double alpha, PinchSide side, int n_max,
                              const RunConfig& cfg = default_config());

/// D*(rho||sigma) = lim_{alpha->1} right-pinched D_alpha: reverse-sandwiched
/// evaluations at alpha = 1 - h, Richardson-extrapolated in h. Satisfies
/// D* <= D with equality for commuting pairs.
double dstar(const Dichotomy& d);

/// Classical Renyi divergence of the pinched pair at a finite number of
/// copies (exposed for convergence tests): (1/n) D_alpha(P_{sigma^n}(rho^n) || sigma^n).
double pinched_renyi_finite_n(const Dichotomy& d, double alpha, PinchSide side, int n);

}  // namespace dich
