#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dich/profile.hpp"
#include "dich/typeclass.hpp"

namespace dich {

/// One achieved Neyman-Pearson test: type-I error x, type-II error beta,
/// and the threshold t of the test that realises it.
struct CurvePoint {
  double x;
  double beta;
  double t;
};

/// Exact or bracketed type-I/type-II trade-off. For exact (commuting)
/// curves the points are the kinks and lower == upper everywhere; otherwise
/// upper(x) interpolates chords between achieved tests and lower(x) is the
/// best Lagrangian tangent.
struct TradeoffCurve {
  std::vector<CurvePoint> points;  ///< sorted by x ascending
  bool exact = false;
  double lower(double x) const;
  double upper(double x) const;
};

struct Bracket {
  double lower;
  double upper;
  bool converged = true;
  double mid() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

enum class Side { None, Left, Right };
enum class ExtremeBranch { LowTypeI, HighTypeI };

/// log beta and log(1-beta) of the randomized NP test at the requested
/// type-I error, computed entirely in log domain.
struct LogNP {
  double log_beta;
  double log_one_minus_beta;
  double logit_beta() const { return log_beta - log_one_minus_beta; }
};

/// Exact classical NP point at type-I logit `type1_logit` on joint type
/// classes (classes need not be sorted).
LogNP classical_np(const std::vector<TypeClass>& classes, double type1_logit);

/// Exact minimal type-II error at type-I error <= x for classical pairs.
double classical_beta(const std::vector<double>& p, const std::vector<double>& q, double x);
/// Same on aggregated type classes (tensor powers at large n).
double classical_beta(const std::vector<TypeClass>& classes, double x);
/// The full exact curve with its kink structure.
TradeoffCurve classical_curve(const std::vector<double>& p, const std::vector<double>& q);

/// Certified bracket on the quantum beta_x via a Neyman-Pearson threshold
/// sweep (achieved chords above, dual tangents below). Collapses to the
/// classical value for commuting pairs.
Bracket quantum_beta(const Dichotomy& d, double x, double tol = default_config().tol.bracket,
                     int max_refine = 200);
/// The sweep itself, for curve dumps; `extra_samples` refines between
/// generalized eigenvalues.
TradeoffCurve quantum_curve(const Dichotomy& d, int extra_samples = 64);

/// Left: beta_x(pinch(rho, sigma) || sigma); right: beta_x(rho || pinch(sigma, rho)).
/// Both pairs commute, so the value is exact (returned as a zero-width bracket).
Bracket pinched_beta(const Dichotomy& d, double x, Side side,
                     double tol = default_config().tol.bracket);

/// Type-II log odds at type-I log odds x_logodds: L[beta_{L^{-1}[x]}].
Bracket gamma_logodds(const Dichotomy& d, double x_logodds, Side side,
                      double tol = default_config().tol.bracket);

/// Single-shot extreme-deviation closed forms, valid for x <= lambda_min of
/// the null state (of the pinched null for Side::Left):
///   HighTypeI: beta_{1-x} = x exp(-D_{+inf}),
///   LowTypeI:  beta_x = 1 - x exp(-D_{-inf}).
double extreme_singleshot_beta(const Dichotomy& d, double x, Side side, ExtremeBranch branch);

/// Asymptotic type-II log odds per copy at type-I log odds per copy lambda
/// (Gamma_lambda and its pinched variants), via the piecewise Renyi
/// optimizations with extreme-deviation short-circuit.
double gamma_asymptotic(const DichotomyProfile& prof, double lambda, Side side,
                        const RunConfig& cfg = default_config());
double gamma_asymptotic(const Dichotomy& d, double lambda, Side side,
                        const RunConfig& cfg = default_config());

/// widecheck Gamma = min(left, right) evaluated through the Minimal family
/// (for commuting profiles it equals gamma_asymptotic).
double gamma_check(const DichotomyProfile& prof, double lambda,
                   const RunConfig& cfg = default_config());

/// Exact (1/n) gamma at type-I log odds n * x_logodds_per_copy on commuting
/// tensor powers.
double finite_n_gamma(const std::vector<double>& p, const std::vector<double>& q, int n,
                      double x_logodds_per_copy);

}  // namespace dich
