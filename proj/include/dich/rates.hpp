#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dich/hypotest.hpp"

namespace dich {

enum class Regime { FirstOrder, Small, ModerateLow, ModerateHigh, LargeLow, LargeHigh, ZeroError, ExtremeHigh };

struct RateQuery {
  std::shared_ptr<const DichotomyProfile> input;
  std::shared_ptr<const DichotomyProfile> target;
  Regime regime = Regime::FirstOrder;
  double eps = 0.5;     ///< Small / FirstOrder error
  double lambda = 1.0;  ///< Moderate / Large error exponent
  double a = 0.5;       ///< Moderate exponent power, in (0,1)

  static RateQuery make(const Dichotomy& input, const Dichotomy& target, Regime r,
                        const RunConfig& cfg = default_config());
};

enum class BoundKind { TwoSidedTight, UpperOnly, LowerAndUpper };

struct RateResult {
  Regime regime;
  double value = 0;          ///< first-order part; for bound-pair regimes the upper bound
  double second_order = 0;   ///< coefficient of 1/sqrt(n) (Small) or sqrt(n^{a-1}) (Moderate)
  BoundKind bound_kind = BoundKind::TwoSidedTight;
  double lower_bound = 0;    ///< LargeLow / ZeroError achievability bound
  double upper_bound = 0;
  bool infinite = false;     ///< infinite-rate sentinel
  bool to_achievable = false;///< attainable by thermal operations (Gibbs sigma)
  std::vector<std::string> notes;
  double gap() const { return upper_bound - lower_bound; }
};

/// xi = (V1/D1)/(V2/D2); errors out when either relative entropy vanishes.
double reversibility_xi(const DichotomyProfile& input, const DichotomyProfile& target);

RateResult first_order_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult small_deviation_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult moderate_deviation_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult large_deviation_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult zero_error_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult extreme_high_rate(const RateQuery& q, const RunConfig& cfg = default_config());
RateResult rate(const RateQuery& q, const RunConfig& cfg = default_config());

/// Shared second-order cores (also used by the thermodynamic and
/// entanglement front-ends). Returns the coefficient of 1/sqrt(n):
/// sqrt(V1) S^{-1}_{1/xi}(eps) / D2, evaluated through the numerically safe
/// branch including the V -> 0 limits.
double small_deviation_second_order(double d1, double v1, double d2, double v2, double eps);
/// Moderate-deviation coefficients of sqrt(n^{a-1}): -|a-b| (low) or a+b
/// (high) over D2, with a = sqrt(2 lambda V1), b = sqrt(2 lambda V2 D1/D2).
double moderate_deviation_coefficient(double d1, double v1, double d2, double v2, double lambda,
                                      bool high);

enum class RVariant { PlainUpper, PlainCheck, Left, Right };

/// The piecewise r-functions of the large-deviation low-error rate.
/// Variants other than PlainUpper require a commuting target.
double r_function(const RateQuery& q, double mu, RVariant variant,
                  const RunConfig& cfg = default_config());

struct ZeroErrorDetail {
  double upper;
  double lower;          ///< commuting target only; NaN otherwise
  double argmin_alpha;   ///< minimiser of the upper-bound ratio
  bool lower_uses_estimates;
};
ZeroErrorDetail zero_error_detail(const RateQuery& q, const RunConfig& cfg = default_config());

/// Two-sided error classification (App. C): lambda_sigma > 0 is the exponent
/// of the second error; lambda_sigma == 0 encodes a non-exponentially-small
/// second error (rate breakdown).
RateResult two_sided_rate(const RateQuery& q, double lambda_sigma,
                          const RunConfig& cfg = default_config());

/// Exact finite-n Blackwell feasibility for commuting dichotomies:
/// (p1,q1)^{(x)n} -> (p2,q2)^{(x)ceil(R n)} with trace-distance errors
/// (eps on the first state, eps_sigma on the second).
bool finite_n_feasible(const std::vector<double>& p1, const std::vector<double>& q1,
                       const std::vector<double>& p2, const std::vector<double>& q2, int n,
                       double rate, double eps, double eps_sigma = 0.0);

enum class BlackwellVerdict { SufficientDominates, NecessaryViolated, Inconclusive };
BlackwellVerdict eventual_blackwell(const Dichotomy& d1, const Dichotomy& d2,
                                    const RunConfig& cfg = default_config());

}  // namespace dich
