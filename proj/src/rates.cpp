#include "dich/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dich/classical.hpp"
#include "dich/gaussian.hpp"
#include "dich/optimize.hpp"
#include "dich/sesquinormal.hpp"

namespace dich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kVarZero = 1e-14;  // below this a relative entropy variance counts as zero

double h_slope(double t) { return t / (t - 1.0); }  // tail branches
double g_slope(double t) { return t / (1.0 - t); }  // middle branch

}  // namespace

RateQuery RateQuery::make(const Dichotomy& input, const Dichotomy& target, Regime r,
                          const RunConfig& cfg) {
  RateQuery q;
  q.input = std::make_shared<QuantumProfile>(input, cfg);
  q.target = std::make_shared<QuantumProfile>(target, cfg);
  q.regime = r;
  return q;
}

double reversibility_xi(const DichotomyProfile& input, const DichotomyProfile& target) {
  const double d1 = input.relative_entropy();
  const double d2 = target.relative_entropy();
  if (d1 <= 0 || d2 <= 0)
    throw std::domain_error("reversibility_xi: requires positive relative entropies");
  return (input.variance() / d1) / (target.variance() / d2);
}

double small_deviation_second_order(double d1, double v1, double d2, double v2, double eps) {
  // sqrt(V1) S^{-1}_{1/xi}(eps) / D2 with xi = (V1/D1)/(V2/D2), evaluated
  // through whichever side of the duality S_nu^{-1} = sqrt(nu) S_{1/nu}^{-1}
  // keeps the parameter in [0,1]; the V->0 limits come out exactly.
  const double b2 = v2 * d1 / d2;  // (sqrt b2) = xi^{-1/2} sqrt(V1)
  if (v1 <= kVarZero && b2 <= kVarZero) return 0.0;
  double term;
  if (b2 <= kVarZero) {
    term = std::sqrt(v1) * gaussian_icdf(eps);  // xi -> inf: S_0 = Phi
  } else if (v1 <= kVarZero) {
    term = std::sqrt(b2) * gaussian_icdf(eps);  // xi -> 0 limit
  } else {
    const double xi = (v1 / d1) / (v2 / d2);
    if (xi >= 1.0) {
      term = std::sqrt(v1) * sesquinormal_icdf(1.0 / xi, eps);
    } else {
      term = std::sqrt(b2) * sesquinormal_icdf(xi, eps);
    }
  }
  return term / d2;
}

double moderate_deviation_coefficient(double d1, double v1, double d2, double v2, double lambda,
                                      bool high) {
  const double a = std::sqrt(2.0 * lambda * v1);
  const double b = std::sqrt(2.0 * lambda * v2 * d1 / d2);
  return (high ? (a + b) : -std::abs(a - b)) / d2;
}

namespace {

RateResult base_result(const RateQuery& q, Regime regime) {
  RateResult r;
  r.regime = regime;
  const bool commuting_target = q.target->commuting();
  r.bound_kind = commuting_target ? BoundKind::TwoSidedTight : BoundKind::UpperOnly;
  if (!commuting_target) r.notes.push_back("non-commuting target: upper bound only");
  return r;
}

}  // namespace

RateResult first_order_rate(const RateQuery& q, const RunConfig&) {
  RateResult r = base_result(q, Regime::FirstOrder);
  const double d1 = q.input->relative_entropy();
  const double d2 = q.target->relative_entropy();
  if (d2 <= 0) {
    r.infinite = true;
    r.value = kInf;
    r.notes.push_back("target relative entropy vanishes: unbounded rate");
    return r;
  }
  r.value = d1 / d2;
  r.to_achievable = q.target->commuting();
  return r;
}

RateResult small_deviation_rate(const RateQuery& q, const RunConfig& cfg) {
  if (!(q.eps > 0.0 && q.eps < 1.0))
    throw std::domain_error("small_deviation_rate: eps must be in (0,1)");
  RateResult r = first_order_rate(q, cfg);
  r.regime = Regime::Small;
  if (r.infinite) return r;
  const double d1 = q.input->relative_entropy();
  const double d2 = q.target->relative_entropy();
  const double v1 = q.input->variance();
  const double v2 = q.target->variance();
  if (v1 <= kVarZero && v2 <= kVarZero)
    r.notes.push_back("both variances vanish: exact first-order rate");
  r.second_order = small_deviation_second_order(d1, v1, d2, v2, q.eps);
  return r;
}

RateResult moderate_deviation_rate(const RateQuery& q, const RunConfig& cfg) {
  if (!(q.lambda > 0)) throw std::domain_error("moderate_deviation_rate: lambda must be > 0");
  if (!(q.a > 0 && q.a < 1)) throw std::domain_error("moderate_deviation_rate: a must be in (0,1)");
  RateResult r = first_order_rate(q, cfg);
  r.regime = q.regime;
  if (r.infinite) return r;
  const double d1 = q.input->relative_entropy();
  const double d2 = q.target->relative_entropy();
  r.second_order = moderate_deviation_coefficient(d1, q.input->variance(), d2,
                                                  q.target->variance(), q.lambda,
                                                  q.regime == Regime::ModerateHigh);
  return r;
}

namespace {

struct RFamilies {
  Family num_tail_low;   // t1 < 0 branch numerator
  Family num_middle;     // 0 < t1 < 1 branch numerator
  Family num_tail_high;  // t1 > 1 branch numerator
  Family den_middle;     // target family in the middle branch
  bool left_boundary;    // branch boundary at -D*(sigma1||rho1) instead of -D
};

RFamilies r_families(RVariant v) {
  switch (v) {
    case RVariant::PlainUpper:
      return {Family::Minimal, Family::Petz, Family::Minimal, Family::Petz, false};
    case RVariant::PlainCheck:
      return {Family::Minimal, Family::Minimal, Family::Minimal, Family::Minimal, false};
    case RVariant::Left:
      return {Family::LeftPinched, Family::LeftPinched, Family::Minimal, Family::Minimal, true};
    case RVariant::Right:
      return {Family::Minimal, Family::RightPinched, Family::RightPinched, Family::Minimal, false};
  }
  throw std::logic_error("unknown r variant");
}

}  // namespace

double r_function(const RateQuery& q, double mu, RVariant variant, const RunConfig& cfg) {
  if (!std::isfinite(mu)) throw std::domain_error("r_function: mu must be finite");
  if (variant != RVariant::PlainUpper && !q.target->commuting())
    throw std::domain_error("r_function: this variant requires a commuting target");
  const RFamilies fam = r_families(variant);
  const DichotomyProfile& in = *q.input;
  const DichotomyProfile& tg = *q.target;
  const double boundary = fam.left_boundary ? -in.reverse_dstar() : -in.reverse_relative_entropy();
  const std::vector<double> ug = saddle_grid(cfg.optimizer_grid);

  if (mu > 0) {
    // r_3: sup_{t2>1} [B - h(t2) mu] / D_{t2}(2), B = inf_{t1>1} [D_{t1}(1) + h(t1) mu]
    auto inner = [&](double u1) {
      const double t1 = 1.0 / u1;
      return in.renyi(t1, fam.num_tail_high) + h_slope(t1) * mu;
    };
    double b = grid_min(inner, ug).value;
    const double inner_limit = in.renyi(kInf, fam.num_tail_high) + mu;  // t1 -> inf
    b = std::min(b, inner_limit);
    auto outer = [&](double u2) {
      const double t2 = 1.0 / u2;
      return (b - h_slope(t2) * mu) / tg.renyi(t2, Family::Minimal);
    };
    double val = grid_max(outer, ug).value;
    const double d2inf = tg.renyi(kInf, Family::Minimal);
    if (d2inf > 0) val = std::max(val, (b - mu) / d2inf);  // t2 -> inf
    return val;
  }
  if (mu > boundary) {
    // r_2: inf_{0<t2<1} [C - g(t2) mu] / D_{t2}(2), C = sup_{0<t1<1} [D_{t1}(1) + g(t1) mu]
    auto inner = [&](double t1) { return in.renyi(t1, fam.num_middle) + g_slope(t1) * mu; };
    const double c = grid_max(inner, ug).value;
    auto outer = [&](double t2) {
      const double den = tg.renyi(t2, fam.den_middle);
      if (den <= 0) return kInf;
      return (c - g_slope(t2) * mu) / den;
    };
    return grid_min(outer, ug).value;
  }
  // r_1: sup_{t2<0} [A - h(t2) mu] / (-D_{t2}(2)), A = inf_{t1<0} [-D_{t1}(1) + h(t1) mu]
  auto inner = [&](double u1) {
    const double t1 = -u1 / (1.0 - u1);
    return -in.renyi(t1, fam.num_tail_low) + h_slope(t1) * mu;
  };
  double a = grid_min(inner, ug).value;
  const double d1minf = in.renyi(-kInf, fam.num_tail_low);
  if (std::isfinite(d1minf)) a = std::min(a, -d1minf + mu);  // t1 -> -inf
  auto outer = [&](double u2) {
    const double t2 = -u2 / (1.0 - u2);
    const double den = -tg.renyi(t2, Family::Minimal);
    if (den <= 0) return -kInf;
    return (a - h_slope(t2) * mu) / den;
  };
  double val = grid_max(outer, ug).value;
  const double d2minf = tg.renyi(-kInf, Family::Minimal);
  if (std::isfinite(d2minf) && d2minf < 0) val = std::max(val, (a - mu) / (-d2minf));
  return val;
}

namespace {

double min_r_over_mu(const RateQuery& q, double lambda, RVariant variant, const RunConfig& cfg) {
  const DichotomyProfile& in = *q.input;
  std::vector<double> mus = linspace(-lambda, lambda, cfg.mu_grid);
  // All the structure of r(mu) lives on the scale of the divergences; for
  // large lambda the outer grid would step over the dip, so a second grid
  // resolves that core region.
  double scale = 4.0 * in.relative_entropy();
  const double dinf_s = in.renyi(kInf, Family::Minimal);
  if (std::isfinite(dinf_s)) scale = std::max(scale, 2.0 * std::abs(dinf_s));
  const double rev_s = in.reverse_relative_entropy();
  if (std::isfinite(rev_s)) scale = std::max(scale, 2.0 * rev_s);
  if (scale < lambda)
    for (double m : linspace(-scale, scale, cfg.mu_grid)) mus.push_back(m);
  // branch boundaries inserted exactly
  const double b1 = -in.reverse_relative_entropy();
  const double b2 = -in.reverse_dstar();
  for (double b : {b1, b2, 0.0})
    if (std::isfinite(b) && b > -lambda && b < lambda) mus.push_back(b);
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
  auto f = [&](double mu) { return r_function(q, mu, variant, cfg); };
  double best = kInf;
  size_t ibest = 0;
  std::vector<double> vals(mus.size());
  for (size_t i = 0; i < mus.size(); ++i) {
    vals[i] = f(mus[i]);
    if (vals[i] < best) {
      best = vals[i];
      ibest = i;
    }
  }
  // golden refinement around the grid argmin
  const double lo = mus[ibest > 0 ? ibest - 1 : 0];
  const double hi = mus[std::min(ibest + 1, mus.size() - 1)];
  if (hi > lo) best = std::min(best, golden_min(f, lo, hi, 80).value);
  return best;
}

}  // namespace

RateResult large_deviation_rate(const RateQuery& q, const RunConfig& cfg) {
  if (!(q.lambda > 0)) throw std::domain_error("large_deviation_rate: lambda must be > 0");
  RateResult r = base_result(q, q.regime);
  const DichotomyProfile& in = *q.input;
  const DichotomyProfile& tg = *q.target;
  if (q.regime == Regime::LargeHigh) {
    const std::vector<double> ug = saddle_grid(cfg.optimizer_grid);
    auto inner = [&](double u1) {
      const double t1 = 1.0 / u1;
      return in.renyi(t1, Family::Minimal) + h_slope(t1) * q.lambda;
    };
    double n1 = grid_min(inner, ug).value;
    n1 = std::min(n1, in.renyi(kInf, Family::Minimal) + q.lambda);
    const Family den_family = tg.commuting() ? Family::Minimal : Family::Petz;
    auto outer = [&](double t2) {
      const double den = tg.renyi(t2, den_family);
      if (den <= 0) return kInf;
      return (n1 + g_slope(t2) * q.lambda) / den;
    };
    r.value = grid_min(outer, ug).value;
    r.upper_bound = r.lower_bound = r.value;
    r.to_achievable = true;
    if (!tg.commuting()) r.to_achievable = false;
    return r;
  }
  // LargeLow: the one regime with a standing gap between the bounds
  r.bound_kind = BoundKind::LowerAndUpper;
  r.upper_bound = min_r_over_mu(q, q.lambda, RVariant::PlainUpper, cfg);
  r.value = r.upper_bound;
  if (tg.commuting()) {
    r.lower_bound = min_r_over_mu(q, q.lambda, RVariant::PlainCheck, cfg);
    if (in.commuting()) {
      r.to_achievable = true;
    } else {
      const double left_only = min_r_over_mu(q, q.lambda, RVariant::Left, cfg);
      r.to_achievable = left_only >= r.lower_bound - 1e-9;
      r.notes.push_back("left-pinched achievable lower bound: " + std::to_string(left_only));
    }
  } else {
    r.lower_bound = -kInf;
    r.notes.push_back("non-commuting target: no achievability bound");
  }
  return r;
}

ZeroErrorDetail zero_error_detail(const RateQuery& q, const RunConfig& cfg) {
  const DichotomyProfile& in = *q.input;
  const DichotomyProfile& tg = *q.target;
  std::vector<double> alphas = tanh_grid(8.0, cfg.alpha_grid);
  alphas.push_back(1.0);

  // ratio of divergences with the 0/0 at alpha ~ 0 routed through derivatives
  auto ratio = [&](double alpha, Family num_family) -> double {
    if (std::abs(alpha) < 2e-3) {
      const double h = 1e-3;
      const double dn = in.renyi(h, num_family) - in.renyi(-h, num_family);
      const double dd = tg.renyi(h, Family::Minimal) - tg.renyi(-h, Family::Minimal);
      if (std::abs(dd) < 1e-300) return kInf;
      return dn / dd;
    }
    const double den = tg.renyi(alpha, Family::Minimal);
    if (std::abs(den) < 1e-14) return kInf;
    const double num = in.renyi(alpha, num_family);
    if (!std::isfinite(num)) return kInf;  // degenerate negative orders (singular rho)
    return num / den;
  };

  ZeroErrorDetail out;
  out.lower_uses_estimates = false;

  // upper bound: min over extended alpha of the Minimal ratio
  double best = ratio(1.0, Family::Minimal);
  double best_alpha = 1.0;
  for (double a : alphas) {
    const double v = ratio(a, Family::Minimal);
    if (v < best) {
      best = v;
      best_alpha = a;
    }
  }
  for (double a : {kInf, -kInf}) {
    double v;
    try {
      v = ratio(a, Family::Minimal);
    } catch (const std::domain_error&) {
      continue;  // singular rho: the -inf order is unavailable
    }
    if (v < best) {
      best = v;
      best_alpha = a;
    }
  }
  // golden refinement in the interior
  if (std::isfinite(best_alpha)) {
    auto f = [&](double a) { return ratio(a, Family::Minimal); };
    ScalarMin m = golden_min(f, best_alpha - 0.5, best_alpha + 0.5, 80);
    if (m.value < best) {
      best = m.value;
      best_alpha = m.x;
    }
  }
  out.upper = best;
  out.argmin_alpha = best_alpha;

  if (!tg.commuting()) {
    out.lower = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double lower = -kInf;
  std::vector<double> side_alphas = alphas;
  side_alphas.push_back(kInf);
  side_alphas.push_back(-kInf);
  for (Family side : {Family::LeftPinched, Family::RightPinched}) {
    double side_inf = ratio(1.0, side);
    double side_arg = 1.0;
    for (double a : side_alphas) {
      double v;
      try {
        v = ratio(a, side);
      } catch (const std::domain_error&) {
        continue;
      }
      if (!std::isfinite(v)) continue;
      if (v < side_inf) {
        side_inf = v;
        side_arg = a;
      }
      if (in.renyi_estimated(a, side)) out.lower_uses_estimates = true;
    }
    // refine like the upper bound so commuting pairs land on the same value
    if (std::isfinite(side_arg)) {
      auto f = [&](double a) {
        try {
          return ratio(a, side);
        } catch (const std::domain_error&) {
          return kInf;
        }
      };
      ScalarMin m = golden_min(f, side_arg - 0.5, side_arg + 0.5, 80);
      side_inf = std::min(side_inf, m.value);
    }
    lower = std::max(lower, side_inf);
  }
  out.lower = lower;
  return out;
}

RateResult zero_error_rate(const RateQuery& q, const RunConfig& cfg) {
  RateResult r = base_result(q, Regime::ZeroError);
  ZeroErrorDetail d = zero_error_detail(q, cfg);
  r.bound_kind = BoundKind::LowerAndUpper;
  r.upper_bound = d.upper;
  r.value = d.upper;
  r.lower_bound = std::isnan(d.lower) ? -kInf : d.lower;
  if (d.lower_uses_estimates)
    r.notes.push_back("lower bound uses finite-n pinched estimates (conservative)");
  r.notes.push_back("argmin alpha = " + std::to_string(d.argmin_alpha));
  r.to_achievable = q.input->commuting() && q.target->commuting();
  return r;
}

RateResult extreme_high_rate(const RateQuery& q, const RunConfig&) {
  RateResult r = base_result(q, Regime::ExtremeHigh);
  r.infinite = true;
  r.value = kInf;
  r.upper_bound = kInf;
  r.lower_bound = q.target->commuting() ? kInf : 0.0;
  r.to_achievable = q.target->commuting();
  r.notes.push_back("error regime 1 - exp(-omega(n)): rate unbounded");
  if (!q.target->commuting())
    r.notes.push_back("non-commuting target: divergence claimed as upper bound only");
  return r;
}

RateResult rate(const RateQuery& q, const RunConfig& cfg) {
  switch (q.regime) {
    case Regime::FirstOrder:
      return first_order_rate(q, cfg);
    case Regime::Small:
      return small_deviation_rate(q, cfg);
    case Regime::ModerateLow:
    case Regime::ModerateHigh:
      return moderate_deviation_rate(q, cfg);
    case Regime::LargeLow:
    case Regime::LargeHigh:
      return large_deviation_rate(q, cfg);
    case Regime::ZeroError:
      return zero_error_rate(q, cfg);
    case Regime::ExtremeHigh:
      return extreme_high_rate(q, cfg);
  }
  throw std::logic_error("unknown regime");
}

RateResult two_sided_rate(const RateQuery& q, double lambda_sigma, const RunConfig& cfg) {
  if (lambda_sigma < 0) throw std::domain_error("two_sided_rate: lambda_sigma must be >= 0");
  RateResult r;
  const double d1 = q.input->relative_entropy();
  if (lambda_sigma == 0.0) {
    // neither error exponentially small: total breakdown of the order
    r = base_result(q, q.regime);
    r.infinite = true;
    r.value = kInf;
    r.notes.push_back("second error not exponentially small: rate eventually infinite");
    return r;
  }
  switch (q.regime) {
    case Regime::FirstOrder:
    case Regime::Small:
    case Regime::ModerateLow:
    case Regime::ModerateHigh: {
      if (lambda_sigma > d1) {
        r = rate(q, cfg);
        r.notes.push_back("two-sided: lambda_sigma above D1, one-sided rate unchanged");
        return r;
      }
      r = base_result(q, q.regime);
      r.infinite = true;
      r.value = kInf;
      r.notes.push_back("two-sided: lambda_sigma below D1, Blackwell order breaks down");
      return r;
    }
    case Regime::LargeHigh: {
      const double gam = gamma_asymptotic(*q.input, q.lambda, Side::None, cfg);
      if (lambda_sigma > -gam) {
        r = rate(q, cfg);
        r.notes.push_back("two-sided: lambda_sigma above -Gamma_{lambda}, rate unchanged");
        return r;
      }
      r = base_result(q, q.regime);
      r.infinite = true;
      r.value = kInf;
      r.notes.push_back("two-sided: lambda_sigma below -Gamma_{lambda}, order breaks down");
      return r;
    }
    case Regime::LargeLow: {
      // constrained min of rbar / rcheck over mu in [-lambda, lambda] with
      // Gamma_mu within [-lambda_sigma, lambda_sigma]
      const double gam_at_low = gamma_asymptotic(*q.input, -q.lambda, Side::None, cfg);
      if (gam_at_low < -lambda_sigma) {
        r = base_result(q, q.regime);
        r.infinite = true;
        r.value = kInf;
        r.notes.push_back("two-sided large-low: constraint domain empty, rate infinite");
        return r;
      }
      r = base_result(q, q.regime);
      r.bound_kind = BoundKind::LowerAndUpper;
      std::vector<double> mus = linspace(-q.lambda, q.lambda, cfg.mu_grid);
      double up = kInf, lo = kInf;
      for (double mu : mus) {
        const double g_plain = gamma_asymptotic(*q.input, mu, Side::None, cfg);
        if (g_plain > -lambda_sigma && g_plain < lambda_sigma)
          up = std::min(up, r_function(q, mu, RVariant::PlainUpper, cfg));
        if (q.target->commuting()) {
          const double g_check = gamma_check(*q.input, mu, cfg);
          if (g_check > -lambda_sigma && g_check < lambda_sigma)
            lo = std::min(lo, r_function(q, mu, RVariant::PlainCheck, cfg));
        }
      }
      if (up == kInf) {
        r.infinite = true;
        r.value = kInf;
        r.notes.push_back("two-sided large-low: no feasible mu on the grid, rate infinite");
        return r;
      }
      r.upper_bound = up;
      r.value = up;
      r.lower_bound = q.target->commuting() ? lo : -kInf;
      return r;
    }
    case Regime::ZeroError:
    case Regime::ExtremeHigh: {
      r = rate(q, cfg);
      r.notes.push_back("two-sided: returning the one-sided result for this regime");
      return r;
    }
  }
  throw std::logic_error("unknown regime");
}

namespace {

struct PiecewiseCurve {
  // breakpoints sorted by x ascending, exact log-domain values
  std::vector<double> log_x, log_1mx, log_beta;
  std::vector<TypeClass> classes;  // for off-breakpoint evaluation
};

PiecewiseCurve build_curve(const std::vector<double>& p, const std::vector<double>& q, int n) {
  PiecewiseCurve c;
  c.classes = tensor_power_pair(p, q, n);
  std::vector<int> order(c.classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c.classes[a].llr() > c.classes[b].llr(); });
  const size_t m = order.size();
  std::vector<double> prefix_p(m + 1, -kInf), prefix_q(m + 1, -kInf), suffix_p(m + 1, -kInf);
  for (size_t k = 0; k < m; ++k) {
    prefix_p[k + 1] = log_add_exp(prefix_p[k], c.classes[order[k]].log_mass_p());
    prefix_q[k + 1] = log_add_exp(prefix_q[k], c.classes[order[k]].log_mass_q());
  }
  for (size_t k = m; k-- > 0;)
    suffix_p[k] = log_add_exp(suffix_p[k + 1], c.classes[order[k]].log_mass_p());
  // breakpoint k: exactly the first k classes accepted
  for (size_t k = 0; k <= m; ++k) {
    c.log_x.push_back(suffix_p[k]);        // x = 1 - P(first k) = suffix p mass
    c.log_1mx.push_back(prefix_p[k]);
    c.log_beta.push_back(prefix_q[k]);
  }
  return c;
}

double eval_log_beta(const PiecewiseCurve& c, double log_x, double log_1mx) {
  if (log_x == -kInf) {
    // x = 0: accept the whole support of p
    return c.log_beta.back() == 0.0 ? 0.0 : c.log_beta[c.log_beta.size() - 1];
  }
  LogNP np = classical_np(c.classes, log_x - log_1mx);
  return np.log_beta;
}

}  // namespace

bool finite_n_feasible(const std::vector<double>& p1, const std::vector<double>& q1,
                       const std::vector<double>& p2, const std::vector<double>& q2, int n,
                       double rate, double eps, double eps_sigma) {
  if (n < 1) throw std::invalid_argument("finite_n_feasible: n must be >= 1");
  if (eps < 0 || eps >= 1) throw std::invalid_argument("finite_n_feasible: eps must be in [0,1)");
  const int m = std::max(1, static_cast<int>(std::ceil(rate * n - 1e-12)));
  PiecewiseCurve c1 = build_curve(p1, q1, n);
  PiecewiseCurve c2 = build_curve(p2, q2, m);
  const double log_eps = eps > 0 ? std::log(eps) : -kInf;
  const double log_1meps = std::log1p(-eps);
  const double log_eps_sigma = eps_sigma > 0 ? std::log(eps_sigma) : -kInf;
  const double slack = 1e-11;

  auto beta1_le_beta2 = [&](double lx, double l1mx) -> bool {
    // requires x in (eps, 1): evaluate beta1(x) <= beta2(x - eps) + eps_sigma
    if (lx <= log_eps || l1mx == -kInf) return true;  // outside the open interval
    double lx2, l1mx2;
    if (log_eps == -kInf) {
      lx2 = lx;
      l1mx2 = l1mx;
    } else {
      if (lx <= log_eps) return true;
      const double diff = log1m_exp(log_eps - lx);
      lx2 = lx + diff;  // log(x - eps)
      l1mx2 = log_add_exp(l1mx, log_eps);
    }
    const double b1 = eval_log_beta(c1, lx, l1mx);
    const double b2 = eval_log_beta(c2, lx2, l1mx2);
    return b1 <= log_add_exp(b2, log_eps_sigma) + slack;
  };

  // checkpoints: breakpoints of curve 1, and of curve 2 shifted by +eps
  for (size_t k = 0; k < c1.log_x.size(); ++k) {
    if (c1.log_x[k] <= log_eps || c1.log_1mx[k] == -kInf) continue;
    if (!beta1_le_beta2(c1.log_x[k], c1.log_1mx[k])) return false;
  }
  for (size_t k = 0; k < c2.log_x.size(); ++k) {
    // x = x2 + eps
    if (c2.log_x[k] == -kInf && log_eps == -kInf) continue;
    const double lx = log_add_exp(c2.log_x[k], log_eps);
    if (lx >= 0.0) continue;  // x >= 1
    double l1mx;
    if (c2.log_1mx[k] == -kInf) {
      l1mx = log1m_exp(std::min(lx, -1e-300));
    } else {
      // 1 - x = (1 - x2) - eps
      if (c2.log_1mx[k] <= log_eps) continue;
      l1mx = c2.log_1mx[k] + log1m_exp(log_eps - c2.log_1mx[k]);
    }
    if (!beta1_le_beta2(lx, l1mx)) return false;
  }
  // endpoint guard near x = 1
  if (!beta1_le_beta2(log_add_exp(log_eps, log_1meps - 1e-6), -1e-7)) return false;
  return true;
}

BlackwellVerdict eventual_blackwell(const Dichotomy& d1, const Dichotomy& d2,
                                    const RunConfig& cfg) {
  // The unit-rate case of the zero-error bounds: strict pinched dominance
  // on the sampled grid means the zero-error rate exceeds 1 (sufficient); a
  // minimal-divergence ratio below 1 violates the data-processing
  // necessity. Grid-based, hence deliberately inconclusive in between.
  RateQuery q;
  q.input = std::make_shared<QuantumProfile>(d1, cfg);
  q.target = std::make_shared<QuantumProfile>(d2, cfg);
  q.regime = Regime::ZeroError;
  ZeroErrorDetail z = zero_error_detail(q, cfg);
  const double margin = 1e-9;
  if (z.upper < 1.0 - margin) return BlackwellVerdict::NecessaryViolated;
  if (!std::isnan(z.lower) && z.lower > 1.0 + margin)
    return BlackwellVerdict::SufficientDominates;
  return BlackwellVerdict::Inconclusive;
}

}  // namespace dich
