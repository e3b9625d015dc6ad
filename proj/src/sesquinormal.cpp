#include "dich/sesquinormal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dich/gaussian.hpp"
#include "dich/optimize.hpp"

namespace dich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNuZero = 1e-8;  // below this, use the nu = 0 (normal) branch
// Half-normal window. The general closed form stays numerically clean
// arbitrarily close to nu = 1 (the Phi arguments differ by O(1), no
// cancellation), so the window only has to keep the value jump at the
// handoff below 1e-6: |dS/dnu| <= ~0.13, hence 5e-6.
constexpr double kNuOne = 5e-6;

double half_normal_cdf(double mu) { return std::max(2.0 * gaussian_cdf(0.5 * mu) - 1.0, 0.0); }

struct PhiArgs {
  double hi, lo;  // S_nu(mu) = Phi(hi) - Phi(lo), hi >= lo
};

PhiArgs closed_form_args(double nu, double mu) {
  const double disc = mu * mu + (nu - 1.0) * std::log(nu);  // >= mu^2 for all nu > 0
  const double root = std::sqrt(std::max(disc, 0.0));
  const double one_minus = 1.0 - nu;
  return {(mu - std::sqrt(nu) * root) / one_minus, (std::sqrt(nu) * mu - root) / one_minus};
}

}  // namespace

double sesquinormal_cdf(double nu, double mu) {
  if (std::isnan(nu) || std::isnan(mu)) return std::numeric_limits<double>::quiet_NaN();
  if (nu < 0) throw std::domain_error("sesquinormal_cdf: nu must be >= 0");
  if (nu == kInf) return gaussian_cdf(0.0);  // degenerate infinite-variance limit
  if (nu <= kNuZero) return gaussian_cdf(mu);
  if (std::abs(nu - 1.0) <= kNuOne) return half_normal_cdf(mu);
  const PhiArgs a = closed_form_args(nu, mu);
  return std::clamp(gaussian_cdf(a.hi) - gaussian_cdf(a.lo), 0.0, 1.0);
}

double sesquinormal_log_cdf(double nu, double mu) {
  if (nu < 0) throw std::domain_error("sesquinormal_log_cdf: nu must be >= 0");
  if (nu <= kNuZero) return log_gaussian_cdf(mu);
  if (std::abs(nu - 1.0) <= kNuOne) {
    if (mu <= 0) return -kInf;
    return log1m_exp(std::log(2.0) + log_gaussian_cdf(-0.5 * mu));
  }
  const PhiArgs a = closed_form_args(nu, mu);
  if (a.hi <= 0.0) {
    const double lh = log_gaussian_cdf(a.hi);
    const double ll = log_gaussian_cdf(a.lo);
    return lh + log1m_exp(std::min(ll - lh, 0.0));
  }
  if (a.lo >= 0.0) {
    // Phi(hi) - Phi(lo) = Phi(-lo) - Phi(-hi)
    const double lh = log_gaussian_cdf(-a.lo);
    const double ll = log_gaussian_cdf(-a.hi);
    return lh + log1m_exp(std::min(ll - lh, 0.0));
  }
  return std::log(std::max(gaussian_cdf(a.hi) - gaussian_cdf(a.lo), 1e-300));
}

double sesquinormal_log_sf(double nu, double mu) {
  if (nu < 0) throw std::domain_error("sesquinormal_log_sf: nu must be >= 0");
  if (nu <= kNuZero) return log_gaussian_cdf(-mu);
  if (std::abs(nu - 1.0) <= kNuOne) {
    if (mu <= 0) return 0.0;
    return std::log(2.0) + log_gaussian_cdf(-0.5 * mu);
  }
  // 1 - S = (1 - Phi(hi)) + Phi(lo) = Phi(-hi) + Phi(lo)
  const PhiArgs a = closed_form_args(nu, mu);
  return log_add_exp(log_gaussian_cdf(-a.hi), log_gaussian_cdf(a.lo));
}

double sesquinormal_icdf(double nu, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("sesquinormal_icdf: eps not in (0,1)");
  if (nu < 0) throw std::domain_error("sesquinormal_icdf: nu must be >= 0");
  if (nu == kInf) throw std::domain_error("sesquinormal_icdf: nu = inf is degenerate");
  if (nu <= kNuZero) return gaussian_icdf(eps);
  if (std::abs(nu - 1.0) <= kNuOne) return 2.0 * gaussian_icdf(0.5 * (1.0 + eps));

  const double sq = std::sqrt(nu);
  const auto objective = [&](double x) {
    return sq * gaussian_icdf(x) - gaussian_icdf(x - eps);
  };
  // The objective diverges at both endpoints of (eps, 1), so an interior
  // grid plus golden refinement cannot escape the bracket. The minimiser can
  // sit at distance O(eps) from either endpoint, so the logit-spaced grid
  // range has to scale with log(1/eps).
  const double span = std::max(12.0, -std::log(std::min(eps, 1.0 - eps)) + 9.0);
  std::vector<double> xs;
  xs.reserve(66);
  for (int i = 1; i <= 64; ++i) {
    const double t = -span + 2.0 * span * (i - 0.5) / 64.0;
    const double u = logit_inv(t);
    xs.push_back(eps + (1.0 - eps) * u);
  }
  xs.push_back(0.5 * (1.0 + eps));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ScalarMin m = grid_min(objective, xs, 200);
  return m.value;
}

double sesquinormal_log_tail(double nu, double mu, TailSide side) {
  if (nu < 0) throw std::domain_error("sesquinormal_log_tail: nu must be >= 0");
  const double sq = std::sqrt(nu);
  if (side == TailSide::Low) {
    const double denom = 1.0 - sq;
    if (denom == 0.0) return -kInf;  // half-normal lower tail is identically zero
    return -0.5 * std::pow(mu / denom, 2);
  }
  return -0.5 * std::pow(mu / (1.0 + sq), 2);
}

double sesquinormal_icdf_tail(double nu, double log_eps, TailSide side) {
  if (!(log_eps < 0.0)) throw std::domain_error("sesquinormal_icdf_tail: log eps must be < 0");
  if (nu < 0) throw std::domain_error("sesquinormal_icdf_tail: nu must be >= 0");
  // The leading order is -|1-sqrt(nu)| sqrt(2 ln 1/eps) (low) and
  // +(1+sqrt(nu)) sqrt(2 ln 1/eps) (high). Evaluating the variational
  // objective at its asymptotically optimal interior point resums the
  // log-corrections through the exact Gaussian quantile, which the bare
  // square root misses badly until eps is astronomically small.
  const double sq = std::sqrt(nu);
  if (side == TailSide::High) {
    if (nu <= kNuZero) return -gaussian_icdf_from_log(log_eps);
    // minimiser at x* = 1 - eps u*, u* = sqrt(nu)/(1+sqrt(nu)):
    // value = -sqrt(nu) Phi^{-1}(eps u*) - Phi^{-1}(eps (1-u*))
    const double a = gaussian_icdf_from_log(log_eps + std::log(sq / (1.0 + sq)));
    const double b = gaussian_icdf_from_log(log_eps - std::log1p(sq));
    return -sq * a - b;
  }
  if (std::abs(nu - 1.0) <= kNuOne) return 0.0;  // half-normal lower tail collapses to 0+
  if (nu > 1.0) return sq * sesquinormal_icdf_tail(1.0 / nu, log_eps, TailSide::Low);
  if (nu <= kNuZero) return gaussian_icdf_from_log(log_eps);
  // nu < 1: minimiser at x* = 1 - c eps with c = sqrt(nu)/(1-sqrt(nu)):
  // value = -sqrt(nu) Phi^{-1}(c eps) + Phi^{-1}((1+c) eps)
  const double c = sq / (1.0 - sq);
  const double a = gaussian_icdf_from_log(log_eps + std::log(c));
  const double b = gaussian_icdf_from_log(log_eps + std::log1p(c));
  return -sq * a + b;
}

}  // namespace dich
