#include "dich/gaussian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dich {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Wichura's AS241 (PPND16) rational approximation to the normal quantile.
double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                             6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                           1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                         1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                             3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                           5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                         4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                             2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                           3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                         4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                             1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                           6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                         2.05319162663775882187e0) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                             1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                           2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                         5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                             1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                           1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                         5.99832206555887937690e-1) * r + 1.0);
    val = num / den;
  }
  return (q < 0) ? -val : val;
}

// Newton step for log Phi(x) = target, monotone and safe in the tail.
double refine_on_log_cdf(double x, double log_target) {
  for (int it = 0; it < 3; ++it) {
    const double f = log_gaussian_cdf(x) - log_target;
    const double logphi = -0.5 * x * x - kLogSqrt2Pi;
    const double deriv = std::exp(logphi - log_gaussian_cdf(x));  // phi/Phi > 0
    if (!(deriv > 0) || !std::isfinite(f)) break;
    const double step = f / deriv;
    x -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double log_gaussian_cdf(double x) {
  if (x > -37.0) {
    const double c = gaussian_cdf(x);
    if (c > 1e-300) return std::log(c);
  }
  // Lower-tail asymptotic: Phi(x) = phi(x)/(-x) * (1 - 1/x^2 + 3/x^4 - 15/x^6 + ...)
  const double x2 = x * x;
  double series = 1.0, term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) / x2;
    series += term;
    if (std::abs(term) < 1e-17) break;
  }
  return -0.5 * x2 - kLogSqrt2Pi - std::log(-x) + std::log(series);
}

double gaussian_icdf(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("gaussian_icdf: p must be in (0,1)");
  double x = ppnd16(p);
  // One refinement pass keeps the deep tail at ~1e-12 relative.
  if (p < 0.5) {
    x = refine_on_log_cdf(x, std::log(p));
  } else {
    x = -refine_on_log_cdf(-x, std::log1p(-p));  // 1-p is exact for p >= 0.5
  }
  return x;
}

double gaussian_icdf_from_log(double log_p) {
  if (!(log_p < 0.0)) throw std::domain_error("gaussian_icdf_from_log: log p must be < 0");
  if (log_p > std::log(1e-300)) return gaussian_icdf(std::exp(log_p));
  // Asymptotic seed: -x ~ sqrt(-2 log p - log(2 pi (-2 log p)))
  const double l = -log_p;
  double u = 2.0 * l;
  for (int it = 0; it < 32; ++it) u = 2.0 * l - std::log(2.0 * M_PI * u);
  double x = -std::sqrt(u);
  return refine_on_log_cdf(x, log_p);
}

double logit(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("logit: p must be in (0,1)");
  return std::log(p) - std::log1p(-p);
}

double logit_inv(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

double log1m_exp(double a) {
  if (a > 0) throw std::domain_error("log1m_exp: argument must be <= 0");
  if (a == 0) return -kInf;
  if (a > -0.6931471805599453) return std::log(-std::expm1(a));
  return std::log1p(-std::exp(a));
}

}  // namespace dich
