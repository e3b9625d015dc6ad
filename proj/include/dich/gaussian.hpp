#pragma once

namespace dich {

double gaussian_pdf(double x);
double gaussian_cdf(double x);
/// log Phi(x), valid deep into the lower tail (x ~ -1e5).
double log_gaussian_cdf(double x);

/// Inverse standard normal cdf, p in (0,1). Rational approximation (AS241)
/// refined with a Newton step on log Phi.
double gaussian_icdf(double p);
/// Inverse from log p; the only way in once p underflows a double.
double gaussian_icdf_from_log(double log_p);

double logit(double p);
double logit_inv(double x);

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);
/// log(1 - exp(a)) for a <= 0.
double log1m_exp(double a);

}  // namespace dich
