#pragma once

namespace dich {

/// The sesquinormal family S_nu interpolates between the normal (nu in
/// {0, inf}) and half-normal (nu = 1) distributions. nu >= 0; +inf is a
/// legal sentinel handled through the reciprocal duality.
///
/// Branch selection: the generic closed form is used for |nu - 1| > 1e-4 and
/// nu > 1e-8; inside those windows the limit branches take over (the generic
/// formula has a 0/0 structure at nu = 1).
double sesquinormal_cdf(double nu, double mu);

/// Inverse cdf via the variational form min_{x in (eps,1)} sqrt(nu)
/// Phi^{-1}(x) - Phi^{-1}(x - eps). Requires 0 < nu < inf (limit branches for
/// nu ~ 0 and nu ~ 1 are closed-form); eps in (0,1).
double sesquinormal_icdf(double nu, double eps);

enum class TailSide { Low, High };

/// Leading-order log-tail: ln S_nu(-mu) ~ -mu^2/(2(1-sqrt(nu))^2) (low),
/// ln(1 - S_nu(mu)) ~ -mu^2/(2(1+sqrt(nu))^2) (high), for large mu.
double sesquinormal_log_tail(double nu, double mu, TailSide side);

/// Inverse tails, asymptotically -|1-sqrt(nu)| sqrt(2 ln 1/eps) (low) and
/// +(1+sqrt(nu)) sqrt(2 ln 1/eps) (high). Evaluated through the exact
/// Gaussian quantile at the asymptotically optimal interior point of the
/// variational form, which keeps the log-corrections; takes log(eps) so the
/// deep tail stays reachable.
double sesquinormal_icdf_tail(double nu, double log_eps, TailSide side);

/// log S_nu(mu) and log(1 - S_nu(mu)), stable in both tails.
double sesquinormal_log_cdf(double nu, double mu);
double sesquinormal_log_sf(double nu, double mu);

}  // namespace dich
