#include "dich/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "dich/classical.hpp"

namespace dich {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

QuantumProfile::QuantumProfile(Dichotomy d, const RunConfig& cfg)
    : d_(std::move(d)), cfg_(cfg), commuting_(d_.commuting(cfg.tol.commute)) {}

double QuantumProfile::relative_entropy() const { return dich::relative_entropy(d_); }
double QuantumProfile::variance() const { return relative_entropy_variance(d_); }

double QuantumProfile::renyi(double alpha, Family f) const {
  const auto key = std::make_pair(alpha, static_cast<int>(f));
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  double v;
  switch (f) {
    case Family::Petz:
      v = petz_renyi(d_, alpha);
      break;
    case Family::Minimal:
      v = minimal_renyi(d_, alpha);
      break;
    case Family::LeftPinched:
      v = pinched_renyi(d_, alpha, PinchSide::Left, cfg_.pinched_n_max, cfg_).value;
      break;
    case Family::RightPinched:
      v = pinched_renyi(d_, alpha, PinchSide::Right, cfg_.pinched_n_max, cfg_).value;
      break;
    default:
      throw std::logic_error("unknown family");
  }
  cache_[key] = v;
  return v;
}

bool QuantumProfile::renyi_estimated(double alpha, Family f) const {
  if (commuting_) return false;
  if (f == Family::LeftPinched) return alpha < 0.0 || alpha == -kInf;
  if (f == Family::RightPinched) return (alpha > 1.0 && alpha != kInf) || alpha == kInf;
  return false;
}

double QuantumProfile::reverse_relative_entropy() const {
  // D(sigma || rho) = +inf when rho is singular (sigma has full support)
  if (!d_.rho.full_rank(cfg_.tol.full_rank)) return kInf;
  return dich::relative_entropy(d_.swapped());
}
double QuantumProfile::reverse_dstar() const {
  if (!d_.rho.full_rank(cfg_.tol.full_rank)) return kInf;
  return dstar(d_.swapped());
}
double QuantumProfile::forward_dstar() const { return dstar(d_); }

double QuantumProfile::minus_log_lambda_min() const {
  const double lm = d_.rho.lambda_min();
  return lm > 0 ? -std::log(lm) : kInf;
}

namespace {

void validate_and_renormalize(std::vector<double>& p, const char* what) {
  double s = 0;
  for (double x : p) {
    if (x < -1e-12) throw std::invalid_argument(std::string(what) + ": negative probability");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-8)
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " + std::to_string(s));
  for (double& x : p) x = std::max(x, 0.0) / s;
}

}  // namespace

ClassicalProfile::ClassicalProfile(std::vector<double> p, std::vector<double> q)
    : p_(std::move(p)), q_(std::move(q)) {
  if (p_.size() != q_.size()) throw std::invalid_argument("classical profile: length mismatch");
  validate_and_renormalize(p_, "classical profile p");
  validate_and_renormalize(q_, "classical profile q");
  for (double x : q_)
    if (x <= 0) throw std::invalid_argument("classical profile: q must have full support");
}

double ClassicalProfile::relative_entropy() const { return classical_relative_entropy(p_, q_); }
double ClassicalProfile::variance() const { return classical_relative_entropy_variance(p_, q_); }
double ClassicalProfile::renyi(double alpha, Family) const { return classical_renyi(p_, q_, alpha); }
double ClassicalProfile::reverse_relative_entropy() const {
  return classical_relative_entropy(q_, p_);
}
double ClassicalProfile::minus_log_lambda_min() const {
  double lm = kInf;
  for (double x : p_) lm = std::min(lm, x);
  return lm > 0 ? -std::log(lm) : kInf;
}

MixtureProfile::MixtureProfile(double lam, std::vector<double> pa, std::vector<double> pb,
                               std::vector<double> q)
    : lam_(lam), pa_(std::move(pa)), pb_(std::move(pb)), q_(std::move(q)) {
  if (lam_ < 0 || lam_ > 1) throw std::invalid_argument("mixture profile: lambda not in [0,1]");
  validate_and_renormalize(pa_, "mixture profile p_a");
  validate_and_renormalize(pb_, "mixture profile p_b");
  validate_and_renormalize(q_, "mixture profile q");
  for (double x : q_)
    if (x <= 0) throw std::invalid_argument("mixture profile: q must have full support");
}

double MixtureProfile::relative_entropy() const {
  return lam_ * classical_relative_entropy(pa_, q_) +
         (1 - lam_) * classical_relative_entropy(pb_, q_);
}

double MixtureProfile::variance() const {
  return lam_ * classical_relative_entropy_variance(pa_, q_) +
         (1 - lam_) * classical_relative_entropy_variance(pb_, q_);
}

double MixtureProfile::renyi(double alpha, Family) const {
  if (alpha == kInf || alpha == -kInf) {
    // (alpha-1) D_alpha / alpha -> D_{+-inf}; the limits combine linearly too
    return lam_ * classical_renyi(pa_, q_, alpha) + (1 - lam_) * classical_renyi(pb_, q_, alpha);
  }
  if (std::abs(alpha - 1.0) < default_config().tol.alpha_near_one) return relative_entropy();
  const double k =
      lam_ * classical_renyi_cumulant(pa_, q_, alpha) +
      (1 - lam_) * classical_renyi_cumulant(pb_, q_, alpha);
  return k / (alpha - 1.0);
}

double MixtureProfile::reverse_relative_entropy() const {
  return lam_ * classical_relative_entropy(q_, pa_) +
         (1 - lam_) * classical_relative_entropy(q_, pb_);
}

double MixtureProfile::minus_log_lambda_min() const {
  double la = kInf, lb = kInf;
  for (double x : pa_) la = std::min(la, x);
  for (double x : pb_) lb = std::min(lb, x);
  if (la <= 0 || lb <= 0) return kInf;
  return -(lam_ * std::log(la) + (1 - lam_) * std::log(lb));
}

}  // namespace dich
