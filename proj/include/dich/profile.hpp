#pragma once

#include <map>
#include <memory>
#include <vector>

#include "dich/divergence.hpp"

namespace dich {

enum class Family { Petz, Minimal, LeftPinched, RightPinched };

/// Everything the asymptotic rate formulas need to know about one dichotomy,
/// abstracted so the same machinery runs on quantum pairs, plain classical
/// pairs, and weighted mixtures of classical sources (App-G style composites,
/// where the cumulants (alpha-1) D_alpha combine additively).
class DichotomyProfile {
 public:
  virtual ~DichotomyProfile() = default;
  virtual double relative_entropy() const = 0;
  virtual double variance() const = 0;
  /// D_alpha in the requested family; alpha may be +-inf.
  virtual double renyi(double alpha, Family f) const = 0;
  /// True when renyi(alpha, f) is a finite-n lower estimate, not a closed form.
  virtual bool renyi_estimated(double alpha, Family f) const = 0;
  virtual double reverse_relative_entropy() const = 0;  ///< D(sigma||rho)
  virtual double reverse_dstar() const = 0;             ///< D*(sigma||rho)
  virtual double forward_dstar() const = 0;             ///< D*(rho||sigma)
  virtual double minus_log_lambda_min() const = 0;      ///< -log lambda_min(rho), +inf if singular
  virtual bool commuting() const = 0;
};

class QuantumProfile final : public DichotomyProfile {
 public:
  explicit QuantumProfile(Dichotomy d, const RunConfig& cfg = default_config());
  double relative_entropy() const override;
  double variance() const override;
  double renyi(double alpha, Family f) const override;
  bool renyi_estimated(double alpha, Family f) const override;
  double reverse_relative_entropy() const override;
  double reverse_dstar() const override;
  double forward_dstar() const override;
  double minus_log_lambda_min() const override;
  bool commuting() const override { return commuting_; }
  const Dichotomy& dichotomy() const { return d_; }

 private:
  Dichotomy d_;
  RunConfig cfg_;
  bool commuting_;
  mutable std::map<std::pair<double, int>, double> cache_;
};

class ClassicalProfile final : public DichotomyProfile {
 public:
  ClassicalProfile(std::vector<double> p, std::vector<double> q);
  double relative_entropy() const override;
  double variance() const override;
  double renyi(double alpha, Family) const override;
  bool renyi_estimated(double, Family) const override { return false; }
  double reverse_relative_entropy() const override;
  double reverse_dstar() const override { return reverse_relative_entropy(); }
  double forward_dstar() const override { return relative_entropy(); }
  double minus_log_lambda_min() const override;
  bool commuting() const override { return true; }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& q() const { return q_; }

 private:
  std::vector<double> p_, q_;
};

/// lambda : (1-lambda) composite of two classical sources against a common
/// reference, i.e. the per-copy statistics of p_a^{(x) lam n} (x) p_b^{(x)(1-lam)n}
/// against q^{(x) n}.
class MixtureProfile final : public DichotomyProfile {
 public:
  MixtureProfile(double lam, std::vector<double> pa, std::vector<double> pb,
                 std::vector<double> q);
  double relative_entropy() const override;
  double variance() const override;
  double renyi(double alpha, Family) const override;
  bool renyi_estimated(double, Family) const override { return false; }
  double reverse_relative_entropy() const override;
  double reverse_dstar() const override { return reverse_relative_entropy(); }
  double forward_dstar() const override { return relative_entropy(); }
  double minus_log_lambda_min() const override;
  bool commuting() const override { return true; }

 private:
  double lam_;
  std::vector<double> pa_, pb_, q_;
};

}  // namespace dich
