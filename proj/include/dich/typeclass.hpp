#pragma once

#include <cstdint>
#include <vector>

namespace dich {

/// One type class of an iid tensor power: all length-n strings with the same
/// empirical count vector. Everything is kept in log domain; classes whose
/// p-mass is exactly zero carry -inf.
struct TypeClass {
  double log_mult;   ///< log multinomial(n; k)
  double log_p;      ///< log of the per-string p-probability (sum k_i log p_i)
  double log_q;      ///< same under q
  double llr() const { return log_p - log_q; }      ///< per-string log-likelihood ratio
  double log_mass_p() const { return log_mult + log_p; }
  double log_mass_q() const { return log_mult + log_q; }
};

/// Aggregated spectrum of p^{(x)n} by type class (single distribution view).
struct TypeClassSpectrum {
  std::vector<double> log_value;  ///< per-string eigenvalue, log domain
  std::vector<double> log_mult;
  std::int64_t classes() const { return static_cast<std::int64_t>(log_value.size()); }
  /// Total probability mass (linear domain), for sanity checks.
  double total_mass() const;
};

std::int64_t type_class_count(int alphabet, int n);

/// Eigenvalues of p^{(x)n} aggregated by type class. Throws if the class
/// count exceeds the budget.
TypeClassSpectrum tensor_power_commuting(const std::vector<double>& p, int n,
                                         std::int64_t max_classes = 4'000'000);

/// Joint type classes of (p^{(x)n}, q^{(x)n}) for hypothesis testing between
/// commuting tensor powers. q must have full support.
std::vector<TypeClass> tensor_power_pair(const std::vector<double>& p,
                                         const std::vector<double>& q, int n,
                                         std::int64_t max_classes = 4'000'000);

}  // namespace dich
