#pragma once

#include <limits>
#include <vector>

#include "dich/optimize.hpp"

namespace dich {

// Classical (fully commuting) information quantities, natural log.
// Extended orders are passed as +-std::numeric_limits<double>::infinity().

double shannon_entropy(const std::vector<double>& p);
double shannon_entropy_variance(const std::vector<double>& p);
/// H_alpha; alpha <= 0 is evaluated on the support (H_0 = log support size).
double renyi_entropy(const std::vector<double>& p, double alpha);

double classical_relative_entropy(const std::vector<double>& p, const std::vector<double>& q);
double classical_relative_entropy_variance(const std::vector<double>& p,
                                           const std::vector<double>& q);
/// Classical Renyi divergence D_alpha(p||q); q must have full support.
/// For alpha < 0 with p not fully supported the value degenerates to -inf.
double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha);
/// (alpha-1) D_alpha, the cumulant generating function; additive under
/// weighted mixtures of independent sources.
double classical_renyi_cumulant(const std::vector<double>& p, const std::vector<double>& q,
                                double alpha);

}  // namespace dich
