#pragma once

#include <optional>
#include <vector>

#include "dich/eigen.hpp"

namespace dich {

/// Density operator: Hermitian, PSD, unit trace, with a cached spectral
/// decomposition. Construction clamps eigenvalues in [-tol, 0) to zero and
/// renormalises the trace; anything dirtier is rejected.
class DensityOperator {
 public:
  explicit DensityOperator(const CMatrix& m, const Tolerances& tol = default_config().tol);
  static DensityOperator from_probs(const std::vector<double>& p,
                                    const Tolerances& tol = default_config().tol);

  const CMatrix& matrix() const { return m_; }
  const EigenDecomposition& eigen() const { return eig_; }
  int dim() const { return m_.rows(); }
  double lambda_min() const { return eig_.min(); }
  bool full_rank(double tol) const { return eig_.min() > tol; }

 private:
  CMatrix m_;
  EigenDecomposition eig_;
};

/// Ordered pair (rho, sigma) on one space; sigma must have full support.
struct Dichotomy {
  DensityOperator rho;
  DensityOperator sigma;

  Dichotomy(DensityOperator r, DensityOperator s, const Tolerances& tol = default_config().tol);
  int dim() const { return rho.dim(); }
  bool commuting(double tol = default_config().tol.commute) const;
  Dichotomy swapped() const;
};

/// Pinching with respect to the eigenspaces of `basis`: sum_c P_c X P_c over
/// the degeneracy clusters of basis.
CMatrix pinch(const CMatrix& x, const DensityOperator& basis);

/// In the eigenbasis of `basis`, the pinched operator is block diagonal and
/// each block commutes with basis. Returns the joint classical pair
/// (eigenvalues of pinch(x, basis), matching eigenvalues of basis).
struct ClassicalPair {
  std::vector<double> p;
  std::vector<double> q;
};
ClassicalPair pinched_classical_pair(const DensityOperator& x, const DensityOperator& basis);

/// If [rho, sigma] = 0 (within tol), expose the pair in a joint eigenbasis.
std::optional<ClassicalPair> commuting_classical_pair(const Dichotomy& d,
                                                      double tol = default_config().tol.commute);

double trace_distance(const DensityOperator& a, const DensityOperator& b);
double fidelity(const DensityOperator& a, const DensityOperator& b);

/// exp(-beta H)/Z, computed with a spectral shift so it never overflows.
DensityOperator gibbs_state(const CMatrix& h, double beta);

double von_neumann_entropy(const DensityOperator& rho);
double entropy_variance(const DensityOperator& rho);

/// Matrix functions through the spectral decomposition. pow() treats 0^t as 0
/// for t > 0 (pseudo-power); negative powers require strict positivity.
CMatrix mat_pow(const EigenDecomposition& e, double t);
CMatrix mat_log_on_support(const EigenDecomposition& e, double support_tol = 1e-14);

}  // namespace dich
