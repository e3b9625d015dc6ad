#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dich/density.hpp"

namespace dich {

/// One analytic-vs-brute-force comparison.
struct OracleReport {
  std::string quantity;
  double analytic;
  double oracle;
  double abs_diff;
  std::string grid;

  OracleReport(std::string name, double a, double o, std::string g)
      : quantity(std::move(name)), analytic(a), oracle(o), abs_diff(std::abs(a - o)),
        grid(std::move(g)) {}
};

/// Discretized variational value of the sesquinormal cdf: integrates
/// (1/2) int |A' - phi_{mu,nu}| for the candidate A = max(Phi, Phi_{mu,nu}),
/// then probes 64 random admissible perturbations of A; throws if any
/// perturbation improves by more than the grid tolerance (that would mean
/// the closed form the candidate certifies is wrong).
double sesquinormal_oracle(double nu, double mu, int grid_points, std::uint64_t seed = 1);

/// Brute-force achievable beta for qubit dichotomies: minimises Tr(sigma Q)
/// over Q = s P + r (I - P) with rank-1 projectors P on a (theta, phi) grid,
/// (s, r) solved exactly per projector. Upper bound converging to the truth.
double qubit_beta_oracle(const Dichotomy& d, double x, int grid_points);

struct SteinStudyRow {
  int n;
  double exponent;  ///< -(1/n) log beta_eps
};
struct SteinStudy {
  std::vector<SteinStudyRow> rows;
  double fitted_second_order;   ///< isolated 1/sqrt(n) coefficient
  double predicted_second_order;///< sqrt(V) Phi^{-1}(eps)
  double relative_error;
};
/// Exact type-class beta_eps at each n, then a least-squares fit of the
/// residual against {1/sqrt(n), log(n)/n} (the known next-order shape); the
/// 1/sqrt(n) coefficient is compared to sqrt(V) Phi^{-1}(eps).
SteinStudy stein_convergence_study(const std::vector<double>& p, const std::vector<double>& q,
                                   double eps, const std::vector<int>& n_list);

/// Cumulative-dominance test: does a majorize b? (Vectors are padded with
/// zeros to a common length.)
bool majorization_check(std::vector<double> a, std::vector<double> b);

}  // namespace dich
