#include "dich/density.hpp"

#include <cmath>
#include <stdexcept>

namespace dich {

DensityOperator::DensityOperator(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 1) throw std::invalid_argument("density: not square");
  if (!m.is_hermitian(1e-8 * std::max(1.0, m.frobenius_norm())))
    throw std::invalid_argument("density: matrix is not Hermitian");
  EigenDecomposition e = eigh(m, tol);
  double tr = 0;
  for (double& lam : e.values) {
    if (lam < 0) {
      if (lam < -tol.density_negative)
        throw std::invalid_argument("density: eigenvalue " + std::to_string(lam) +
                                    " below the clamping tolerance");
      lam = 0;
    }
    tr += lam;
  }
  if (std::abs(tr - 1.0) > tol.trace_one)
    throw std::invalid_argument("density: trace " + std::to_string(tr) + " not within tolerance of 1");
  for (double& lam : e.values) lam /= tr;
  eig_ = std::move(e);
  m_ = eig_.reconstruct().hermitized();
}

DensityOperator DensityOperator::from_probs(const std::vector<double>& p, const Tolerances& tol) {
  return DensityOperator(CMatrix::diag(p), tol);
}

Dichotomy::Dichotomy(DensityOperator r, DensityOperator s, const Tolerances& tol)
    : rho(std::move(r)), sigma(std::move(s)) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("dichotomy: dimension mismatch");
  if (!sigma.full_rank(tol.full_rank))
    throw std::invalid_argument("dichotomy: sigma must have full support (lambda_min = " +
                                std::to_string(sigma.lambda_min()) + ")");
}

bool Dichotomy::commuting(double tol) const {
  return CMatrix::commutator_norm(rho.matrix(), sigma.matrix()) <= tol;
}

Dichotomy Dichotomy::swapped() const { return Dichotomy(sigma, rho); }

CMatrix pinch(const CMatrix& x, const DensityOperator& basis) {
  if (x.rows() != basis.dim() || x.cols() != basis.dim())
    throw std::invalid_argument("pinch: dimension mismatch");
  const EigenDecomposition& e = basis.eigen();
  CMatrix y = e.to_eigenbasis(x);
  // Zero every entry that straddles two different clusters.
  const int n = e.dim();
  std::vector<int> cluster_of(n);
  for (size_t c = 0; c < e.clusters.size(); ++c)
    for (int idx : e.clusters[c]) cluster_of[idx] = static_cast<int>(c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cluster_of[i] != cluster_of[j]) y(i, j) = 0.0;
  return e.from_eigenbasis(y).hermitized();
}

ClassicalPair pinched_classical_pair(const DensityOperator& x, const DensityOperator& basis) {
  const EigenDecomposition& e = basis.eigen();
  CMatrix y = e.to_eigenbasis(x.matrix());
  ClassicalPair out;
  for (const auto& cluster : e.clusters) {
    const int m = static_cast<int>(cluster.size());
    CMatrix block(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) block(i, j) = y(cluster[i], cluster[j]);
    EigenDecomposition be = eigh(block);
    double mu = 0;
    for (int idx : cluster) mu += e.values[idx];
    mu /= m;  // representative sigma eigenvalue of the cluster
    for (double lam : be.values) {
      out.p.push_back(std::max(lam, 0.0));
      out.q.push_back(mu);
    }
  }
  return out;
}

std::optional<ClassicalPair> commuting_classical_pair(const Dichotomy& d, double tol) {
  if (CMatrix::commutator_norm(d.rho.matrix(), d.sigma.matrix()) > tol) return std::nullopt;
  // If they commute, pinching rho onto sigma's eigenspaces is lossless.
  return pinched_classical_pair(d.rho, d.sigma);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  EigenDecomposition e = eigh(a.matrix() - b.matrix());
  double s = 0;
  for (double lam : e.values) s += std::abs(lam);
  return 0.5 * s;
}

double fidelity(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  CMatrix sqrt_a = mat_pow(a.eigen(), 0.5);
  CMatrix m = sqrt_a * b.matrix() * sqrt_a;
  EigenDecomposition e = eigh(m.hermitized());
  double s = 0;
  for (double lam : e.values) s += std::sqrt(std::max(lam, 0.0));
  return s * s;
}

DensityOperator gibbs_state(const CMatrix& h, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("gibbs_state: beta must be finite");
  EigenDecomposition e = eigh(h);
  // Shift so the largest exponent is 0; avoids overflow for any beta.
  double m = -beta * e.values[0];
  for (double en : e.values) m = std::max(m, -beta * en);
  std::vector<double> w(e.values.size());
  double z = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-beta * e.values[i] - m);
    z += w[i];
  }
  for (double& x : w) x /= z;
  CMatrix g = e.vectors * CMatrix::diag(w) * e.vectors.adjoint();
  return DensityOperator(g.hermitized());
}

double von_neumann_entropy(const DensityOperator& rho) {
  double s = 0;
  for (double lam : rho.eigen().values)
    if (lam > 0) s -= lam * std::log(lam);
  return s;
}

double entropy_variance(const DensityOperator& rho) {
  const double s = von_neumann_entropy(rho);
  double v = 0;
  for (double lam : rho.eigen().values)
    if (lam > 0) v += lam * std::pow(std::log(lam) + s, 2);
  return v;
}

CMatrix mat_pow(const EigenDecomposition& e, double t) {
  std::vector<double> w(e.values.size());
  for (size_t i = 0; i < w.size(); ++i) {
    const double lam = e.values[i];
    if (lam <= 0) {
      if (t > 0) {
        w[i] = 0.0;
      } else if (t == 0) {
        w[i] = 0.0;  // support projector convention
      } else {
        throw std::domain_error("mat_pow: non-positive eigenvalue with negative exponent");
      }
    } else {
      w[i] = (t == 0) ? 1.0 : std::pow(lam, t);
    }
  }
  return (e.vectors * CMatrix::diag(w) * e.vectors.adjoint()).hermitized();
}

CMatrix mat_log_on_support(const EigenDecomposition& e, double support_tol) {
  std::vector<double> w(e.values.size());
  for (size_t i = 0; i < w.size(); ++i)
    w[i] = (e.values[i] > support_tol) ? std::log(e.values[i]) : 0.0;
  return (e.vectors * CMatrix::diag(w) * e.vectors.adjoint()).hermitized();
}

}  // namespace dich
