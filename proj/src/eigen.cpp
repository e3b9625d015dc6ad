#include "dich/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dich {

namespace {

double offdiag_norm(const CMatrix& a) {
  double s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

const RunConfig& default_config() {
  static const RunConfig cfg{};
  return cfg;
}

CMatrix EigenDecomposition::reconstruct() const {
  return vectors * CMatrix::diag(values) * vectors.adjoint();
}

CMatrix EigenDecomposition::to_eigenbasis(const CMatrix& x) const {
  return vectors.adjoint() * x * vectors;
}

CMatrix EigenDecomposition::from_eigenbasis(const CMatrix& x) const {
  return vectors * x * vectors.adjoint();
}

EigenDecomposition eigh(const CMatrix& a_in, const Tolerances& tol) {
  if (a_in.rows() != a_in.cols()) throw std::invalid_argument("eigh: matrix not square");
  const int n = a_in.rows();
  CMatrix a = a_in.hermitized();
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  const double stop = tol.eigen_offdiag * scale;
  const int max_sweeps = 100;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-3 * stop / n) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / g;  // e^{i phi}

        // Rotation angle for the effective real 2x2 [[app, g],[g, aqq]].
        const double tau = (app - aqq) / (2.0 * g);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = ((tau >= 0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary on the (p,q) plane: U = [[c, -s e^{i phi}], [s e^{-i phi}, c]].
        // Update A <- U^dagger A U and V <- V U.
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const cplx arp = a(r, p);
          const cplx arq = a(r, q);
          a(r, p) = c * arp + s * std::conj(phase) * arq;
          a(r, q) = -s * phase * arp + c * arq;
          a(p, r) = std::conj(a(r, p));
          a(q, r) = std::conj(a(r, q));
        }
        const double app_new = c * c * app + s * s * aqq + 2.0 * s * c * g;
        const double aqq_new = s * s * app + c * c * aqq - 2.0 * s * c * g;
        a(p, p) = app_new;
        a(q, q) = aqq_new;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          const cplx vrp = v(r, p);
          const cplx vrq = v(r, q);
          v(r, p) = c * vrp + s * std::conj(phase) * vrq;
          v(r, q) = -s * phase * vrp + c * vrq;
        }
      }
    }
  }
  if (offdiag_norm(a) > stop)
    throw std::runtime_error("eigh: Jacobi sweeps did not converge (off-diagonal norm " +
                             std::to_string(offdiag_norm(a)) + ")");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] > diag[j]; });

  EigenDecomposition e;
  e.values.resize(n);
  e.vectors = CMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    e.values[k] = diag[order[k]];
    for (int r = 0; r < n; ++r) e.vectors(r, k) = v(r, order[k]);
  }

  // Degeneracy clusters: consecutive sorted eigenvalues within the relative
  // gap tolerance share one cluster.
  std::vector<int> current{0};
  for (int k = 1; k < n; ++k) {
    const double gap = e.values[k - 1] - e.values[k];
    const double ref = std::max({std::abs(e.values[k - 1]), std::abs(e.values[k]), 1e-300});
    if (gap <= tol.cluster_rel * ref) {
      current.push_back(k);
    } else {
      e.clusters.push_back(current);
      current = {k};
    }
  }
  e.clusters.push_back(current);
  return e;
}

}  // namespace dich
