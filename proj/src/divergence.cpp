#include "dich/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dich/classical.hpp"
#include "dich/gaussian.hpp"

namespace dich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logsumexp(const std::vector<double>& v) {
  double m = -kInf;
  for (double x : v) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

/// Log-domain eigenvalues of M = sum_i exp(lw[i]) b_i b_i^dagger where b_i are
/// the columns of B. Weight groups separated by more than `gap` nats are
/// decoupled and deflated; within a group the computation is a dense
/// eigendecomposition, so the only error is the O(exp(-gap)) cross-group
/// coupling. Returns exactly B.rows() entries, -inf for zero modes.
std::vector<double> graded_gram_log_eigenvalues(std::vector<double> lw, const CMatrix& b,
                                                double gap = 40.0) {
  const int dim = b.rows();
  const int m = b.cols();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return lw[i] > lw[j]; });

  std::vector<double> out;
  CMatrix q = CMatrix::identity(dim);  // columns span the not-yet-deflated subspace
  int remaining = dim;

  size_t pos = 0;
  while (pos < order.size() && remaining > 0) {
    if (lw[order[pos]] == -kInf) break;
    // collect one group
    size_t end = pos + 1;
    while (end < order.size() && lw[order[end]] != -kInf &&
           lw[order[end - 1]] - lw[order[end]] <= gap)
      ++end;
    const double ref = lw[order[pos]];
    // S = sum_{k in group} exp(lw_k - ref) (Q^dag b_k)(Q^dag b_k)^dag
    CMatrix s(remaining, remaining);
    for (size_t k = pos; k < end; ++k) {
      const int col = order[k];
      const double w = std::exp(lw[col] - ref);
      std::vector<cplx> c(remaining, 0.0);
      for (int r = 0; r < remaining; ++r) {
        cplx acc = 0;
        for (int row = 0; row < dim; ++row) acc += std::conj(q(row, r)) * b(row, col);
        c[r] = acc;
      }
      for (int i = 0; i < remaining; ++i)
        for (int j = 0; j < remaining; ++j) s(i, j) += w * c[i] * std::conj(c[j]);
    }
    EigenDecomposition se = eigh(s);
    const double smax = std::max(se.values.front(), 0.0);
    const double rank_cut = smax * 1e-13;
    int rank = 0;
    for (double v : se.values)
      if (v > rank_cut) ++rank;
    rank = std::min({rank, static_cast<int>(end - pos), remaining});
    for (int k = 0; k < rank; ++k) out.push_back(ref + std::log(se.values[k]));
    // deflate: keep the near-kernel directions
    const int new_remaining = remaining - rank;
    CMatrix qn(dim, new_remaining);
    for (int kk = 0; kk < new_remaining; ++kk)
      for (int row = 0; row < dim; ++row) {
        cplx acc = 0;
        for (int r = 0; r < remaining; ++r) acc += q(row, r) * se.vectors(r, rank + kk);
        qn(row, kk) = acc;
      }
    q = std::move(qn);
    remaining = new_remaining;
    pos = end;
  }
  while (static_cast<int>(out.size()) < dim) out.push_back(-kInf);
  return out;
}

/// log Tr((sigma^{c/2} rho sigma^{c/2})^alpha): spectrum of
/// sum_j mu_j^c (rho^{1/2} v_j)(rho^{1/2} v_j)^dag, robust to graded weights.
double log_tr_sandwich(const Dichotomy& d, double c, double outer) {
  const EigenDecomposition& es = d.sigma.eigen();
  CMatrix sqrt_rho = mat_pow(d.rho.eigen(), 0.5);
  CMatrix b = sqrt_rho * es.vectors;  // column j = rho^{1/2} v_j
  std::vector<double> lw(es.values.size());
  for (size_t j = 0; j < lw.size(); ++j)
    lw[j] = (es.values[j] > 0) ? c * std::log(es.values[j]) : -kInf;
  std::vector<double> lm = graded_gram_log_eigenvalues(lw, b);
  std::vector<double> terms;
  for (double l : lm)
    if (l > -kInf) terms.push_back(outer * l);
  return logsumexp(terms);
}

/// log Tr((rho^{c/2} sigma rho^{c/2})^outer): spectrum of
/// sum_i lambda_i^c (sigma^{1/2} u_i)(sigma^{1/2} u_i)^dag.
double log_tr_reverse_sandwich(const Dichotomy& d, double c, double outer) {
  const EigenDecomposition& er = d.rho.eigen();
  CMatrix sqrt_sigma = mat_pow(d.sigma.eigen(), 0.5);
  CMatrix b = sqrt_sigma * er.vectors;
  std::vector<double> lw(er.values.size());
  for (size_t i = 0; i < lw.size(); ++i) {
    if (er.values[i] > 0) {
      lw[i] = c * std::log(er.values[i]);
    } else if (c > 0) {
      lw[i] = -kInf;
    } else if (c == 0) {
      lw[i] = -kInf;  // support projector: zero modes drop out
    } else {
      throw std::domain_error("reverse sandwich: singular rho with negative power");
    }
  }
  std::vector<double> lm = graded_gram_log_eigenvalues(lw, b);
  std::vector<double> terms;
  for (double l : lm)
    if (l > -kInf) terms.push_back(outer * l);
  return logsumexp(terms);
}

double sandwiched_value(const Dichotomy& d, double alpha) {
  // (1/(alpha-1)) log Tr((sigma^{(1-alpha)/(2 alpha)} rho sigma^{(1-alpha)/(2 alpha)})^alpha)
  const double c = (1.0 - alpha) / alpha;
  return log_tr_sandwich(d, c, alpha) / (alpha - 1.0);
}

double reverse_sandwiched_value(const Dichotomy& d, double alpha) {
  // (1/(alpha-1)) log Tr((rho^{alpha/(2(1-alpha))} sigma rho^{alpha/(2(1-alpha))})^{1-alpha})
  const double c = alpha / (1.0 - alpha);
  return log_tr_reverse_sandwich(d, c, 1.0 - alpha) / (alpha - 1.0);
}

double max_divergence(const Dichotomy& d) {
  // log lambda_max(sigma^{-1/2} rho sigma^{-1/2})
  CMatrix isq = mat_pow(d.sigma.eigen(), -0.5);
  EigenDecomposition e = eigh(isq * d.rho.matrix() * isq);
  return std::log(std::max(e.values.front(), 1e-300));
}

double min_divergence(const Dichotomy& d) {
  // -log lambda_max(rho^{-1/2} sigma rho^{-1/2}); requires full-rank rho
  if (!d.rho.full_rank(default_config().tol.full_rank))
    throw std::domain_error("minimal_renyi at alpha = -inf requires full-rank rho");
  CMatrix isq = mat_pow(d.rho.eigen(), -0.5);
  EigenDecomposition e = eigh(isq * d.sigma.matrix() * isq);
  return -std::log(std::max(e.values.front(), 1e-300));
}

}  // namespace

double relative_entropy(const Dichotomy& d) {
  const EigenDecomposition& er = d.rho.eigen();
  double h = 0;  // Tr rho log rho on support
  for (double lam : er.values)
    if (lam > 0) h += lam * std::log(lam);
  // Tr rho log sigma = sum_j log mu_j <v_j|rho|v_j>
  const EigenDecomposition& es = d.sigma.eigen();
  CMatrix rt = es.to_eigenbasis(d.rho.matrix());
  double cross = 0;
  for (int j = 0; j < es.dim(); ++j) cross += rt(j, j).real() * std::log(es.values[j]);
  return h - cross;
}

double relative_entropy_variance(const Dichotomy& d) {
  const double dv = relative_entropy(d);
  CMatrix l = mat_log_on_support(d.rho.eigen()) - mat_log_on_support(d.sigma.eigen());
  CMatrix rll = d.rho.matrix() * l * l;
  const double second = rll.trace().real();
  return std::max(second - dv * dv, 0.0);
}

double petz_renyi(const Dichotomy& d, double alpha) {
  if (!std::isfinite(alpha)) throw std::domain_error("petz_renyi: alpha must be finite");
  if (std::abs(alpha - 1.0) < default_config().tol.alpha_near_one) return relative_entropy(d);
  const EigenDecomposition& er = d.rho.eigen();
  const EigenDecomposition& es = d.sigma.eigen();
  // overlap weights w_ij = |<u_i|v_j>|^2
  CMatrix ov = er.vectors.adjoint() * es.vectors;
  if (alpha == 0.0) {
    double s = 0;
    for (int i = 0; i < er.dim(); ++i) {
      if (er.values[i] <= 0) continue;
      for (int j = 0; j < es.dim(); ++j) s += std::norm(ov(i, j)) * es.values[j];
    }
    return -std::log(s);
  }
  if (alpha < 0 && !d.rho.full_rank(default_config().tol.full_rank))
    throw std::domain_error("petz_renyi: alpha < 0 requires full-rank rho");
  std::vector<double> terms;
  for (int i = 0; i < er.dim(); ++i) {
    if (er.values[i] <= 0) continue;  // alpha > 0 only here
    for (int j = 0; j < es.dim(); ++j) {
      const double w = std::norm(ov(i, j));
      if (w <= 0) continue;
      terms.push_back(alpha * std::log(er.values[i]) + (1.0 - alpha) * std::log(es.values[j]) +
                      std::log(w));
    }
  }
  return logsumexp(terms) / (alpha - 1.0);
}

double minimal_renyi(const Dichotomy& d, double alpha) {
  if (alpha == kInf) return max_divergence(d);
  if (alpha == -kInf) return min_divergence(d);
  if (std::abs(alpha - 1.0) < default_config().tol.alpha_near_one) return relative_entropy(d);
  if (alpha >= 0.5) return sandwiched_value(d, alpha);
  if (alpha < 0 && !d.rho.full_rank(default_config().tol.full_rank))
    throw std::domain_error("minimal_renyi: alpha < 0 requires full-rank rho");
  return reverse_sandwiched_value(d, alpha);
}

PinchedEstimate pinched_renyi(const Dichotomy& d, double alpha, PinchSide side, int n_max,
                              const RunConfig& cfg) {
  if (n_max < 1) throw std::invalid_argument("pinched_renyi: n_max must be >= 1");
  if (auto cp = commuting_classical_pair(d, cfg.tol.commute)) {
    return {classical_renyi(cp->p, cp->q, alpha), true, 0, {}};
  }
  const bool closed_left = (side == PinchSide::Left) && alpha >= 0.0 && std::abs(alpha) > 1e-12;
  const bool closed_right = (side == PinchSide::Right) && alpha <= 1.0;
  if (std::abs(alpha - 1.0) < cfg.tol.alpha_near_one) {
    if (side == PinchSide::Left) return {relative_entropy(d), true, 0, {}};
    return {dstar(d), true, 0, {}};
  }
  if (alpha == kInf && side == PinchSide::Left) return {max_divergence(d), true, 0, {}};
  if (alpha == -kInf && side == PinchSide::Right) return {min_divergence(d), true, 0, {}};
  if (closed_left) return {sandwiched_value(d, alpha), true, 0, {}};
  if (closed_right) {
    if (alpha == -kInf) return {min_divergence(d), true, 0, {}};
    if (alpha < 0 && !d.rho.full_rank(cfg.tol.full_rank))
      throw std::domain_error("pinched_renyi: alpha < 0 requires full-rank rho");
    return {reverse_sandwiched_value(d, alpha), true, 0, {}};
  }
  // finite-n lower estimate of the superadditive limit
  PinchedEstimate est;
  est.is_closed_form = false;
  for (int n = 1; n <= n_max; ++n) est.history.push_back(pinched_renyi_finite_n(d, alpha, side, n));
  est.n_used = n_max;
  est.value = est.history.back();
  return est;
}

double pinched_renyi_finite_n(const Dichotomy& d, double alpha, PinchSide side, int n) {
  const int dim = d.dim();
  double dn = 1;
  for (int k = 0; k < n; ++k) {
    dn *= dim;
    if (dn > 4096) throw std::invalid_argument("pinched_renyi: d^n exceeds 4096, reduce n_max");
  }
  const DensityOperator& basis = (side == PinchSide::Left) ? d.sigma : d.rho;
  const DensityOperator& oper = (side == PinchSide::Left) ? d.rho : d.sigma;
  const EigenDecomposition& be = basis.eigen();
  CMatrix ot = be.to_eigenbasis(oper.matrix());

  const int total = static_cast<int>(dn);
  // log eigenvalue of basis^{(x)n} for each string
  std::vector<double> logw(total);
  std::vector<int> digits(n);
  for (int s = 0; s < total; ++s) {
    int v = s;
    double lw = 0;
    for (int k = 0; k < n; ++k) {
      digits[k] = v % dim;
      v /= dim;
      lw += (be.values[digits[k]] > 0) ? std::log(be.values[digits[k]]) : -kInf;
    }
    logw[s] = lw;
  }
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return logw[a] > logw[b]; });

  std::vector<double> p, q;
  size_t pos = 0;
  while (pos < order.size()) {
    size_t end = pos + 1;
    while (end < order.size() &&
           std::abs(logw[order[end]] - logw[order[pos]]) <= 1e-9 * std::max(1.0, std::abs(logw[order[pos]])))
      ++end;
    const int m = static_cast<int>(end - pos);
    if (m > 1500)
      throw std::invalid_argument("pinched_renyi: degenerate block too large, reduce n_max");
    // block of oper^{(x)n} restricted to the strings of this eigenspace
    CMatrix block(m, m);
    std::vector<std::vector<int>> digs(m, std::vector<int>(n));
    for (int i = 0; i < m; ++i) {
      int v = order[pos + i];
      for (int k = 0; k < n; ++k) {
        digs[i][k] = v % dim;
        v /= dim;
      }
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cplx prod = 1.0;
        for (int k = 0; k < n; ++k) prod *= ot(digs[i][k], digs[j][k]);
        block(i, j) = prod;
      }
    const double mu = std::exp(logw[order[pos]]);
    if (m == 1) {
      p.push_back(std::max(block(0, 0).real(), 0.0));
      q.push_back(mu);
    } else {
      EigenDecomposition bev = eigh(block.hermitized());
      for (double lam : bev.values) {
        p.push_back(std::max(lam, 0.0));
        q.push_back(mu);
      }
    }
    pos = end;
  }

  if (side == PinchSide::Left) {
    // D_alpha(pinched rho^n || sigma^n) / n
    return classical_renyi(p, q, alpha) / n;
  }
  // Right: D_alpha(rho^n || pinched sigma^n) / n; here p holds the pinched
  // sigma eigenvalues and q the rho^n eigenvalues, so swap the roles.
  return classical_renyi(q, p, alpha) / n;
}

double dstar(const Dichotomy& d) {
  if (auto cp = commuting_classical_pair(d)) return classical_relative_entropy(cp->p, cp->q);
  const double h0 = 1e-2;
  const double v1 = reverse_sandwiched_value(d, 1.0 - h0);
  const double v2 = reverse_sandwiched_value(d, 1.0 - h0 / 2.0);
  const double v3 = reverse_sandwiched_value(d, 1.0 - h0 / 4.0);
  const double r1 = 2.0 * v2 - v1;  // kill the O(h) term
  const double r2 = 2.0 * v3 - v2;
  return (4.0 * r2 - r1) / 3.0;  // kill the O(h^2) term
}

}  // namespace dich
