#include "dich/hypotest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dich/classical.hpp"
#include "dich/gaussian.hpp"
#include "dich/optimize.hpp"

namespace dich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(exp(a) - exp(b)) for a >= b
double log_sub_exp(double a, double b) {
  if (b == -kInf) return a;
  if (a < b) {
    if (a < b + 1e-12) return -kInf;  // rounding-level negative difference
    throw std::domain_error("log_sub_exp: negative difference");
  }
  if (a == b) return -kInf;
  return a + log1m_exp(b - a);
}

std::vector<TypeClass> single_letter_classes(const std::vector<double>& p,
                                             const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("classical_beta: length mismatch");
  std::vector<TypeClass> c(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 0) throw std::invalid_argument("classical_beta: q must have full support");
    c[i].log_mult = 0.0;
    c[i].log_p = p[i] > 0 ? std::log(p[i]) : -kInf;
    c[i].log_q = std::log(q[i]);
  }
  return c;
}

}  // namespace

LogNP classical_np(const std::vector<TypeClass>& classes, double type1_logit) {
  const size_t n = classes.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = classes[a].llr(), lb = classes[b].llr();
    if (la != lb) return la > lb;
    return a < b;
  });

  // prefix q-mass (log) and suffix p-mass (log)
  std::vector<double> prefix_q(n + 1, -kInf), suffix_p(n + 1, -kInf), suffix_q(n + 1, -kInf);
  for (size_t k = 0; k < n; ++k)
    prefix_q[k + 1] = log_add_exp(prefix_q[k], classes[order[k]].log_mass_q());
  for (size_t k = n; k-- > 0;) {
    suffix_p[k] = log_add_exp(suffix_p[k + 1], classes[order[k]].log_mass_p());
    suffix_q[k] = log_add_exp(suffix_q[k + 1], classes[order[k]].log_mass_q());
  }

  // target type-I error a: log a and log(1-a) from the logit
  const double log_a = -log_add_exp(0.0, -type1_logit);
  // find boundary class k*: suffix_p[k*+1] < a <= suffix_p[k*]
  size_t k = 0;
  while (k < n && suffix_p[k + 1] >= log_a) ++k;
  if (k == n) {
    // a below the total p-mass deficit: accept everything with p-mass
    // (only reachable when p is sub-normalised; with proper inputs k < n).
    k = n - 1;
  }
  // excluded extra mass on the boundary class: a - suffix_p[k+1]
  const double log_extra = log_sub_exp(log_a, suffix_p[k + 1]);
  const double llr_k = classes[order[k]].llr();
  LogNP out;
  // (1-theta) q_k = extra * q_k / p_k = extra * exp(-llr_k)
  const double log_1mtheta_q = log_extra - llr_k;
  // theta q_k = q_k - extra exp(-llr_k)
  const double log_qk = classes[order[k]].log_mass_q();
  double log_theta_q;
  if (log_1mtheta_q >= log_qk) {
    log_theta_q = -kInf;  // boundary class fully excluded up to rounding
  } else {
    log_theta_q = log_sub_exp(log_qk, log_1mtheta_q);
  }
  out.log_beta = log_add_exp(prefix_q[k], log_theta_q);
  out.log_one_minus_beta = log_add_exp(suffix_q[k + 1], log_1mtheta_q);
  return out;
}

double classical_beta(const std::vector<double>& p, const std::vector<double>& q, double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("classical_beta: x must be in [0,1]");
  if (x == 1.0) return 0.0;
  auto classes = single_letter_classes(p, q);
  if (x == 0.0) {
    // accept exactly the support of p
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0) s += q[i];
    return s;
  }
  LogNP np = classical_np(classes, logit(x));
  return std::exp(np.log_beta);
}

double classical_beta(const std::vector<TypeClass>& classes, double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("classical_beta: x must be in [0,1]");
  if (x == 1.0) return 0.0;
  if (x == 0.0) {
    double s = 0;
    for (const auto& tc : classes)
      if (tc.log_p > -kInf) s += std::exp(tc.log_mass_q());
    return s;
  }
  return std::exp(classical_np(classes, logit(x)).log_beta);
}

TradeoffCurve classical_curve(const std::vector<double>& p, const std::vector<double>& q) {
  auto classes = single_letter_classes(p, q);
  std::vector<int> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return classes[a].llr() > classes[b].llr(); });
  TradeoffCurve c;
  c.exact = true;
  double cum_p = 0, cum_q = 0;
  c.points.push_back({1.0, 0.0, 0.0});
  for (size_t k = 0; k < order.size(); ++k) {
    const auto& tc = classes[order[k]];
    cum_p += std::exp(tc.log_mass_p());
    cum_q += std::exp(tc.log_mass_q());
    c.points.push_back({std::max(1.0 - cum_p, 0.0), cum_q, std::exp(tc.llr())});
  }
  std::sort(c.points.begin(), c.points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  return c;
}

double TradeoffCurve::upper(double x) const {
  if (points.empty()) throw std::logic_error("empty curve");
  if (x <= points.front().x) return points.front().beta;
  if (x >= points.back().x) return points.back().beta;
  auto it = std::lower_bound(points.begin(), points.end(), x,
                             [](const CurvePoint& p, double v) { return p.x < v; });
  const CurvePoint& hi = *it;
  const CurvePoint& lo = *(it - 1);
  if (hi.x == lo.x) return std::min(hi.beta, lo.beta);
  const double w = (x - lo.x) / (hi.x - lo.x);
  return lo.beta + w * (hi.beta - lo.beta);
}

double TradeoffCurve::lower(double x) const {
  if (exact) return upper(x);
  double best = 0.0;  // beta >= 0 always
  for (const auto& pt : points) {
    // Lagrangian tangent at the achieved test Q_t: slope is -1/t
    // (the boundary likelihood ratio trades type-I for type-II at rate 1/t).
    if (pt.t <= 0) continue;
    const double tangent = pt.beta - (x - pt.x) / pt.t;
    best = std::max(best, tangent);
  }
  return std::min(best, 1.0);
}

namespace {

CurvePoint np_test_point(const Dichotomy& d, double t) {
  EigenDecomposition e = eigh(d.rho.matrix() - cplx(t) * d.sigma.matrix());
  // projector onto strictly positive eigenvalues
  const int n = e.dim();
  double a = 0, b = 0;
  for (int k = 0; k < n; ++k) {
    if (e.values[k] <= 0) continue;
    // <w_k| rho |w_k> and <w_k| sigma |w_k>
    cplx ar = 0, br = 0;
    for (int i = 0; i < n; ++i) {
      cplx rowr = 0, rows = 0;
      for (int j = 0; j < n; ++j) {
        rowr += d.rho.matrix()(i, j) * e.vectors(j, k);
        rows += d.sigma.matrix()(i, j) * e.vectors(j, k);
      }
      ar += std::conj(e.vectors(i, k)) * rowr;
      br += std::conj(e.vectors(i, k)) * rows;
    }
    a += ar.real();
    b += br.real();
  }
  return {std::clamp(1.0 - a, 0.0, 1.0), std::clamp(b, 0.0, 1.0), t};
}

void insert_sorted(TradeoffCurve& c, const CurvePoint& p) {
  auto it = std::lower_bound(c.points.begin(), c.points.end(), p,
                             [](const CurvePoint& a, const CurvePoint& b) { return a.x < b.x; });
  // coincident achieved points are only redundant if they also carry the
  // same tangent slope; the exact-threshold sample owns the exact slope
  if (it != c.points.end() && std::abs(it->x - p.x) < 1e-15 &&
      std::abs(it->beta - p.beta) < 1e-15 &&
      std::abs(it->t - p.t) <= 1e-13 * std::max(1.0, std::abs(p.t)))
    return;
  c.points.insert(it, p);
}

std::vector<double> generalized_eigenvalues(const Dichotomy& d) {
  CMatrix isq = mat_pow(d.sigma.eigen(), -0.5);
  EigenDecomposition e = eigh(isq * d.rho.matrix() * isq);
  std::vector<double> g;
  for (double v : e.values) g.push_back(std::max(v, 0.0));
  std::sort(g.begin(), g.end());
  return g;
}

TradeoffCurve quantum_sweep(const Dichotomy& d, int extra_samples) {
  std::vector<double> gens = generalized_eigenvalues(d);
  std::set<double> ts;
  ts.insert(0.0);
  for (double g : gens) {
    if (g <= 0) continue;
    ts.insert(g * (1.0 - 1e-9));
    ts.insert(g);
    ts.insert(g * (1.0 + 1e-9));
  }
  // log-uniform filler between consecutive distinct positive gens
  std::vector<double> pos;
  for (double g : gens)
    if (g > 0) pos.push_back(g);
  if (!pos.empty()) {
    const int fill = std::max(extra_samples / std::max<int>(1, static_cast<int>(pos.size())), 2);
    for (size_t i = 0; i + 1 < pos.size(); ++i) {
      if (pos[i + 1] <= pos[i] * (1 + 1e-12)) continue;
      for (int k = 1; k < fill; ++k) {
        const double f = static_cast<double>(k) / fill;
        ts.insert(pos[i] * std::pow(pos[i + 1] / pos[i], f));
      }
    }
    ts.insert(pos.back() * 2.0);
    ts.insert(pos.front() * 0.5);
  }
  TradeoffCurve c;
  c.exact = false;
  for (double t : ts) insert_sorted(c, np_test_point(d, t));
  insert_sorted(c, {1.0, 0.0, ts.empty() ? 1.0 : *ts.rbegin() * 4.0});
  return c;
}

}  // namespace

TradeoffCurve quantum_curve(const Dichotomy& d, int extra_samples) {
  return quantum_sweep(d, extra_samples);
}

Bracket quantum_beta(const Dichotomy& d, double x, double tol, int max_refine) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("quantum_beta: x must be in [0,1]");
  if (x == 1.0) return {0.0, 0.0, true};
  TradeoffCurve c = quantum_sweep(d, 64);
  auto bracket_at = [&]() -> Bracket {
    const double up = c.upper(x);
    const double lo = std::min(c.lower(x), up);
    return {lo, up, (up - lo) <= tol};
  };
  Bracket b = bracket_at();
  int iter = 0;
  while (!b.converged && iter++ < max_refine) {
    // bisect the t-interval of the chord bracketing x
    auto it = std::lower_bound(c.points.begin(), c.points.end(), x,
                               [](const CurvePoint& p, double v) { return p.x < v; });
    if (it == c.points.begin() || it == c.points.end()) break;
    const CurvePoint hi = *it;
    const CurvePoint lo = *(it - 1);
    double tm = 0.5 * (lo.t + hi.t);
    if (lo.t > 0 && hi.t > 0) tm = std::sqrt(lo.t * hi.t);
    if (tm <= std::min(lo.t, hi.t) * (1 + 1e-14) || tm >= std::max(lo.t, hi.t) * (1 - 1e-14)) {
      // threshold interval exhausted: the gap is a genuine kink handled by mixing
      break;
    }
    const size_t before = c.points.size();
    insert_sorted(c, np_test_point(d, tm));
    b = bracket_at();
    if (c.points.size() == before) break;  // no new information
  }
  b = bracket_at();
  return b;
}

Bracket pinched_beta(const Dichotomy& d, double x, Side side, double tol) {
  (void)tol;
  if (x < 0.0 || x > 1.0) throw std::domain_error("pinched_beta: x must be in [0,1]");
  if (side == Side::None) return quantum_beta(d, x);
  ClassicalPair cp = (side == Side::Left) ? pinched_classical_pair(d.rho, d.sigma)
                                          : pinched_classical_pair(d.sigma, d.rho);
  double v;
  if (side == Side::Left) {
    v = classical_beta(cp.p, cp.q, x);
  } else {
    // cp = (pinched sigma eigenvalues, rho eigenvalues); beta_x(rho || pinched sigma)
    v = classical_beta(cp.q, cp.p, x);
  }
  return {v, v, true};
}

Bracket gamma_logodds(const Dichotomy& d, double x_logodds, Side side, double tol) {
  if (std::isnan(x_logodds)) throw std::domain_error("gamma_logodds: x is NaN");
  // +-inf sentinels are legal: L[1] gives beta = 0, L[0] gives beta = 1
  const double x = std::isfinite(x_logodds) ? logit_inv(x_logodds) : (x_logodds > 0 ? 1.0 : 0.0);
  Bracket b = (side == Side::None) ? quantum_beta(d, x, tol) : pinched_beta(d, x, side, tol);
  auto to_logodds = [](double v) {
    if (v <= 0) return -kInf;
    if (v >= 1) return kInf;
    return logit(v);
  };
  return {to_logodds(b.lower), to_logodds(b.upper), b.converged};
}

double extreme_singleshot_beta(const Dichotomy& d, double x, Side side, ExtremeBranch branch) {
  // classical reduction of the relevant (possibly pinched) pair
  std::vector<double> p, q;
  if (side == Side::Left) {
    ClassicalPair cp = pinched_classical_pair(d.rho, d.sigma);
    p = cp.p;
    q = cp.q;
  } else if (side == Side::Right) {
    ClassicalPair cp = pinched_classical_pair(d.sigma, d.rho);
    p = cp.q;
    q = cp.p;
  }
  double lmin, dinf, dminf;
  if (side == Side::None) {
    lmin = d.rho.lambda_min();
    dinf = minimal_renyi(d, kInf);
    dminf = (branch == ExtremeBranch::LowTypeI) ? minimal_renyi(d, -kInf) : 0.0;
  } else {
    lmin = *std::min_element(p.begin(), p.end());
    dinf = classical_renyi(p, q, kInf);
    dminf = (branch == ExtremeBranch::LowTypeI) ? classical_renyi(p, q, -kInf) : 0.0;
  }
  if (x < 0 || x > lmin + 1e-12)
    throw std::domain_error("extreme_singleshot_beta: requires x <= lambda_min of the null (" +
                            std::to_string(lmin) + ")");
  if (branch == ExtremeBranch::HighTypeI) return x * std::exp(-dinf);
  return 1.0 - x * std::exp(-dminf);
}

namespace {

Family side_family_tail(Side side) {
  switch (side) {
    case Side::None:
      return Family::Minimal;
    case Side::Left:
      return Family::LeftPinched;
    case Side::Right:
      return Family::RightPinched;
  }
  return Family::Minimal;
}

Family side_family_middle(Side side) {
  switch (side) {
    case Side::None:
      return Family::Petz;
    case Side::Left:
      return Family::LeftPinched;
    case Side::Right:
      return Family::RightPinched;
  }
  return Family::Petz;
}

double gamma_core(const DichotomyProfile& prof, double lambda, Side side, Family tail_family,
                  Family middle_family, const RunConfig& cfg) {
  const double edge_tol = cfg.tol.branch_edge;
  const double boundary =
      (side == Side::Left) ? -prof.reverse_dstar() : -prof.reverse_relative_entropy();
  const double d_fwd = (side == Side::Right) ? prof.forward_dstar() : prof.relative_entropy();

  if (std::abs(lambda) <= edge_tol) return -d_fwd;
  if (std::abs(lambda - boundary) <= edge_tol * std::max(1.0, std::abs(boundary))) return 0.0;

  const double log_lmin = prof.minus_log_lambda_min();
  if (lambda > log_lmin) return -lambda - prof.renyi(kInf, tail_family);
  if (lambda < -log_lmin) return -lambda - prof.renyi(-kInf, tail_family);

  std::vector<double> ugrid = saddle_grid(cfg.optimizer_grid);
  if (lambda > 0) {
    // sup_{t>1} -D_t + (t/(1-t)) lambda, t = 1/u
    auto obj = [&](double u) {
      const double t = 1.0 / u;
      return -prof.renyi(t, tail_family) + t / (1.0 - t) * lambda;
    };
    ScalarMin m = grid_max(obj, ugrid);
    // u -> 0 endpoint (t -> inf) limit: -D_inf - lambda
    const double limit = -prof.renyi(kInf, tail_family) - lambda;
    return std::max(m.value, limit);
  }
  if (lambda > boundary) {
    // inf_{0<t<1} -D_t - (t/(1-t)) lambda
    auto obj = [&](double t) {
      return -prof.renyi(t, middle_family) - t / (1.0 - t) * lambda;
    };
    ScalarMin m = grid_min(obj, ugrid);
    return m.value;
  }
  // lambda < boundary: sup_{t<0} D_t + (t/(1-t)) lambda, t = -u/(1-u)
  auto obj = [&](double u) {
    const double t = -u / (1.0 - u);
    return prof.renyi(t, tail_family) + t / (1.0 - t) * lambda;
  };
  ScalarMin m = grid_max(obj, ugrid);
  // u -> 1 endpoint (t -> -inf): D_{-inf} - lambda... t/(1-t) -> -1
  double limit = -kInf;
  const double dminf = prof.renyi(-kInf, tail_family);
  if (std::isfinite(dminf)) limit = dminf - lambda;
  return std::max(m.value, limit);
}

}  // namespace

double gamma_asymptotic(const DichotomyProfile& prof, double lambda, Side side,
                        const RunConfig& cfg) {
  if (!std::isfinite(lambda)) throw std::domain_error("gamma_asymptotic: lambda must be finite");
  return gamma_core(prof, lambda, side, side_family_tail(side), side_family_middle(side), cfg);
}

double gamma_asymptotic(const Dichotomy& d, double lambda, Side side, const RunConfig& cfg) {
  QuantumProfile prof(d, cfg);
  return gamma_asymptotic(prof, lambda, side, cfg);
}

double gamma_check(const DichotomyProfile& prof, double lambda, const RunConfig& cfg) {
  if (!std::isfinite(lambda)) throw std::domain_error("gamma_check: lambda must be finite");
  return gamma_core(prof, lambda, Side::None, Family::Minimal, Family::Minimal, cfg);
}

double finite_n_gamma(const std::vector<double>& p, const std::vector<double>& q, int n,
                      double x_logodds_per_copy) {
  auto classes = tensor_power_pair(p, q, n);
  LogNP np = classical_np(classes, n * x_logodds_per_copy);
  return np.logit_beta() / n;
}

}  // namespace dich
