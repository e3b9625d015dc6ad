#include "dich/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dich/classical.hpp"
#include "dich/gaussian.hpp"
#include "dich/optimize.hpp"

namespace dich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kVarZero = 1e-14;

double g_slope(double t) { return t / (1.0 - t); }
double h_slope(double t) { return t / (t - 1.0); }

}  // namespace

SchmidtVector::SchmidtVector(std::vector<double> p) : probs(std::move(p)) {
  double s = 0;
  for (double x : probs) {
    if (x < -1e-12) throw std::invalid_argument("schmidt vector: negative entry");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-8)
    throw std::invalid_argument("schmidt vector: entries sum to " + std::to_string(s));
  std::sort(probs.begin(), probs.end(), std::greater<double>());
}

double locc_r_function(const SchmidtVector& p1, const SchmidtVector& p2, double mu,
                       const RunConfig& cfg) {
  const auto& p = p1.probs;
  const auto& q = p2.probs;
  // D(f||p) = log d - (1/d) sum log(1/p_i); infinite when p has zeros
  double dfp = kInf;
  if (std::all_of(p.begin(), p.end(), [](double x) { return x > 0; })) {
    const double d = static_cast<double>(p.size());
    double s = 0;
    for (double x : p) s += std::log((1.0 / d) / x) / d;
    dfp = s;
  }
  const std::vector<double> ug = saddle_grid(cfg.optimizer_grid);
  if (mu <= -dfp) {
    // Deep type-I log odds: both trade-off curves saturate and the support
    // masses dominate, leaving R H_0(q) <= H_0(p). (The equal-dimension
    // full-support case collapses to the familiar constant 1.)
    return renyi_entropy(p, 0.0) / renyi_entropy(q, 0.0);
  }
  if (mu <= 0) {
    // sup_{0<t2<1} inf_{0<t1<1} [H_{t1}(p) + (g(t2) - g(t1)) mu] / H_{t2}(q)
    auto inner = [&](double t1) { return renyi_entropy(p, t1) - g_slope(t1) * mu; };
    const double c = grid_min(inner, ug).value;
    auto outer = [&](double t2) {
      const double den = renyi_entropy(q, t2);
      if (den <= 0) return -kInf;
      return (c + g_slope(t2) * mu) / den;
    };
    return grid_max(outer, ug).value;
  }
  // mu > 0: inf_{t2>1} sup_{t1>1} [H_{t1}(p) + (h(t1) - h(t2)) mu] / H_{t2}(q)
  // (signs follow from t/(1-t) = -t/(t-1) on t > 1)
  auto inner = [&](double u1) {
    const double t1 = 1.0 / u1;
    return renyi_entropy(p, t1) + h_slope(t1) * mu;
  };
  double c = grid_max(inner, ug).value;
  c = std::max(c, renyi_entropy(p, kInf) + mu);  // t1 -> inf
  auto outer = [&](double u2) {
    const double t2 = 1.0 / u2;
    const double den = renyi_entropy(q, t2);
    if (den <= 0) return kInf;
    return (c - h_slope(t2) * mu) / den;
  };
  double val = grid_min(outer, ug).value;
  const double hinf = renyi_entropy(q, kInf);
  if (hinf > 0) val = std::min(val, (c - mu) / hinf);
  return val;
}

RateResult locc_rate(const SchmidtVector& p1, const SchmidtVector& p2, Regime regime, double eps,
                     double lambda, double a, const RunConfig& cfg) {
  const auto& p = p1.probs;
  const auto& q = p2.probs;
  const double h1 = shannon_entropy(p);
  const double v1 = shannon_entropy_variance(p);
  const double h2 = shannon_entropy(q);
  const double v2 = shannon_entropy_variance(q);
  RateResult r;
  r.regime = regime;
  r.bound_kind = BoundKind::TwoSidedTight;  // everything here is classical
  if (h2 <= 0) {
    r.infinite = true;
    r.value = kInf;
    r.notes.push_back("product target carries no entanglement: unbounded rate");
    return r;
  }
  switch (regime) {
    case Regime::FirstOrder:
      r.value = h1 / h2;
      return r;
    case Regime::Small: {
      if (!(eps > 0 && eps < 1)) throw std::domain_error("locc_rate: eps not in (0,1)");
      r.value = h1 / h2;
      if (v1 <= kVarZero && v2 <= kVarZero) {
        r.second_order = 0.0;  // e.g. Bell -> Bell: the rate is exact
        r.notes.push_back("both entropy variances vanish: exact rate");
      } else {
        r.second_order = small_deviation_second_order(h1, v1, h2, v2, eps);
      }
      return r;
    }
    case Regime::ModerateLow:
    case Regime::ModerateHigh: {
      if (!(lambda > 0) || !(a > 0 && a < 1))
        throw std::domain_error("locc_rate: moderate regime needs lambda > 0, a in (0,1)");
      r.value = h1 / h2;
      r.second_order =
          moderate_deviation_coefficient(h1, v1, h2, v2, lambda, regime == Regime::ModerateHigh);
      return r;
    }
    case Regime::LargeHigh: {
      if (!(lambda > 0)) throw std::domain_error("locc_rate: lambda must be > 0");
      const std::vector<double> ug = saddle_grid(cfg.optimizer_grid);
      // inf over s in (0,1), t > 1 of [H_s(p) + (s/(1-s) + t/(t-1)) lambda] / H_t(q)
      auto inner = [&](double s) { return renyi_entropy(p, s) + g_slope(s) * lambda; };
      const double n1 = grid_min(inner, ug).value;
      auto outer = [&](double u) {
        const double t = 1.0 / u;
        const double den = renyi_entropy(q, t);
        if (den <= 0) return kInf;
        return (n1 + h_slope(t) * lambda) / den;
      };
      double val = grid_min(outer, ug).value;
      const double hinf = renyi_entropy(q, kInf);
      if (hinf > 0) val = std::min(val, (n1 + lambda) / hinf);
      r.value = val;
      return r;
    }
    case Regime::LargeLow: {
      if (!(lambda > 0)) throw std::domain_error("locc_rate: lambda must be > 0");
      std::vector<double> mus = linspace(-lambda, lambda, cfg.mu_grid);
      auto f = [&](double mu) { return locc_r_function(p1, p2, mu, cfg); };
      double best = kInf;
      size_t ib = 0;
      for (size_t i = 0; i < mus.size(); ++i) {
        const double v = f(mus[i]);
        if (v < best) {
          best = v;
          ib = i;
        }
      }
      const double lo = mus[ib > 0 ? ib - 1 : 0];
      const double hi = mus[std::min(ib + 1, mus.size() - 1)];
      if (hi > lo) best = std::min(best, golden_min(f, lo, hi, 80).value);
      r.value = best;
      r.lower_bound = r.upper_bound = best;
      r.bound_kind = BoundKind::TwoSidedTight;
      return r;
    }
    case Regime::ZeroError: {
      // min over alpha in [0, inf] of H_alpha(p)/H_alpha(q)
      auto ratio = [&](double alpha) {
        const double den = renyi_entropy(q, alpha);
        if (den <= 0) return kInf;
        return renyi_entropy(p, alpha) / den;
      };
      std::vector<double> alphas;
      for (double t : tanh_grid(8.0, cfg.alpha_grid))
        if (t >= 0) alphas.push_back(t);
      alphas.push_back(1.0);
      double best = ratio(kInf);
      double besta = kInf;
      for (double al : alphas) {
        const double v = ratio(al);
        if (v < best) {
          best = v;
          besta = al;
        }
      }
      if (std::isfinite(besta)) {
        ScalarMin m = golden_min(ratio, std::max(0.0, besta - 0.5), besta + 0.5, 80);
        best = std::min(best, m.value);
      }
      r.value = best;
      r.lower_bound = r.upper_bound = best;
      return r;
    }
    case Regime::ExtremeHigh:
      r.infinite = true;
      r.value = kInf;
      return r;
  }
  throw std::logic_error("unknown regime");
}

bool locc_feasible_finite(const SchmidtVector& p1, const SchmidtVector& p2, int n, int m,
                          double eps) {
  if (n < 1 || m < 1) throw std::invalid_argument("locc_feasible_finite: n, m must be >= 1");
  if (eps < 0 || eps >= 1) throw std::invalid_argument("locc_feasible_finite: eps in [0,1)");
  const int d1 = p1.local_dim();
  const int d2 = p2.local_dim();
  // Condition: d2^m beta_x(p2^m || f2^m) <= d1^n beta_{x-eps}(p1^n || f1^n)
  // for all x in (eps, 1). Note d^k beta_x(p^k || f^k) = beta_x(p^k || 1),
  // so the dimension factors ride along as additive log offsets.
  const std::vector<double> f1(d1, 1.0 / d1), f2(d2, 1.0 / d2);
  auto classes1 = tensor_power_pair(p1.probs, f1, n);
  auto classes2 = tensor_power_pair(p2.probs, f2, m);
  const double off1 = n * std::log(static_cast<double>(d1));
  const double off2 = m * std::log(static_cast<double>(d2));

  // breakpoints of each curve in log domain
  struct Curve {
    std::vector<double> lx, l1mx, lbeta;
  };
  auto build = [](std::vector<TypeClass>& cls) {
    std::vector<int> order(cls.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cls[a].llr() > cls[b].llr(); });
    Curve c;
    const size_t mm = order.size();
    std::vector<double> pp(mm + 1, -kInf), pq(mm + 1, -kInf), sp(mm + 1, -kInf);
    for (size_t k = 0; k < mm; ++k) {
      pp[k + 1] = log_add_exp(pp[k], cls[order[k]].log_mass_p());
      pq[k + 1] = log_add_exp(pq[k], cls[order[k]].log_mass_q());
    }
    for (size_t k = mm; k-- > 0;) sp[k] = log_add_exp(sp[k + 1], cls[order[k]].log_mass_p());
    for (size_t k = 0; k <= mm; ++k) {
      c.lx.push_back(sp[k]);
      c.l1mx.push_back(pp[k]);
      c.lbeta.push_back(pq[k]);
    }
    return c;
  };
  Curve c1 = build(classes1);
  Curve c2 = build(classes2);
  const double log_eps = eps > 0 ? std::log(eps) : -kInf;
  const double slack = 1e-11;

  auto ok_at = [&](double lx, double l1mx) -> bool {
    if (!(lx > log_eps) || l1mx == -kInf || lx >= 0.0) return true;
    double lx1, l1mx1;  // x - eps for the target-side curve (p1)
    if (log_eps == -kInf) {
      lx1 = lx;
      l1mx1 = l1mx;
    } else {
      lx1 = lx + log1m_exp(log_eps - lx);
      l1mx1 = log_add_exp(l1mx, log_eps);
    }
    const double lhs = off2 + classical_np(classes2, lx - l1mx).log_beta;
    const double rhs = off1 + classical_np(classes1, lx1 - l1mx1).log_beta;
    return lhs <= rhs + slack;
  };

  for (size_t k = 0; k < c2.lx.size(); ++k)
    if (!ok_at(c2.lx[k], c2.l1mx[k])) return false;
  for (size_t k = 0; k < c1.lx.size(); ++k) {
    // shift the p1-curve breakpoints by +eps into x-space
    double lx, l1mx;
    if (log_eps == -kInf) {
      lx = c1.lx[k];
      l1mx = c1.l1mx[k];
    } else {
      lx = log_add_exp(c1.lx[k], log_eps);
      if (c1.l1mx[k] <= log_eps) continue;
      l1mx = c1.l1mx[k] + log1m_exp(log_eps - c1.l1mx[k]);
    }
    if (!ok_at(lx, l1mx)) return false;
  }
  return true;
}

}  // namespace dich
