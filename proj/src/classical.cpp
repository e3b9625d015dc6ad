#include "dich/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dich/gaussian.hpp"

namespace dich {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log(x);
  return h;
}

double shannon_entropy_variance(const std::vector<double>& p) {
  const double h = shannon_entropy(p);
  double v = 0;
  for (double x : p)
    if (x > 0) v += x * std::pow(std::log(x) + h, 2);
  return v;
}

double renyi_entropy(const std::vector<double>& p, double alpha) {
  if (alpha == 1.0) return shannon_entropy(p);
  if (alpha == kInf) {
    double m = 0;
    for (double x : p) m = std::max(m, x);
    return -std::log(m);
  }
  if (alpha == -kInf) {
    double m = kInf;
    for (double x : p)
      if (x > 0) m = std::min(m, x);
    return -std::log(m);
  }
  if (alpha == 0.0) {
    int support = 0;
    for (double x : p)
      if (x > 0) ++support;
    return std::log(static_cast<double>(support));
  }
  // log-sum-exp over the support; alpha < 0 is restricted to the support too.
  double acc = -kInf;
  for (double x : p)
    if (x > 0) acc = log_add_exp(acc, alpha * std::log(x));
  return acc / (1.0 - alpha);
}

double classical_relative_entropy(const std::vector<double>& p, const std::vector<double>& q) {
  double d = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) return kInf;
    d += p[i] * std::log(p[i] / q[i]);
  }
  return d;
}

double classical_relative_entropy_variance(const std::vector<double>& p,
                                           const std::vector<double>& q) {
  const double d = classical_relative_entropy(p, q);
  double v = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    v += p[i] * std::pow(std::log(p[i] / q[i]) - d, 2);
  }
  return v;
}

double classical_renyi(const std::vector<double>& p, const std::vector<double>& q, double alpha) {
  if (p.size() != q.size()) throw std::invalid_argument("classical_renyi: length mismatch");
  for (double x : q)
    if (x <= 0) throw std::invalid_argument("classical_renyi: q must have full support");
  // the 1/(alpha-1) prefactor amplifies normalisation noise without bound
  if (std::abs(alpha - 1.0) < 1e-6 && std::isfinite(alpha))
    return classical_relative_entropy(p, q);
  if (alpha == kInf) {
    double m = -kInf;
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0) m = std::max(m, std::log(p[i] / q[i]));
    return m;
  }
  if (alpha == -kInf) {
    double m = kInf;
    bool full = true;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0)
        m = std::min(m, std::log(p[i] / q[i]));
      else
        full = false;
    }
    return full ? m : -kInf;
  }
  if (alpha == 0.0) {
    double s = 0;
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i] > 0) s += q[i];
    return -std::log(s);
  }
  if (alpha < 0) {
    for (double x : p)
      if (x <= 0) return -kInf;  // p^alpha diverges off-support; the divergence degenerates
  }
  double acc = -kInf;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;  // only reachable for alpha > 0
    acc = log_add_exp(acc, alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  }
  return acc / (alpha - 1.0);
}

double classical_renyi_cumulant(const std::vector<double>& p, const std::vector<double>& q,
                                double alpha) {
  return (alpha - 1.0) * classical_renyi(p, q, alpha);
}

}  // namespace dich
