#include "dich/typeclass.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace dich {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_multinomial(int n, const std::vector<int>& k) {
  double s = std::lgamma(n + 1.0);
  for (int ki : k) s -= std::lgamma(ki + 1.0);
  return s;
}

void check_probability_vector(const std::vector<double>& p) {
  if (p.empty()) throw std::invalid_argument("type class: empty probability vector");
  double s = 0;
  for (double x : p) {
    if (x < -1e-12) throw std::invalid_argument("type class: negative probability");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-8)
    throw std::invalid_argument("type class: probabilities sum to " + std::to_string(s));
}

template <typename F>
void for_each_composition(int n, int d, F&& f) {
  std::vector<int> k(d, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == d - 1) {
      k[pos] = remaining;
      f(k);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, n);
}

}  // namespace

double TypeClassSpectrum::total_mass() const {
  double s = 0;
  for (size_t i = 0; i < log_value.size(); ++i) {
    const double lm = log_value[i] + log_mult[i];
    if (lm > kNegInf) s += std::exp(lm);
  }
  return s;
}

std::int64_t type_class_count(int alphabet, int n) {
  // C(n + d - 1, d - 1), saturating
  long double c = 1;
  for (int i = 1; i <= alphabet - 1; ++i) c *= static_cast<long double>(n + i) / i;
  if (c > 1e18) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(c + 0.5);
}

TypeClassSpectrum tensor_power_commuting(const std::vector<double>& p, int n,
                                         std::int64_t max_classes) {
  check_probability_vector(p);
  if (n < 1) throw std::invalid_argument("type class: n must be >= 1");
  const int d = static_cast<int>(p.size());
  if (type_class_count(d, n) > max_classes)
    throw std::invalid_argument("type class: class count exceeds budget, reduce n");
  std::vector<double> logp(d);
  for (int i = 0; i < d; ++i) logp[i] = p[i] > 0 ? std::log(p[i]) : kNegInf;

  TypeClassSpectrum out;
  for_each_composition(n, d, [&](const std::vector<int>& k) {
    double lv = 0;
    for (int i = 0; i < d; ++i) {
      if (k[i] == 0) continue;
      if (logp[i] == kNegInf) {
        lv = kNegInf;
        break;
      }
      lv += k[i] * logp[i];
    }
    out.log_value.push_back(lv);
    out.log_mult.push_back(log_multinomial(n, k));
  });
  return out;
}

std::vector<TypeClass> tensor_power_pair(const std::vector<double>& p,
                                         const std::vector<double>& q, int n,
                                         std::int64_t max_classes) {
  check_probability_vector(p);
  check_probability_vector(q);
  if (p.size() != q.size()) throw std::invalid_argument("type class: length mismatch");
  for (double x : q)
    if (x <= 0) throw std::invalid_argument("type class: q must have full support");
  if (n < 1) throw std::invalid_argument("type class: n must be >= 1");
  const int d = static_cast<int>(p.size());
  if (type_class_count(d, n) > max_classes)
    throw std::invalid_argument("type class: class count exceeds budget, reduce n");

  std::vector<double> logp(d), logq(d);
  for (int i = 0; i < d; ++i) {
    logp[i] = p[i] > 0 ? std::log(p[i]) : kNegInf;
    logq[i] = std::log(q[i]);
  }
  std::vector<TypeClass> out;
  for_each_composition(n, d, [&](const std::vector<int>& k) {
    TypeClass tc;
    tc.log_mult = log_multinomial(n, k);
    tc.log_p = 0;
    tc.log_q = 0;
    for (int i = 0; i < d; ++i) {
      if (k[i] == 0) continue;
      tc.log_p = (logp[i] == kNegInf) ? kNegInf : tc.log_p + k[i] * logp[i];
      tc.log_q += k[i] * logq[i];
    }
    out.push_back(tc);
  });
  return out;
}

}  // namespace dich
