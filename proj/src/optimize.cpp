#include "dich/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dich {

ScalarMin golden_min(const std::function<double(double)>& f, double a, double b, int iters) {
  constexpr double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  ScalarMin best{xm, fm};
  if (fc < best.value) best = {c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

ScalarMin grid_min(const std::function<double(double)>& f, const std::vector<double>& grid,
                   int golden_iters) {
  if (grid.empty()) throw std::invalid_argument("grid_min: empty grid");
  size_t ibest = 0;
  double fbest = f(grid[0]);
  std::vector<double> vals(grid.size());
  vals[0] = fbest;
  for (size_t i = 1; i < grid.size(); ++i) {
    vals[i] = f(grid[i]);
    if (vals[i] < fbest) {
      fbest = vals[i];
      ibest = i;
    }
  }
  ScalarMin best{grid[ibest], fbest};
  if (grid.size() >= 2) {
    const double a = grid[ibest > 0 ? ibest - 1 : 0];
    const double b = grid[std::min(ibest + 1, grid.size() - 1)];
    if (b > a) {
      ScalarMin refined = golden_min(f, a, b, golden_iters);
      if (refined.value < best.value) best = refined;
    }
  }
  return best;
}

ScalarMin grid_max(const std::function<double(double)>& f, const std::vector<double>& grid,
                   int golden_iters) {
  ScalarMin m = grid_min([&](double x) { return -f(x); }, grid, golden_iters);
  return {m.x, -m.value};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
  return v;
}

std::vector<double> saddle_grid(int n) {
  std::vector<double> v = linspace(1e-7, 1.0 - 1e-7, n);
  for (int k = 2; k <= 7; ++k) {
    const double e = std::pow(10.0, -k);
    v.push_back(e);
    v.push_back(1.0 - e);
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> tanh_grid(double limit, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = -3.0 + 6.0 * i / (n - 1.0);
    v[i] = limit * std::tanh(t);
  }
  return v;
}

}  // namespace dich
