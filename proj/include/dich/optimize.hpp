#pragma once

#include <functional>
#include <vector>

namespace dich {

struct ScalarMin {
  double x;
  double value;
};

/// Golden-section search on [a, b]; assumes a bracketed minimum.
ScalarMin golden_min(const std::function<double(double)>& f, double a, double b,
                     int iters = 120);

/// Evaluate f on the grid, then golden-refine around the best sample.
/// Returns the overall best (grid or refined).
ScalarMin grid_min(const std::function<double(double)>& f, const std::vector<double>& grid,
                   int golden_iters = 120);
ScalarMin grid_max(const std::function<double(double)>& f, const std::vector<double>& grid,
                   int golden_iters = 120);

std::vector<double> linspace(double a, double b, int n);
/// n tanh-spaced points on (-limit, limit): dense near 0, pushed to the edges.
std::vector<double> tanh_grid(double limit, int n);
/// Seed grid on (0,1) for compactified saddle searches: uniform interior plus
/// geometric clusters at both endpoints (optima often sit at 1 - 10^-k).
std::vector<double> saddle_grid(int n);

}  // namespace dich
