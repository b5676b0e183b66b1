#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shadows {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; Newton iteration on P_n with the
/// Bonnet recurrence. Rules are cached per n.
inline const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi-style initial guess for the i-th root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  return pos->second;
}

/// Nodes and weights of the n-point rule mapped to [a, b].
inline void gauss_on(int n, double a, double b, std::vector<double>& nodes,
                     std::vector<double>& weights) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes[static_cast<std::size_t>(i)] = mid + half * rule.nodes[static_cast<std::size_t>(i)];
    weights[static_cast<std::size_t>(i)] = half * rule.weights[static_cast<std::size_t>(i)];
  }
}

template <typename F>
double gauss_integrate(F&& f, double a, double b, int n) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[static_cast<std::size_t>(i)] *
           f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
  return half * sum;
}

namespace detail {

template <typename F>
double adaptive_gauss_rec(F& f, double a, double b, double whole, double tol,
                          int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_integrate(f, a, mid, 15);
  const double right = gauss_integrate(f, mid, b, 15);
  if (depth <= 0 || std::abs(left + right - whole) <= tol)
    return left + right;
  return adaptive_gauss_rec(f, a, mid, left, 0.5 * tol, depth - 1) +
         adaptive_gauss_rec(f, mid, b, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss quadrature by panel bisection; absolute tolerance.
template <typename F>
double adaptive_gauss(F&& f, double a, double b, double abs_tol,
                      int max_depth = 48) {
  const double whole = gauss_integrate(f, a, b, 15);
  return detail::adaptive_gauss_rec(f, a, b, whole, abs_tol, max_depth);
}

/// Composite Gauss rule: `panels` equal panels of `n_per_panel` points.
template <typename F>
double composite_gauss(F&& f, double a, double b, int panels, int n_per_panel) {
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i)
    sum += gauss_integrate(f, a + i * h, a + (i + 1) * h, n_per_panel);
  return sum;
}

}  // namespace shadows
