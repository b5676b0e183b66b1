#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "shadows/geometry.hpp"
#include "shadows/polytopes.hpp"

// Test-only oracles, kept independent of the library's computation paths.

namespace testsupport {

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  return eig;
}

/// Brute-force extreme-point test: p is a hull vertex iff it lies in no
/// triangle spanned by other points (generic position assumed).
inline bool point_in_triangle(const shadows::Point2& p, const shadows::Point2& a,
                              const shadows::Point2& b, const shadows::Point2& c) {
  const double d1 = shadows::cross(a, b, p);
  const double d2 = shadows::cross(b, c, p);
  const double d3 = shadows::cross(c, a, p);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

inline int brute_force_extreme_count(const std::vector<shadows::Point2>& pts) {
  int count = 0;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    bool inside = false;
    for (std::size_t a = 0; a < m && !inside; ++a)
      for (std::size_t b = a + 1; b < m && !inside; ++b)
        for (std::size_t c = b + 1; c < m && !inside; ++c) {
          if (a == i || b == i || c == i) continue;
          if (point_in_triangle(pts[i], pts[a], pts[b], pts[c])) inside = true;
        }
    if (!inside) ++count;
  }
  return count;
}

/// Simpson-based adaptive quadrature, deliberately different from the
/// library's Gauss panels.
template <typename F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace testsupport
