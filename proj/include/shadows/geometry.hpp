#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace shadows {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Convex polygon, counter-clockwise, no three consecutive vertices
/// collinear within the hull tolerance.
struct Polygon {
  std::vector<Point2> vertices;
};

inline double area(const Polygon& p) {
  double twice = 0.0;
  const auto& v = p.vertices;
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % m];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

inline double perimeter(const Polygon& p) {
  double sum = 0.0;
  const auto& v = p.vertices;
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % m];
    sum += std::hypot(b.x - a.x, b.y - a.y);
  }
  return sum;
}

/// Shoelace area of the polygon pts[idx[0]], ..., pts[idx[k-1]].
inline double area_indexed(const Point2* pts, const int* idx, int k) {
  double twice = 0.0;
  for (int i = 0; i < k; ++i) {
    const Point2& a = pts[idx[i]];
    const Point2& b = pts[idx[(i + 1) % k]];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

inline double perimeter_indexed(const Point2* pts, const int* idx, int k) {
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const Point2& a = pts[idx[i]];
    const Point2& b = pts[idx[(i + 1) % k]];
    sum += std::hypot(b.x - a.x, b.y - a.y);
  }
  return sum;
}

namespace detail {

// Relative tolerances, scaled by the input's coordinate magnitude. A cross
// product below kCollinearEps * scale^2 collapses the middle point so that
// hull vertex counts match the almost-sure counts of generic projections.
inline constexpr double kCollinearEps = 1e-12;
inline constexpr double kDuplicateEps = 1e-12;

inline constexpr int kMaxHullPoints = 32;

}  // namespace detail

/// Monotone-chain hull over at most kMaxHullPoints points, allocation-free.
/// Writes the CCW hull as indices into `pts` and returns the hull size, or
/// -1 when the input is degenerate (all points collinear or coincident).
inline int convex_hull_small(std::span<const Point2> pts, int* out_indices) {
  const int m = static_cast<int>(pts.size());
  if (m < 3 || m > detail::kMaxHullPoints) return m < 3 ? -1 : -2;

  double scale = 0.0;
  for (const Point2& p : pts)
    scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  if (scale == 0.0) return -1;
  const double eps_cross = detail::kCollinearEps * scale * scale;
  const double eps_dup = detail::kDuplicateEps * scale;

  int order[detail::kMaxHullPoints];
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order, order + m, [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });

  // Collapse duplicate clusters onto their lexicographically smallest member.
  int uniq[detail::kMaxHullPoints];
  int n = 0;
  for (int i = 0; i < m; ++i) {
    const Point2& p = pts[order[i]];
    if (n > 0) {
      const Point2& q = pts[uniq[n - 1]];
      if (std::abs(p.x - q.x) <= eps_dup && std::abs(p.y - q.y) <= eps_dup)
        continue;
    }
    uniq[n++] = order[i];
  }
  if (n < 3) return -1;

  int hull[2 * detail::kMaxHullPoints];
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 &&
           cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[uniq[i]]) <= eps_cross)
      --k;
    hull[k++] = uniq[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower &&
           cross(pts[hull[k - 2]], pts[hull[k - 1]], pts[uniq[i]]) <= eps_cross)
      --k;
    hull[k++] = uniq[i];
  }
  --k;  // last point repeats the first
  if (k < 3) return -1;
  std::copy(hull, hull + k, out_indices);
  return k;
}

/// Convex hull with collinear and duplicate points removed, or nullopt for a
/// degenerate (collinear) input. Callers in the sampling path resample on
/// nullopt; such shadows have measure zero.
inline std::optional<Polygon> convex_hull(std::span<const Point2> pts) {
  int idx[detail::kMaxHullPoints];
  const int k = convex_hull_small(pts, idx);
  if (k < 3) return std::nullopt;
  Polygon poly;
  poly.vertices.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) poly.vertices.push_back(pts[idx[i]]);
  return poly;
}

inline std::optional<Polygon> convex_hull(const std::vector<Point2>& pts) {
  return convex_hull(std::span<const Point2>(pts.data(), pts.size()));
}

}  // namespace shadows
