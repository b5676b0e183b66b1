#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadows {

/// Point in R^n for n <= 4; unused trailing components are zero.
using VecN = std::array<double, 4>;

enum class PolytopeName { Simplex, Cube, Crosspolytope, Square, Triangle };

inline std::string to_string(PolytopeName name) {
  switch (name) {
    case PolytopeName::Simplex: return "simplex";
    case PolytopeName::Cube: return "cube";
    case PolytopeName::Crosspolytope: return "crosspolytope";
    case PolytopeName::Square: return "square";
    case PolytopeName::Triangle: return "triangle";
  }
  return "?";
}

inline PolytopeName polytope_name_from_string(const std::string& s) {
  if (s == "simplex" || s == "tetrahedron" || s == "tetra") return PolytopeName::Simplex;
  if (s == "cube") return PolytopeName::Cube;
  if (s == "crosspolytope" || s == "cross" || s == "octahedron" || s == "octa")
    return PolytopeName::Crosspolytope;
  if (s == "square") return PolytopeName::Square;
  if (s == "triangle") return PolytopeName::Triangle;
  throw std::invalid_argument("unknown polytope name: " + s);
}

/// Centered convex polytope with canonical (lexicographic) vertex order.
/// Immutable after construction; safe to share across workers.
struct Polytope {
  PolytopeName name = PolytopeName::Cube;
  int dim = 3;
  std::vector<VecN> vertices;
};

/// Short identifier used in reports and the reference table:
/// tetra3, cube3, octa3, simplex4, cube4, cross4, square2, triangle2.
inline std::string body_key(const Polytope& p) {
  switch (p.name) {
    case PolytopeName::Simplex: return p.dim == 3 ? "tetra3" : "simplex" + std::to_string(p.dim);
    case PolytopeName::Cube: return "cube" + std::to_string(p.dim);
    case PolytopeName::Crosspolytope:
      return p.dim == 3 ? "octa3" : "cross" + std::to_string(p.dim);
    case PolytopeName::Square: return "square2";
    case PolytopeName::Triangle: return "triangle2";
  }
  return "?";
}

namespace detail {

inline void sort_vertices(std::vector<VecN>& v, int dim) {
  std::sort(v.begin(), v.end(), [dim](const VecN& a, const VecN& b) {
    for (int i = 0; i < dim; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
}

inline void check_polytope(const Polytope& p) {
  const int n = p.dim;
  const auto m = p.vertices.size();
  VecN centroid{};
  for (const VecN& v : p.vertices)
    for (int i = 0; i < n; ++i) centroid[i] += v[i];
  for (int i = 0; i < n; ++i)
    if (std::abs(centroid[i] / static_cast<double>(m)) > 1e-12)
      throw std::logic_error("polytope not centered");

  // Nearest-vertex distance must be 1 for unit-edge bodies; the cube's
  // nearest-vertex distance equals its side.
  double min_dist = 1e300;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double d2 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double d = p.vertices[i][k] - p.vertices[j][k];
        d2 += d * d;
      }
      min_dist = std::min(min_dist, std::sqrt(d2));
    }
  if (std::abs(min_dist - 1.0) > 1e-12)
    throw std::logic_error("polytope edge length is not 1");
}

}  // namespace detail

/// Builds one of the supported bodies: simplex/cube/crosspolytope in
/// dimension 3 or 4 (unit edge resp. unit side), or the 2D square and
/// equilateral triangle. Throws std::invalid_argument otherwise.
inline Polytope make_polytope(PolytopeName name, int dim) {
  Polytope p;
  p.name = name;
  p.dim = dim;
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);

  switch (name) {
    case PolytopeName::Simplex: {
      if (dim == 3) {
        p.vertices = {
            {0.0, 0.0, r6 / 4.0, 0.0},
            {r3 / 3.0, 0.0, -r6 / 12.0, 0.0},
            {-r3 / 6.0, 0.5, -r6 / 12.0, 0.0},
            {-r3 / 6.0, -0.5, -r6 / 12.0, 0.0},
        };
      } else if (dim == 4) {
        // Rows of the Helmert basis give an isometric embedding of the five
        // points e_i/sqrt(2) from the hyperplane sum(x)=const into R^4;
        // pairwise distances are |e_i - e_j|/sqrt(2) = 1.
        p.vertices.assign(5, VecN{});
        for (int i = 0; i < 5; ++i)
          for (int k = 1; k <= 4; ++k) {
            double h;
            if (i < k)
              h = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
            else if (i == k)
              h = -static_cast<double>(k) /
                  std::sqrt(static_cast<double>(k) * (k + 1));
            else
              h = 0.0;
            p.vertices[static_cast<std::size_t>(i)][k - 1] = h / r2;
          }
      } else {
        throw std::invalid_argument("simplex supports dim 3 or 4");
      }
      break;
    }
    case PolytopeName::Cube: {
      if (dim != 3 && dim != 4)
        throw std::invalid_argument("cube supports dim 3 or 4");
      const int m = 1 << dim;
      p.vertices.assign(static_cast<std::size_t>(m), VecN{});
      for (int bits = 0; bits < m; ++bits)
        for (int i = 0; i < dim; ++i)
          p.vertices[static_cast<std::size_t>(bits)][i] =
              (bits >> i & 1) ? 0.5 : -0.5;
      break;
    }
    case PolytopeName::Crosspolytope: {
      if (dim != 3 && dim != 4)
        throw std::invalid_argument("crosspolytope supports dim 3 or 4");
      for (int i = 0; i < dim; ++i)
        for (double s : {1.0, -1.0}) {
          VecN v{};
          v[i] = s / r2;
          p.vertices.push_back(v);
        }
      break;
    }
    case PolytopeName::Square: {
      if (dim != 2) throw std::invalid_argument("square supports dim 2");
      p.vertices = {{0.5, 0.5, 0, 0}, {-0.5, 0.5, 0, 0},
                    {0.5, -0.5, 0, 0}, {-0.5, -0.5, 0, 0}};
      break;
    }
    case PolytopeName::Triangle: {
      if (dim != 2) throw std::invalid_argument("triangle supports dim 2");
      p.vertices = {{0.0, r3 / 3.0, 0, 0},
                    {0.5, -r3 / 6.0, 0, 0},
                    {-0.5, -r3 / 6.0, 0, 0}};
      break;
    }
  }

  detail::sort_vertices(p.vertices, p.dim);
  detail::check_polytope(p);
  return p;
}

inline Polytope scaled(const Polytope& p, double s) {
  Polytope q = p;
  for (VecN& v : q.vertices)
    for (int i = 0; i < q.dim; ++i) v[i] *= s;
  return q;
}

}  // namespace shadows
