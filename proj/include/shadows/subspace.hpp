#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shadows/geometry.hpp"
#include "shadows/polytopes.hpp"
#include "shadows/rng.hpp"

namespace shadows {

/// Two orthonormal rows spanning the projection plane; both are orthogonal
/// to the sampled normal direction(s).
struct Frame {
  int dim = 3;
  VecN e1{};
  VecN e2{};
};

/// Angles parameterizing a direction (and, in dimension 4, the second
/// normal): theta in [0,2pi), phi in [0,pi]; psi in [0,pi], kappa in
/// [0,2pi), lambda in [0,pi] are used only when dim == 4.
struct SphericalAngles {
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double kappa = 0.0;
  double lambda = 0.0;
};

inline double dot(const VecN& a, const VecN& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const VecN& a, int dim) { return std::sqrt(dot(a, a, dim)); }

/// Uniform point on S^{dim-1}: normalized vector of independent standard
/// normals. Resamples on an (effectively impossible) zero vector.
inline VecN sample_unit(int dim, SampleRng& rng) {
  if (dim != 3 && dim != 4) throw std::invalid_argument("sample_unit: dim must be 3 or 4");
  for (;;) {
    VecN u{};
    double n2 = 0.0;
    for (int i = 0; i < dim; ++i) {
      u[i] = rng.normal();
      n2 += u[i] * u[i];
    }
    if (n2 > 1e-280) {
      const double inv = 1.0 / std::sqrt(n2);
      for (int i = 0; i < dim; ++i) u[i] *= inv;
      return u;
    }
  }
}

namespace detail {

inline constexpr double kPoleEps = 1e-12;

// Frame rows for a unit u = (x, y, z), valid when y^2 + z^2 is not tiny:
//   e1 = (s, -xy/s, -xz/s),  e2 = (0, z/s, -y/s),  s = sqrt(y^2 + z^2).
inline void frame3_rows(double x, double y, double z, double* e1, double* e2) {
  const double s2 = y * y + z * z;
  const double s = std::sqrt(s2);
  e1[0] = s;
  e1[1] = -x * y / s;
  e1[2] = -x * z / s;
  e2[0] = 0.0;
  e2[1] = z / s;
  e2[2] = -y / s;
}

// Frame rows for orthonormal u = (x,y,z,w), v = (p,q,r,s) when the plane
// span(u, v) does not contain the first axis. The shared denominator
// sqrt(1 - p^2 - x^2) is evaluated through the Lagrange identity
//   (y^2+z^2+w^2)(q^2+r^2+s^2) - (yq+zr+ws)^2
// which avoids cancellation near the singular configuration.
inline void frame4_rows(const double* u, const double* v, double* e1,
                        double* e2) {
  const double x = u[0], y = u[1], z = u[2], w = u[3];
  const double p = v[0], q = v[1], r = v[2], s = v[3];
  const double a = y * y + z * z + w * w;
  const double b = q * q + r * r + s * s;
  const double c = y * q + z * r + w * s;
  const double d = std::sqrt(std::max(0.0, a * b - c * c));
  e1[0] = d;
  e1[1] = -(p * q + x * y) / d;
  e1[2] = -(p * r + x * z) / d;
  e1[3] = -(p * s + x * w) / d;
  e2[0] = 0.0;
  e2[1] = (r * w - s * z) / d;
  e2[2] = -(q * w - s * y) / d;
  e2[3] = (q * z - r * y) / d;
}

}  // namespace detail

/// Rows 1-2 of the projection matrix at U. Near the singular direction
/// (|x| ~ 1) the construction is conjugated through a coordinate rotation;
/// the returned rows are still an orthonormal basis of the plane orthogonal
/// to U, so shadow measurements are unaffected.
inline Frame frame3(const VecN& u) {
  Frame f;
  f.dim = 3;
  const double s2 = u[1] * u[1] + u[2] * u[2];
  if (s2 > detail::kPoleEps) {
    double e1[3], e2[3];
    detail::frame3_rows(u[0], u[1], u[2], e1, e2);
    for (int i = 0; i < 3; ++i) {
      f.e1[i] = e1[i];
      f.e2[i] = e2[i];
    }
    return f;
  }
  int j = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(u[i]) < std::abs(u[j])) j = i;
  const int p0 = j, p1 = (j + 1) % 3, p2 = (j + 2) % 3;
  double e1[3], e2[3];
  detail::frame3_rows(u[p0], u[p1], u[p2], e1, e2);
  f.e1[p0] = e1[0]; f.e1[p1] = e1[1]; f.e1[p2] = e1[2];
  f.e2[p0] = e2[0]; f.e2[p1] = e2[1]; f.e2[p2] = e2[2];
  return f;
}

/// Point on the 2-sphere of directions orthogonal to the unit 4-vector U,
/// parameterized by (kappa, lambda). For fixed U the result is uniform on
/// that sphere when kappa ~ U[0,2pi) and cos(lambda) ~ U[-1,1].
inline VecN orthogonal_point(const VecN& u, double kappa, double lambda) {
  const double x = u[0], y = u[1], z = u[2], w = u[3];
  const double ck = std::cos(kappa) * std::sin(lambda);
  const double sk = std::sin(kappa) * std::sin(lambda);
  const double cl = std::cos(lambda);
  return VecN{ck * -y + sk * -z + cl * -w,
              ck * x + sk * w + cl * -z,
              ck * -w + sk * x + cl * y,
              ck * z + sk * -y + cl * x};
}

/// Rows 1-2 of the 4D projection matrix at (U, V); requires U, V unit and
/// orthogonal. Singular configurations are handled by conjugating through a
/// coordinate rotation, as in frame3.
inline Frame frame4(const VecN& u, const VecN& v) {
  Frame f;
  f.dim = 4;
  const double a = u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
  const double b = v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
  const double c = u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
  const double d2 = a * b - c * c;
  if (d2 > detail::kPoleEps) {
    double e1[4], e2[4];
    detail::frame4_rows(u.data(), v.data(), e1, e2);
    for (int i = 0; i < 4; ++i) {
      f.e1[i] = e1[i];
      f.e2[i] = e2[i];
    }
    return f;
  }
  int j = 0;
  double best = 1e300;
  for (int i = 0; i < 4; ++i) {
    const double m = u[i] * u[i] + v[i] * v[i];
    if (m < best) {
      best = m;
      j = i;
    }
  }
  double up[4], vp[4], e1[4], e2[4];
  for (int i = 0; i < 4; ++i) {
    up[i] = u[(j + i) % 4];
    vp[i] = v[(j + i) % 4];
  }
  detail::frame4_rows(up, vp, e1, e2);
  for (int i = 0; i < 4; ++i) {
    f.e1[(j + i) % 4] = e1[i];
    f.e2[(j + i) % 4] = e2[i];
  }
  return f;
}

/// Direction(s) from spherical angles: U for dim 3; (U, V) for dim 4 where
/// V comes from (kappa, lambda) on the sphere orthogonal to U.
inline std::pair<VecN, std::optional<VecN>> angles_to_unit(
    const SphericalAngles& a, int dim) {
  if (dim == 3) {
    VecN u{std::cos(a.theta) * std::sin(a.phi),
           std::sin(a.theta) * std::sin(a.phi), std::cos(a.phi), 0.0};
    return {u, std::nullopt};
  }
  if (dim != 4) throw std::invalid_argument("angles_to_unit: dim must be 3 or 4");
  const double sp = std::sin(a.phi), spsi = std::sin(a.psi);
  VecN u{std::cos(a.theta) * sp * spsi, std::sin(a.theta) * sp * spsi,
         std::cos(a.phi) * spsi, std::cos(a.psi)};
  return {u, orthogonal_point(u, a.kappa, a.lambda)};
}

/// Uniform random projection frame on the Grassmannian of 2-planes.
inline Frame sample_frame(int dim, SampleRng& rng) {
  if (dim == 3) return frame3(sample_unit(3, rng));
  if (dim != 4) throw std::invalid_argument("sample_frame: dim must be 3 or 4");
  const VecN u = sample_unit(4, rng);
  const double kappa = 2.0 * std::numbers::pi * rng.uniform();
  const double cl = 1.0 - 2.0 * rng.uniform();
  const double lambda = std::acos(std::clamp(cl, -1.0, 1.0));
  return frame4(u, orthogonal_point(u, kappa, lambda));
}

/// Images of all vertices in the projection plane, one Point2 per vertex.
inline int project_into(const Frame& f, const Polytope& p, Point2* out) {
  const int m = static_cast<int>(p.vertices.size());
  for (int i = 0; i < m; ++i) {
    const VecN& v = p.vertices[static_cast<std::size_t>(i)];
    double a = 0.0, b = 0.0;
    for (int k = 0; k < f.dim; ++k) {
      a += f.e1[k] * v[k];
      b += f.e2[k] * v[k];
    }
    out[i] = Point2{a, b};
  }
  return m;
}

inline std::vector<Point2> project(const Frame& f, const Polytope& p) {
  if (f.dim != p.dim) throw std::invalid_argument("project: dimension mismatch");
  std::vector<Point2> out(p.vertices.size());
  project_into(f, p, out.data());
  return out;
}

}  // namespace shadows
