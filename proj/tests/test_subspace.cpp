#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "shadows/estimators.hpp"
#include "shadows/quadrature.hpp"
#include "shadows/subspace.hpp"

using namespace shadows;

namespace {

double frame_violation(const Frame& f, const VecN& u,
                       const VecN* v = nullptr) {
  double worst = std::abs(norm(f.e1, f.dim) - 1.0);
  worst = std::max(worst, std::abs(norm(f.e2, f.dim) - 1.0));
  worst = std::max(worst, std::abs(dot(f.e1, f.e2, f.dim)));
  worst = std::max(worst, std::abs(dot(f.e1, u, f.dim)));
  worst = std::max(worst, std::abs(dot(f.e2, u, f.dim)));
  if (v) {
    worst = std::max(worst, std::abs(dot(f.e1, *v, f.dim)));
    worst = std::max(worst, std::abs(dot(f.e2, *v, f.dim)));
  }
  return worst;
}

}  // namespace

TEST_CASE("frame3 matches the projection matrix at reference directions") {
  const Frame fz = frame3(VecN{0, 0, 1, 0});
  CHECK(fz.e1[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(fz.e1[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(fz.e1[2] == Catch::Approx(0.0).margin(1e-15));
  CHECK(fz.e2[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(fz.e2[1] == Catch::Approx(1.0).margin(1e-15));
  CHECK(fz.e2[2] == Catch::Approx(0.0).margin(1e-15));

  const Frame fy = frame3(VecN{0, 1, 0, 0});
  CHECK(fy.e1[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(fy.e2[2] == Catch::Approx(-1.0).margin(1e-15));
  CHECK(fy.e2[1] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("frame3 handles the singular direction") {
  for (const VecN u : {VecN{1, 0, 0, 0}, VecN{-1, 0, 0, 0},
                       VecN{std::sqrt(1.0 - 2e-13), std::sqrt(1e-13),
                            std::sqrt(1e-13), 0}}) {
    const Frame f = frame3(u);
    CHECK(frame_violation(f, u) < 1e-10);
  }
}

TEST_CASE("random frames are orthonormal in 3 and 4 dimensions") {
  SampleRng rng(11, 0);
  double worst3 = 0.0, worst4 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VecN u3 = sample_unit(3, rng);
    worst3 = std::max(worst3, frame_violation(frame3(u3), u3));

    const VecN u4 = sample_unit(4, rng);
    const double kappa = 2.0 * std::numbers::pi * rng.uniform();
    const double lambda = std::acos(1.0 - 2.0 * rng.uniform());
    const VecN v4 = orthogonal_point(u4, kappa, lambda);
    worst4 = std::max(worst4, frame_violation(frame4(u4, v4), u4, &v4));
  }
  CHECK(worst3 < 1e-10);
  CHECK(worst4 < 1e-10);
}

TEST_CASE("orthogonal_point reproduces the stated example and invariants") {
  const VecN u{0, 0, 0, 1};
  const VecN v = orthogonal_point(u, 0.0, 0.5 * std::numbers::pi);
  CHECK(v[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(v[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(v[2] == Catch::Approx(-1.0).margin(1e-15));
  CHECK(v[3] == Catch::Approx(0.0).margin(1e-15));

  SampleRng rng(12, 0);
  for (int i = 0; i < 1000; ++i) {
    const VecN w = sample_unit(4, rng);
    const VecN q = orthogonal_point(w, 2 * std::numbers::pi * rng.uniform(),
                                    std::numbers::pi * rng.uniform());
    CHECK(std::abs(dot(q, w, 4)) < 1e-12);
    CHECK(norm(q, 4) == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("frame4 matches the projection matrix at a reference pair") {
  const Frame f = frame4(VecN{0, 0, 0, 1}, VecN{0, 0, 1, 0});
  CHECK(f.e1[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(f.e1[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.e2[1] == Catch::Approx(1.0).margin(1e-15));
  CHECK(f.e2[0] == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("frame4 handles singular pairs") {
  const VecN u{1, 0, 0, 0};
  const VecN v{0, 0, 1, 0};  // span(u, v) contains the first axis
  const Frame f = frame4(u, v);
  CHECK(frame_violation(f, u, &v) < 1e-12);
}

TEST_CASE("projecting the normal directions through the frame gives zero") {
  SampleRng rng(13, 0);
  for (int i = 0; i < 100; ++i) {
    const VecN u = sample_unit(4, rng);
    const VecN v = orthogonal_point(u, 2 * std::numbers::pi * rng.uniform(),
                                    std::acos(1 - 2 * rng.uniform()));
    const Frame f = frame4(u, v);
    CHECK(std::abs(dot(f.e1, u, 4)) < 1e-12);
    CHECK(std::abs(dot(f.e2, v, 4)) < 1e-12);
  }
}

TEST_CASE("angles_to_unit evaluates the parameterization") {
  const auto [u3, none] = angles_to_unit({0.0, 0.5 * std::numbers::pi, 0, 0, 0}, 3);
  CHECK_FALSE(none.has_value());
  CHECK(u3[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(u3[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(u3[2] == Catch::Approx(0.0).margin(1e-15));

  SphericalAngles a4;
  a4.theta = 0.5 * std::numbers::pi;
  a4.phi = 0.5 * std::numbers::pi;
  a4.psi = 0.5 * std::numbers::pi;
  const auto [u4, v4] = angles_to_unit(a4, 4);
  REQUIRE(v4.has_value());
  CHECK(u4[1] == Catch::Approx(1.0).margin(1e-15));
  CHECK(std::abs(dot(u4, *v4, 4)) < 1e-14);
}

TEST_CASE("spherical density integrates to one") {
  // (1/4pi) sin(phi) over theta in [0,2pi), phi in [0,pi]
  const double integral =
      gauss_integrate([](double phi) { return std::sin(phi); }, 0.0,
                      std::numbers::pi, 64) *
      2.0 * std::numbers::pi / (4.0 * std::numbers::pi);
  CHECK(integral == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("project maps cube vertices to the expected images") {
  const Polytope cube = make_polytope(PolytopeName::Cube, 3);
  const auto pts = project(frame3(VecN{0, 0, 1, 0}), cube);
  REQUIRE(pts.size() == 8);
  for (const Point2& p : pts) {
    CHECK(std::abs(p.x) == Catch::Approx(0.5).margin(1e-15));
    CHECK(std::abs(p.y) == Catch::Approx(0.5).margin(1e-15));
  }
}

TEST_CASE("projected images of a centered body are centered") {
  const Polytope tetra = make_polytope(PolytopeName::Simplex, 3);
  SampleRng rng(14, 0);
  for (int i = 0; i < 100; ++i) {
    const auto pts = project(sample_frame(3, rng), tetra);
    double cx = 0.0, cy = 0.0;
    for (const Point2& p : pts) {
      cx += p.x;
      cy += p.y;
    }
    CHECK(std::abs(cx) < 1e-12);
    CHECK(std::abs(cy) < 1e-12);
  }
}

TEST_CASE("octahedron axis shadow is the expected square") {
  const Polytope octa = make_polytope(PolytopeName::Crosspolytope, 3);
  const auto pts = project(frame3(VecN{0, 0, 1, 0}), octa);
  const auto hull = convex_hull(pts);
  REQUIRE(hull.has_value());
  REQUIRE(hull->vertices.size() == 4);
  const double r = 1.0 / std::sqrt(2.0);
  for (const Point2& p : hull->vertices)
    CHECK(std::abs(p.x) + std::abs(p.y) == Catch::Approx(r).margin(1e-14));
}

TEST_CASE("projection is linear under scaling") {
  const Polytope octa = make_polytope(PolytopeName::Crosspolytope, 3);
  const Polytope big = scaled(octa, 3.0);
  SampleRng rng(15, 0);
  const Frame f = sample_frame(3, rng);
  const auto base = project(f, octa);
  const auto scaled_pts = project(f, big);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(scaled_pts[i].x == Catch::Approx(3.0 * base[i].x).margin(1e-14));
    CHECK(scaled_pts[i].y == Catch::Approx(3.0 * base[i].y).margin(1e-14));
  }
}

TEST_CASE("dimension mismatches are rejected") {
  const Polytope cube4 = make_polytope(PolytopeName::Cube, 4);
  CHECK_THROWS_AS(project(frame3(VecN{0, 0, 1, 0}), cube4), std::invalid_argument);
  SampleRng rng(16, 0);
  CHECK_THROWS_AS(sample_unit(2, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_frame(5, rng), std::invalid_argument);
}

TEST_CASE("sphere sampling has uniform-measure moments") {
  SampleRng rng(17, 0);
  const int n = 100000;
  double mean[3] = {0, 0, 0};
  double mean_x2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const VecN u = sample_unit(3, rng);
    CHECK(std::abs(norm(u, 3) - 1.0) < 1e-12);
    for (int k = 0; k < 3; ++k) mean[k] += u[k];
    mean_x2 += u[0] * u[0];
  }
  const double se_mean = std::sqrt(1.0 / 3.0 / n);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(mean[k] / n) < 4.0 * se_mean);
  // coordinates of a uniform point on S^2 are uniform on [-1,1]:
  // Var(x^2) = 1/5 - 1/9 = 4/45
  CHECK(std::abs(mean_x2 / n - 1.0 / 3.0) < 4.0 * std::sqrt(4.0 / 45.0 / n));
}

TEST_CASE("normal-vector route and angle route sample the same law") {
  const Polytope cube = make_polytope(PolytopeName::Cube, 3);
  const int n = 200000;
  double s1 = 0, s2 = 0, t1 = 0, t2 = 0;
  for (int i = 0; i < n; ++i) {
    SampleRng rng(21, static_cast<std::uint64_t>(i));
    const auto s = shadow(cube, frame3(sample_unit(3, rng)));
    REQUIRE(s.has_value());
    s1 += s->cw;
    s2 += s->cw * s->cw;

    SampleRng rng2(22, static_cast<std::uint64_t>(i));
    SphericalAngles a;
    a.theta = 2.0 * std::numbers::pi * rng2.uniform();
    a.phi = std::acos(1.0 - 2.0 * rng2.uniform());
    const auto t = shadow(cube, frame3(angles_to_unit(a, 3).first));
    REQUIRE(t.has_value());
    t1 += t->cw;
    t2 += t->cw * t->cw;
  }
  const double ma = s1 / n, mb = t1 / n;
  const double va = s2 / n - ma * ma, vb = t2 / n - mb * mb;
  const double se = std::sqrt(va / n + vb / n);
  CHECK(std::abs(ma - mb) < 4.0 * se);
}
