#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shadows/geometry.hpp"
#include "shadows/polytopes.hpp"
#include "shadows/quadrature.hpp"
#include "shadows/rng.hpp"
#include "shadows/subspace.hpp"

namespace shadows {

/// One projection's measurements: shadow area, shadow perimeter, and the
/// number of hull vertices.
struct ShadowSample {
  double cw = 0.0;
  double pw = 0.0;
  int nverts = 0;
};

/// Measures the shadow of P through the given frame; nullopt when the
/// images are degenerate (collinear), which has measure zero.
inline std::optional<ShadowSample> shadow(const Polytope& p, const Frame& f) {
  if (f.dim != p.dim) throw std::invalid_argument("shadow: dimension mismatch");
  Point2 pts[detail::kMaxHullPoints];
  const int m = project_into(f, p, pts);
  int idx[detail::kMaxHullPoints];
  const int k = convex_hull_small(std::span<const Point2>(pts, static_cast<std::size_t>(m)), idx);
  if (k < 3) return std::nullopt;
  ShadowSample s;
  s.cw = area_indexed(pts, idx, k);
  s.pw = perimeter_indexed(pts, idx, k);
  s.nverts = k;
  // Isoperimetric inequality; a violation would mean a broken hull.
  if (s.pw * s.pw + 1e-9 < 4.0 * std::numbers::pi * s.cw)
    throw std::logic_error("shadow: isoperimetric inequality violated");
  return s;
}

enum class Method { MonteCarlo, Quadrature };

inline std::string to_string(Method m) {
  return m == Method::MonteCarlo ? "MonteCarlo" : "Quadrature";
}

/// Joint-moment estimates with plug-in standard errors. Quadrature reports
/// carry zero standard errors and a zero seed.
struct MomentReport {
  std::string polytope;  // body key, e.g. "cube3"
  int dim = 3;
  Method method = Method::MonteCarlo;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t degenerate_count = 0;
  double mean_cw = 0.0, se_cw = 0.0;
  double mean_cw2 = 0.0, se_cw2 = 0.0;
  double mean_pw = 0.0, se_pw = 0.0;
  double mean_pw2 = 0.0, se_pw2 = 0.0;
  double mean_cwpw = 0.0, se_cwpw = 0.0;
  double correlation = 0.0;
  double se_correlation = 0.0;  // first-order delta method, approximate
  std::map<int, double> vertex_hist;
};

namespace detail {

// Shifted power sums for one block of samples. Shifts are taken from
// sample 0 so that every worker uses identical constants; merging blocks
// in index order makes the final report independent of the worker count.
struct MomentAccum {
  double stat1[5]{};   // sum of (T_j - k_j), T = (cw, cw^2, pw, pw^2, cw*pw)
  double stat2[5]{};   // sum of (T_j - k_j)^2
  double mixed[14]{};  // sum of (cw-kx)^a (pw-ky)^b, 1 <= a+b <= 4
  std::uint64_t vhist[kMaxHullPoints]{};
  std::uint64_t degenerate = 0;
  std::uint64_t count = 0;

  void add(double cw, double pw, int nverts, const double* kstat, double kx,
           double ky) {
    const double t[5] = {cw, cw * cw, pw, pw * pw, cw * pw};
    for (int j = 0; j < 5; ++j) {
      const double d = t[j] - kstat[j];
      stat1[j] += d;
      stat2[j] += d * d;
    }
    const double x = cw - kx, y = pw - ky;
    double px[5] = {1, x, x * x, 0, 0};
    px[3] = px[2] * x;
    px[4] = px[3] * x;
    double py[5] = {1, y, y * y, 0, 0};
    py[3] = py[2] * y;
    py[4] = py[3] * y;
    static constexpr int kA[14] = {1, 0, 2, 1, 0, 3, 2, 1, 0, 4, 3, 2, 1, 0};
    static constexpr int kB[14] = {0, 1, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 3, 4};
    for (int j = 0; j < 14; ++j) mixed[j] += px[kA[j]] * py[kB[j]];
    ++vhist[nverts];
    ++count;
  }

  void merge(const MomentAccum& o) {
    for (int j = 0; j < 5; ++j) {
      stat1[j] += o.stat1[j];
      stat2[j] += o.stat2[j];
    }
    for (int j = 0; j < 14; ++j) mixed[j] += o.mixed[j];
    for (int j = 0; j < kMaxHullPoints; ++j) vhist[j] += o.vhist[j];
    degenerate += o.degenerate;
    count += o.count;
  }
};

inline ShadowSample sample_shadow(const Polytope& p, std::uint64_t seed,
                                  std::uint64_t index,
                                  std::uint64_t* degenerate) {
  SampleRng rng(seed, index);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const Frame f = sample_frame(p.dim, rng);
    if (auto s = shadow(p, f)) return *s;
    if (degenerate) ++*degenerate;
  }
  throw std::runtime_error("sample_shadow: persistent degenerate shadows");
}

// Central moments of (cw, pw) up to order four from the shifted sums.
struct CentralMoments {
  double mx, my;  // means of the shifted variables
  double m20, m11, m02, m30, m21, m12, m03, m40, m31, m22, m13, m04;
};

inline CentralMoments central_moments(const MomentAccum& a) {
  const double n = static_cast<double>(a.count);
  double r[5][5] = {};
  static constexpr int kA[14] = {1, 0, 2, 1, 0, 3, 2, 1, 0, 4, 3, 2, 1, 0};
  static constexpr int kB[14] = {0, 1, 0, 1, 2, 0, 1, 2, 3, 0, 1, 2, 3, 4};
  for (int j = 0; j < 14; ++j) r[kA[j]][kB[j]] = a.mixed[j] / n;
  const double dx = r[1][0], dy = r[0][1];
  CentralMoments m{};
  m.mx = dx;
  m.my = dy;
  m.m20 = r[2][0] - dx * dx;
  m.m11 = r[1][1] - dx * dy;
  m.m02 = r[0][2] - dy * dy;
  m.m30 = r[3][0] - 3 * dx * r[2][0] + 2 * dx * dx * dx;
  m.m03 = r[0][3] - 3 * dy * r[0][2] + 2 * dy * dy * dy;
  m.m21 = r[2][1] - dy * r[2][0] - 2 * dx * r[1][1] + 2 * dx * dx * dy;
  m.m12 = r[1][2] - dx * r[0][2] - 2 * dy * r[1][1] + 2 * dy * dy * dx;
  m.m40 = r[4][0] - 4 * dx * r[3][0] + 6 * dx * dx * r[2][0] -
          3 * dx * dx * dx * dx;
  m.m04 = r[0][4] - 4 * dy * r[0][3] + 6 * dy * dy * r[0][2] -
          3 * dy * dy * dy * dy;
  m.m31 = r[3][1] - dy * r[3][0] - 3 * dx * r[2][1] + 3 * dx * dy * r[2][0] +
          3 * dx * dx * r[1][1] - 3 * dx * dx * dx * dy;
  m.m13 = r[1][3] - dx * r[0][3] - 3 * dy * r[1][2] + 3 * dx * dy * r[0][2] +
          3 * dy * dy * r[1][1] - 3 * dy * dy * dy * dx;
  m.m22 = r[2][2] - 2 * dy * r[2][1] - 2 * dx * r[1][2] + dy * dy * r[2][0] +
          dx * dx * r[0][2] + 4 * dx * dy * r[1][1] -
          3 * dx * dx * dy * dy;
  return m;
}

inline MomentReport finalize_report(const Polytope& p, const MomentAccum& a,
                                    const double* kstat, std::uint64_t seed) {
  MomentReport rep;
  rep.polytope = body_key(p);
  rep.dim = p.dim;
  rep.method = Method::MonteCarlo;
  rep.n_samples = a.count;
  rep.seed = seed;
  rep.degenerate_count = a.degenerate;

  const double n = static_cast<double>(a.count);
  double* means[5] = {&rep.mean_cw, &rep.mean_cw2, &rep.mean_pw, &rep.mean_pw2,
                      &rep.mean_cwpw};
  double* ses[5] = {&rep.se_cw, &rep.se_cw2, &rep.se_pw, &rep.se_pw2,
                    &rep.se_cwpw};
  for (int j = 0; j < 5; ++j) {
    const double m1 = a.stat1[j] / n;
    *means[j] = kstat[j] + m1;
    const double var = (a.stat2[j] - n * m1 * m1) / (n - 1.0);
    *ses[j] = std::sqrt(std::max(0.0, var) / n);
  }

  const CentralMoments m = central_moments(a);
  const double sx = std::sqrt(m.m20), sy = std::sqrt(m.m02);
  const double r = m.m11 / (sx * sy);
  rep.correlation = r;
  // Var(r) ~ E[IF^2]/n with IF = zx zy - (r/2)(zx^2 + zy^2).
  const double z22 = m.m22 / (m.m20 * m.m02);
  const double z31 = m.m31 / (m.m20 * sx * sy);
  const double z13 = m.m13 / (m.m02 * sx * sy);
  const double z40 = m.m40 / (m.m20 * m.m20);
  const double z04 = m.m04 / (m.m02 * m.m02);
  const double if2 =
      z22 - r * (z31 + z13) + 0.25 * r * r * (z40 + 2.0 * z22 + z04);
  rep.se_correlation = std::sqrt(std::max(0.0, if2) / n);

  for (int k = 0; k < kMaxHullPoints; ++k)
    if (a.vhist[k] > 0)
      rep.vertex_hist[k] = static_cast<double>(a.vhist[k]) / n;
  return rep;
}

}  // namespace detail

/// Monte Carlo estimate of the five joint moments, correlation, and
/// vertex-count distribution. Deterministic in (seed, n_samples): every
/// sample owns the Philox stream keyed by its index and blocks are merged
/// in index order, so the report is bit-identical for any worker count.
inline MomentReport estimate_mc(const Polytope& p, std::uint64_t n_samples,
                                std::uint64_t seed, int workers = 0) {
  if (p.dim != 3 && p.dim != 4)
    throw std::invalid_argument("estimate_mc: dim must be 3 or 4");
  if (n_samples < 2) throw std::invalid_argument("estimate_mc: need n >= 2");
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;

  // Shift constants from sample 0; identical across workers.
  std::uint64_t scratch = 0;
  const ShadowSample s0 = detail::sample_shadow(p, seed, 0, &scratch);
  const double kstat[5] = {s0.cw, s0.cw * s0.cw, s0.pw, s0.pw * s0.pw,
                           s0.cw * s0.pw};

  constexpr std::uint64_t kChunk = 8192;
  const std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<detail::MomentAccum> chunks(n_chunks);

  std::atomic<std::uint64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      detail::MomentAccum& acc = chunks[c];
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min(n_samples, lo + kChunk);
      for (std::uint64_t i = lo; i < hi; ++i) {
        const ShadowSample s =
            detail::sample_shadow(p, seed, i, &acc.degenerate);
        acc.add(s.cw, s.pw, s.nverts, kstat, kstat[0], kstat[2]);
      }
    }
  };

  if (workers == 1 || n_chunks == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  detail::MomentAccum total;
  for (const auto& c : chunks) total.merge(c);
  return detail::finalize_report(p, total, kstat, seed);
}

/// Vertex-count distribution with binomial standard errors and the implied
/// expected vertex count.
struct VertexDistribution {
  std::string polytope;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::map<int, std::pair<double, double>> probabilities;  // nverts -> (p, se)
  double expected_vertices = 0.0;
  double se_expected = 0.0;
};

inline VertexDistribution vertex_distribution(const Polytope& p,
                                              std::uint64_t n_samples,
                                              std::uint64_t seed,
                                              int workers = 0) {
  const MomentReport rep = estimate_mc(p, n_samples, seed, workers);
  VertexDistribution d;
  d.polytope = rep.polytope;
  d.n_samples = rep.n_samples;
  d.seed = seed;
  const double n = static_cast<double>(rep.n_samples);
  double mean = 0.0, mean2 = 0.0;
  for (const auto& [k, freq] : rep.vertex_hist) {
    d.probabilities[k] = {freq, std::sqrt(freq * (1.0 - freq) / n)};
    mean += k * freq;
    mean2 += static_cast<double>(k) * k * freq;
  }
  d.expected_vertices = mean;
  d.se_expected = std::sqrt(std::max(0.0, mean2 - mean * mean) / n);
  return d;
}

namespace detail {

// ---- deterministic quadrature over the sphere of directions (dim 3) ----
//
// The integrands are piecewise analytic in (theta, phi): they lose
// smoothness exactly where the set of extreme projected vertices changes.
// Panels are therefore aligned with those transition curves, found by
// bisection on the hull signature; Gauss-Legendre nodes inside each panel
// then converge spectrally and never sit on a kink.

struct QuadShadow {
  const Polytope* p;

  std::uint32_t signature(double theta, double phi) const {
    const SphericalAngles a{theta, phi, 0, 0, 0};
    const Frame f = frame3(angles_to_unit(a, 3).first);
    Point2 pts[kMaxHullPoints];
    const int m = project_into(f, *p, pts);
    int idx[kMaxHullPoints];
    const int k = convex_hull_small(
        std::span<const Point2>(pts, static_cast<std::size_t>(m)), idx);
    if (k < 3) return 0;
    std::uint32_t mask = 0;
    for (int i = 0; i < k; ++i) mask |= 1u << idx[i];
    return mask;
  }

  ShadowSample eval(double theta, double phi) const {
    const SphericalAngles a{theta, phi, 0, 0, 0};
    const Frame f = frame3(angles_to_unit(a, 3).first);
    const auto s = shadow(*p, f);
    if (!s) throw std::logic_error("quadrature node hit a degenerate shadow");
    return *s;
  }
};

inline double bisect_signature(const QuadShadow& q, double phi, double lo,
                               double hi, std::uint32_t sig_lo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (q.signature(std::fmod(mid, 2.0 * std::numbers::pi), phi) == sig_lo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Transition angles of the hull signature along one row of constant phi.
inline std::vector<double> theta_breaks(const QuadShadow& q, double phi,
                                        int scan) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::uint32_t> sig(static_cast<std::size_t>(scan));
  for (int j = 0; j < scan; ++j)
    sig[static_cast<std::size_t>(j)] = q.signature(two_pi * j / scan, phi);
  std::vector<double> breaks;
  for (int j = 0; j < scan; ++j) {
    const std::uint32_t s0 = sig[static_cast<std::size_t>(j)];
    const std::uint32_t s1 = sig[static_cast<std::size_t>((j + 1) % scan)];
    if (s0 != s1) {
      const double lo = two_pi * j / scan;
      const double hi = two_pi * (j + 1) / scan;
      double b = bisect_signature(q, phi, lo, hi, s0, 1e-12);
      if (b >= two_pi) b -= two_pi;
      breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

// Canonical cyclic sequence of signatures along a row; rows with equal
// descriptors share the same panel topology.
inline std::vector<std::uint32_t> row_descriptor(const QuadShadow& q,
                                                 double phi, int scan) {
  std::vector<std::uint32_t> seq;
  std::uint32_t prev = 0;
  for (int j = 0; j < scan; ++j) {
    const std::uint32_t s = q.signature(2.0 * std::numbers::pi * j / scan, phi);
    if (seq.empty() || s != prev) seq.push_back(s);
    prev = s;
  }
  while (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
  if (seq.size() > 1) {
    // lexicographically smallest rotation
    std::vector<std::uint32_t> best = seq;
    for (std::size_t r = 1; r < seq.size(); ++r) {
      std::vector<std::uint32_t> rot(seq.begin() + static_cast<long>(r), seq.end());
      rot.insert(rot.end(), seq.begin(), seq.begin() + static_cast<long>(r));
      if (rot < best) best = rot;
    }
    seq = best;
  }
  return seq;
}

inline std::vector<double> phi_breaks(const QuadShadow& q, int rows, int scan) {
  const double pi = std::numbers::pi;
  std::vector<double> grid(static_cast<std::size_t>(rows));
  std::vector<std::vector<std::uint32_t>> desc(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    grid[static_cast<std::size_t>(i)] = pi * (i + 0.5) / rows;
    desc[static_cast<std::size_t>(i)] =
        row_descriptor(q, grid[static_cast<std::size_t>(i)], scan);
  }
  std::vector<double> breaks;
  for (int i = 0; i + 1 < rows; ++i) {
    if (desc[static_cast<std::size_t>(i)] == desc[static_cast<std::size_t>(i + 1)])
      continue;
    double lo = grid[static_cast<std::size_t>(i)];
    double hi = grid[static_cast<std::size_t>(i + 1)];
    const auto ref = desc[static_cast<std::size_t>(i)];
    for (int iter = 0; iter < 30 && hi - lo > 1e-9; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (row_descriptor(q, mid, scan) == ref)
        lo = mid;
      else
        hi = mid;
    }
    breaks.push_back(0.5 * (lo + hi));
  }
  return breaks;
}

// Distributes n nodes over panels proportionally to length, at least
// min_nodes each.
inline std::vector<int> distribute_nodes(const std::vector<double>& edges,
                                         int n, int min_nodes) {
  const std::size_t panels = edges.size() - 1;
  const double total = edges.back() - edges.front();
  std::vector<int> out(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double len = edges[i + 1] - edges[i];
    out[i] = std::max(min_nodes,
                      static_cast<int>(std::lround(n * len / total)));
  }
  return out;
}

}  // namespace detail

/// Deterministic tensor Gauss-Legendre evaluation of all five moment
/// integrals with weight sin(phi)/(4 pi). Panel boundaries are aligned with
/// the signature-transition curves of the shadow, so nodes never straddle a
/// kink; the node budgets per axis are honored up to per-panel minimums.
inline MomentReport estimate_quadrature3(const Polytope& p, int grid_theta,
                                         int grid_phi) {
  if (p.dim != 3)
    throw std::invalid_argument(
        "estimate_quadrature3: only 3-dimensional bodies are supported");
  if (grid_theta < 8 || grid_phi < 8)
    throw std::invalid_argument("estimate_quadrature3: grids must be >= 8");

  const double pi = std::numbers::pi;
  const double two_pi = 2.0 * pi;
  detail::QuadShadow q{&p};

  std::vector<double> phi_edges{0.0, 0.5 * pi, pi};
  for (double b : detail::phi_breaks(q, 257, 128)) phi_edges.push_back(b);
  std::sort(phi_edges.begin(), phi_edges.end());
  phi_edges.erase(std::unique(phi_edges.begin(), phi_edges.end(),
                              [](double a, double b) { return b - a < 1e-7; }),
                  phi_edges.end());

  const std::vector<int> phi_nodes = detail::distribute_nodes(phi_edges, grid_phi, 6);

  double sums[5] = {0, 0, 0, 0, 0};
  double hist_w[detail::kMaxHullPoints] = {};
  double total_w = 0.0;
  std::uint64_t n_evals = 0;

  std::vector<double> pn, pw, tn, tw;
  for (std::size_t pp = 0; pp + 1 < phi_edges.size(); ++pp) {
    gauss_on(phi_nodes[pp], phi_edges[pp], phi_edges[pp + 1], pn, pw);
    for (std::size_t j = 0; j < pn.size(); ++j) {
      const double phi = pn[j];
      const double wphi = pw[j] * std::sin(phi) / (4.0 * pi);

      std::vector<double> tb = detail::theta_breaks(q, phi, 512);
      std::vector<double> tedges;
      if (tb.empty()) {
        tedges = {0.0, two_pi};
      } else {
        tedges = tb;
        tedges.push_back(tb.front() + two_pi);
      }
      const std::vector<int> tnodes =
          detail::distribute_nodes(tedges, grid_theta, 4);
      for (std::size_t tp = 0; tp + 1 < tedges.size(); ++tp) {
        gauss_on(tnodes[tp], tedges[tp], tedges[tp + 1], tn, tw);
        for (std::size_t i = 0; i < tn.size(); ++i) {
          const double theta = tn[i] >= two_pi ? tn[i] - two_pi : tn[i];
          const ShadowSample s = q.eval(theta, phi);
          const double w = wphi * tw[i];
          sums[0] += w * s.cw;
          sums[1] += w * s.cw * s.cw;
          sums[2] += w * s.pw;
          sums[3] += w * s.pw * s.pw;
          sums[4] += w * s.cw * s.pw;
          hist_w[s.nverts] += w;
          total_w += w;
          ++n_evals;
        }
      }
    }
  }

  MomentReport rep;
  rep.polytope = body_key(p);
  rep.dim = 3;
  rep.method = Method::Quadrature;
  rep.n_samples = n_evals;
  rep.seed = 0;
  rep.degenerate_count = 0;
  rep.mean_cw = sums[0];
  rep.mean_cw2 = sums[1];
  rep.mean_pw = sums[2];
  rep.mean_pw2 = sums[3];
  rep.mean_cwpw = sums[4];
  rep.correlation =
      (rep.mean_cwpw - rep.mean_cw * rep.mean_pw) /
      std::sqrt((rep.mean_cw2 - rep.mean_cw * rep.mean_cw) *
                (rep.mean_pw2 - rep.mean_pw * rep.mean_pw));
  for (int k = 0; k < detail::kMaxHullPoints; ++k)
    if (hist_w[k] != 0.0) rep.vertex_hist[k] = hist_w[k] / total_w;
  return rep;
}

}  // namespace shadows
