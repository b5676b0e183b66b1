#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadows/polytopes.hpp"
#include "shadows/quadrature.hpp"

namespace shadows {

inline constexpr double kPi = std::numbers::pi;

/// arcsec(x) = arccos(1/x) on [0, pi]; requires |x| >= 1.
inline double arcsec(double x) {
  if (std::abs(x) < 1.0) throw std::domain_error("arcsec: |x| < 1");
  return std::acos(1.0 / x);
}

namespace detail {

// erf on |x| <= 3 by the positive-term series
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!
// which avoids the cancellation of the alternating Taylor series.
inline double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return 2.0 / std::sqrt(kPi) * std::exp(-x2) * sum;
}

// erfc on x > 3 by the continued fraction
//   erfc(x) = (e^{-x^2}/sqrt(pi)) / (x + (1/2)/(x + (2/2)/(x + (3/2)/(...))))
// evaluated by backward recurrence.
inline double erfc_cf(double x) {
  double t = 0.0;
  for (int m = 120; m >= 1; --m) t = 0.5 * m / (x + t);
  return std::exp(-x * x) / std::sqrt(kPi) / (x + t);
}

}  // namespace detail

/// Error function, absolute accuracy below 1e-15 on the real line.
inline double erf(double x) {
  const double ax = std::abs(x);
  double v;
  if (ax <= 3.0)
    v = detail::erf_series(ax);
  else if (ax < 27.0)
    v = 1.0 - detail::erfc_cf(ax);
  else
    v = 1.0;
  return x < 0.0 ? -v : v;
}

/// Complete elliptic integral of the second kind,
/// E(xi) = int_0^{pi/2} sqrt(1 - xi^2 sin^2 t) dt, for 0 <= xi <= 1.
inline double elliptic_E(double xi) {
  if (xi < 0.0 || xi > 1.0) throw std::domain_error("elliptic_E: xi outside [0,1]");
  const double k2 = xi * xi;
  return adaptive_gauss(
      [k2](double t) {
        const double s = std::sin(t);
        return std::sqrt(std::max(0.0, 1.0 - k2 * s * s));
      },
      0.0, 0.5 * kPi, 1e-14);
}

/// Generalized hypergeometric 3F2 at unit argument. The series is summed
/// until the running term drops below 1e-16 of the partial sum; the
/// remaining tail, which decays like k^{-(1+s)} with s = sum(b) - sum(a),
/// is added from a two-term power-law fit via Euler-Maclaurin. Terminating
/// series (a nonpositive integer among the a's) sum exactly.
inline double hyp3f2_unit(double a1, double a2, double a3, double b1, double b2) {
  for (double b : {b1, b2})
    if (b <= 0.0 && b == std::floor(b))
      throw std::domain_error("hyp3f2_unit: nonpositive integer lower parameter");
  const bool terminates =
      (a1 <= 0.0 && a1 == std::floor(a1)) || (a2 <= 0.0 && a2 == std::floor(a2)) ||
      (a3 <= 0.0 && a3 == std::floor(a3));
  const double s = b1 + b2 - a1 - a2 - a3;
  if (!terminates && s <= 0.0)
    throw std::domain_error("hyp3f2_unit: series diverges at z = 1");

  double sum = 1.0;
  double comp = 0.0;  // Kahan compensation; the sum runs over ~10^6 terms
  double term = 1.0;
  double prev = 1.0;
  long k = 0;
  const long k_max = 4000000;
  while (k < k_max) {
    const double next = term * (a1 + k) * (a2 + k) * (a3 + k) /
                        ((b1 + k) * (b2 + k) * (k + 1));
    ++k;
    prev = term;
    term = next;
    if (term == 0.0) return sum - comp;  // terminating series
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (k > 40 && std::abs(term) < 1e-16 * std::abs(sum) &&
        std::abs(prev) < 1e-16 * std::abs(sum))
      break;
  }
  sum -= comp;

  // Tail: fit term_k ~ A k^{-p} + B k^{-p-1}, p = 1 + s, from the last two
  // terms, then sum j^{-q} from k+1 to infinity by Euler-Maclaurin.
  const double p = 1.0 + s;
  const double km1 = static_cast<double>(k - 1);
  const double kk = static_cast<double>(k);
  const double u1 = std::pow(km1, -p), v1 = std::pow(km1, -p - 1.0);
  const double u2 = std::pow(kk, -p), v2 = std::pow(kk, -p - 1.0);
  const double det = u1 * v2 - u2 * v1;
  if (det != 0.0) {
    const double A = (prev * v2 - term * v1) / det;
    const double B = (u1 * term - u2 * prev) / det;
    const auto zeta_tail = [](double q, double n) {
      return std::pow(n, 1.0 - q) / (q - 1.0) + 0.5 * std::pow(n, -q) +
             q * std::pow(n, -q - 1.0) / 12.0 -
             q * (q + 1.0) * (q + 2.0) * std::pow(n, -q - 3.0) / 720.0;
    };
    sum += A * zeta_tail(p, kk + 1.0) + B * zeta_tail(p + 1.0, kk + 1.0);
  }
  return sum;
}

namespace detail {

// Composite Gauss over [a, b] with enough panels for entire integrands
// multiplied by e^{-c x^2}; truncation at |x| = 8 leaves a tail below 1e-80.
template <typename F>
inline double integrate_line(F&& f, double a, double b) {
  return composite_gauss(f, a, b, 16, 64);
}

}  // namespace detail

/// E(cw) of the regular unit-edge n-simplex:
///   n(n+1)/(8 sqrt(pi)) * int e^{-3x^2} ((1+erf x)/2)^{n-2} dx.
inline double mean_cw_simplex(int n) {
  if (n < 2) throw std::invalid_argument("mean_cw_simplex: n >= 2");
  const double c = n * (n + 1) / (8.0 * std::sqrt(kPi));
  return c * detail::integrate_line(
                 [n](double x) {
                   return std::exp(-3.0 * x * x) *
                          std::pow(0.5 * (1.0 + erf(x)), n - 2);
                 },
                 -8.0, 8.0);
}

/// E(cw) of the n-cube with unit side.
inline double mean_cw_cube(int n) {
  if (n < 2) throw std::invalid_argument("mean_cw_cube: n >= 2");
  return 0.5 * n;
}

/// E(cw) of the regular unit-edge n-crosspolytope:
///   n(n-2)/sqrt(pi) * int_0^inf e^{-3x^2} erf(x)^{n-3} dx.
inline double mean_cw_crosspolytope(int n) {
  if (n < 3) throw std::invalid_argument("mean_cw_crosspolytope: n >= 3");
  const double c = n * (n - 2) / std::sqrt(kPi);
  return c * detail::integrate_line(
                 [n](double x) {
                   return std::exp(-3.0 * x * x) * std::pow(erf(x), n - 3);
                 },
                 0.0, 8.0);
}

/// Expected number of shadow vertices for the 4D bodies.
inline double expected_vertices(PolytopeName name, int dim = 4) {
  if (dim != 4) throw std::invalid_argument("expected_vertices: dim must be 4");
  switch (name) {
    case PolytopeName::Simplex:
      return 10.0 * (1.0 - 1.5 / kPi * arcsec(3.0));
    case PolytopeName::Crosspolytope:
      return 24.0 * (1.0 - 2.0 / kPi * arcsec(3.0));
    case PolytopeName::Cube:
      return 8.0;
    default:
      throw std::invalid_argument("expected_vertices: unsupported body");
  }
}

enum class RefStatus { Exact, PaperNumericOnly };

inline std::string to_string(RefStatus s) {
  return s == RefStatus::Exact ? "Exact" : "PaperNumericOnly";
}

/// One named constant: a computed (or, for PaperNumericOnly, transcribed)
/// value together with its derivation and the printed decimal it must match.
struct ReferenceEntry {
  std::string key;
  std::string formula;
  double value = 0.0;
  RefStatus status = RefStatus::Exact;
  std::string digits;      // decimal string as printed in the source material
  double print_ulp = 0.0;  // one unit in the last printed digit
};

class ReferenceTable {
 public:
  const std::vector<ReferenceEntry>& entries() const { return entries_; }

  const ReferenceEntry* find(const std::string& key) const {
    for (const auto& e : entries_)
      if (e.key == key) return &e;
    return nullptr;
  }

  const ReferenceEntry& at(const std::string& key) const {
    const ReferenceEntry* e = find(key);
    if (!e) throw std::invalid_argument("reference table: no entry " + key);
    return *e;
  }

  void add(std::string key, std::string formula, double value, RefStatus status,
           std::string digits, double print_ulp) {
    if (!digits.empty()) {
      const double parsed = std::strtod(digits.c_str(), nullptr);
      const double tol =
          std::max(print_ulp, 1e-10 * std::max(1.0, std::abs(value)));
      if (std::abs(value - parsed) > tol)
        throw std::logic_error("reference table: computed value for " + key +
                               " disagrees with its printed digits");
    }
    entries_.push_back({std::move(key), std::move(formula), value, status,
                        std::move(digits), print_ulp});
  }

 private:
  std::vector<ReferenceEntry> entries_;
};

namespace detail {

inline double corr_from_moments(double cw, double cw2, double pw, double pw2,
                                double cwpw) {
  return (cwpw - cw * pw) /
         std::sqrt((cw2 - cw * cw) * (pw2 - pw * pw));
}

inline ReferenceTable build_reference_table() {
  ReferenceTable t;
  const double as3 = arcsec(3.0);
  const double as4 = arcsec(4.0);
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const auto exact = RefStatus::Exact;
  const auto paper = RefStatus::PaperNumericOnly;

  const double p3_tetra = 2.0 / kPi * (3.0 * as3 - kPi);
  const double p4_tetra = 3.0 / kPi * (kPi - 2.0 * as3);

  // tetrahedron (3-simplex), unit edge
  const double t_cw = r3 / 4.0;
  const double t_cw2 = 0.125 + r2 / (4.0 * kPi) - as3 / (8.0 * kPi);
  const double t_pw = 1.5 * (kPi - as3);
  const double t_pw2 = 8.2170808733;
  const double t_cwpw = 1.2406348222;
  t.add("tetra3.E_cw", "sqrt(3)/4", t_cw, exact, "0.433012701892219", 1e-15);
  t.add("tetra3.E_cw2", "1/8 + sqrt(2)/(4 pi) - arcsec(3)/(8 pi)", t_cw2, exact,
        "0.188561220515812", 1e-15);
  t.add("tetra3.E_pw", "(3/2)(pi - arcsec(3))", t_pw, exact,
        "2.865949854373527", 1e-15);
  t.add("tetra3.E_pw2", "no closed form known", t_pw2, paper, "8.2170808733", 1e-10);
  t.add("tetra3.E_cwpw", "no closed form known", t_cwpw, paper, "1.2406348222", 1e-10);
  t.add("tetra3.corr", "from moments (second moments numeric-only)",
        corr_from_moments(t_cw, t_cw2, t_pw, t_pw2, t_cwpw), paper, "-0.188", 1e-3);
  t.add("tetra3.p3", "(2/pi)(3 arcsec(3) - pi)", p3_tetra, exact,
        "0.3509593121", 1e-10);
  t.add("tetra3.p4", "(3/pi)(pi - 2 arcsec(3))", p4_tetra, exact,
        "0.6490406878", 1e-10);
  t.add("tetra3.E_w", "E(pw)/pi", t_pw / kPi, exact, "", 0.0);

  // 3-cube, unit side
  const double c_cw = 1.5;
  const double c_cw2 = 1.0 + 4.0 / kPi;
  const double c_pw = 1.5 * kPi;
  const double c_pw2 = 8.0 + 6.0 * kPi * hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0);
  const double c_cwpw = 2.0 + 16.0 / kPi;
  t.add("cube3.E_cw", "3/2", c_cw, exact, "1.5", 1e-15);
  t.add("cube3.E_cw2", "1 + 4/pi", c_cw2, exact, "2.273239544735162", 1e-15);
  t.add("cube3.E_pw", "3 pi/2", c_pw, exact, "4.712388980384689", 1e-15);
  t.add("cube3.E_pw2", "8 + 6 pi 3F2(-1/2,1/2,3/2; 1,2; 1)", c_pw2, exact,
        "22.237117433439470", 1e-15);
  t.add("cube3.E_cwpw", "2 + 16/pi", c_cwpw, exact, "7.092958178940650", 1e-15);
  t.add("cube3.corr", "from the five exact moments",
        corr_from_moments(c_cw, c_cw2, c_pw, c_pw2, c_cwpw), exact, "0.915", 1e-3);
  t.add("cube3.p6", "shadow is a hexagon almost surely", 1.0, exact, "1", 0.0);
  t.add("cube3.E_w", "E(pw)/pi = 3/2", 1.5, exact, "1.5", 1e-15);

  // octahedron (3-crosspolytope), unit edge
  const double o_cw = r3 / 2.0;
  const double o_cw2 = 0.5 + r2 / kPi - as3 / (2.0 * kPi);
  const double o_pw = 3.0 * as3;
  const double o_pw2 = 13.6639421274;
  const double o_cwpw = 3.2074623048;
  t.add("octa3.E_cw", "sqrt(3)/2", o_cw, exact, "0.866025403784438", 1e-15);
  t.add("octa3.E_cw2", "1/2 + sqrt(2)/pi - arcsec(3)/(2 pi)", o_cw2, exact,
        "0.754244882063249", 1e-15);
  t.add("octa3.E_pw", "3 arcsec(3)", o_pw, exact, "3.692878252022324", 1e-15);
  t.add("octa3.E_pw2", "no closed form known", o_pw2, paper, "13.6639421274", 1e-10);
  t.add("octa3.E_cwpw", "no closed form known", o_cwpw, paper, "3.2074623048", 1e-10);
  t.add("octa3.corr", "from moments (second moments numeric-only)",
        corr_from_moments(o_cw, o_cw2, o_pw, o_pw2, o_cwpw), paper, "0.878", 1e-3);
  t.add("octa3.p4", "(3/pi)(pi - 2 arcsec(3))", p4_tetra, exact,
        "0.6490406878", 1e-10);
  t.add("octa3.p6", "(2/pi)(3 arcsec(3) - pi)", p3_tetra, exact,
        "0.3509593121", 1e-10);
  t.add("octa3.E_w", "E(pw)/pi", o_pw / kPi, exact, "", 0.0);

  // 4-simplex, unit edge
  const double s4_cw = 5.0 * r3 / (12.0 * kPi) * (kPi - as4);
  const double s4_pw = 10.0 / (3.0 * kPi) * (2.0 * kPi - 3.0 * as3);
  t.add("simplex4.E_cw", "(5 sqrt(3)/(12 pi))(pi - arcsec(4))", s4_cw, exact,
        "0.418889720727840", 1e-15);
  t.add("simplex4.E_cw2", "no closed form known", 0.176, paper, "0.176", 1e-3);
  t.add("simplex4.E_pw", "(10/(3 pi))(2 pi - 3 arcsec(3))", s4_pw, exact,
        "2.748401146360593", 1e-15);
  t.add("simplex4.E_pw2", "no closed form known", 7.56, paper, "7.56", 1e-2);
  t.add("simplex4.E_cwpw", "no closed form known", 1.15, paper, "1.15", 1e-2);
  t.add("simplex4.corr", "approximate", 0.1, paper, "0.1", 1e-1);
  t.add("simplex4.p3", "approximate", 0.146, paper, "0.146", 1e-3);
  t.add("simplex4.p4", "approximate", 0.585, paper, "0.585", 1e-3);
  t.add("simplex4.p5", "approximate", 0.269, paper, "0.269", 1e-3);
  t.add("simplex4.E_nverts", "10(1 - (3/(2 pi)) arcsec(3))",
        expected_vertices(PolytopeName::Simplex), exact, "4.122", 1e-3);
  t.add("simplex4.E_w", "E(pw)/pi", s4_pw / kPi, exact, "", 0.0);

  // 4-cube, unit side
  t.add("cube4.E_cw", "n/2 = 2", 2.0, exact, "2", 0.0);
  t.add("cube4.E_cw2", "no closed form known", 4.04, paper, "4.04", 1e-2);
  t.add("cube4.E_pw", "16/3", 16.0 / 3.0, exact, "", 0.0);
  t.add("cube4.E_pw2", "no closed form known", 28.4, paper, "28.4", 1e-1);
  t.add("cube4.E_cwpw", "no closed form known", 10.7, paper, "10.7", 1e-1);
  t.add("cube4.corr", "approximate", 0.9, paper, "0.9", 1e-1);
  t.add("cube4.p8", "shadow is an octagon almost surely", 1.0, exact, "1", 0.0);
  t.add("cube4.E_nverts", "8", 8.0, exact, "8", 0.0);
  t.add("cube4.E_w", "16/(3 pi)", 16.0 / (3.0 * kPi), exact, "", 0.0);

  // 4-crosspolytope, unit edge
  const double x4_cw = 4.0 * r3 / 9.0;
  const double x4_pw = 16.0 / kPi * (kPi - 2.0 * as3);
  t.add("cross4.E_cw", "4 sqrt(3)/9", x4_cw, exact, "0.769800358919501", 1e-15);
  t.add("cross4.E_cw2", "no closed form known", 0.598, paper, "0.598", 1e-3);
  t.add("cross4.E_pw", "(16/pi)(pi - 2 arcsec(3))", x4_pw, exact,
        "3.461550335020567", 1e-15);
  t.add("cross4.E_pw2", "no closed form known", 12.0, paper, "12.0", 1e-1);
  t.add("cross4.E_cwpw", "no closed form known", 2.67, paper, "2.67", 1e-2);
  t.add("cross4.corr", "approximate", 0.8, paper, "0.8", 1e-1);
  t.add("cross4.p4", "approximate", 0.463, paper, "0.463", 1e-3);
  t.add("cross4.p6", "approximate", 0.478, paper, "0.478", 1e-3);
  t.add("cross4.p8", "approximate", 0.059, paper, "0.059", 1e-3);
  t.add("cross4.E_nverts", "24(1 - (2/pi) arcsec(3))",
        expected_vertices(PolytopeName::Crosspolytope), exact, "5.192", 1e-3);
  t.add("cross4.E_w", "E(pw)/pi", x4_pw / kPi, exact, "", 0.0);

  return t;
}

}  // namespace detail

/// The table of reference constants, computed once on first use.
inline const ReferenceTable& reference_table() {
  static const ReferenceTable table = detail::build_reference_table();
  return table;
}

}  // namespace shadows
