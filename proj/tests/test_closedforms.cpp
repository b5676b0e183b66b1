#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "shadows/closedforms.hpp"
#include "support/test_helpers.hpp"

using namespace shadows;

TEST_CASE("arcsec at reference points") {
  CHECK(arcsec(1.0) == 0.0);
  CHECK(arcsec(2.0) == Catch::Approx(std::numbers::pi / 3.0).margin(1e-15));
  CHECK(3.0 * arcsec(3.0) == Catch::Approx(3.692878252022324).margin(1e-14));
  CHECK(arcsec(-1.0) == Catch::Approx(std::numbers::pi).margin(1e-15));
  CHECK_THROWS_AS(arcsec(0.5), std::domain_error);
  CHECK_THROWS_AS(arcsec(-0.99), std::domain_error);
}

TEST_CASE("erf against an independent quadrature oracle") {
  CHECK(shadows::erf(0.0) == 0.0);
  CHECK(std::abs(shadows::erf(6.0) - 1.0) < 1e-15);

  const auto oracle = [](double x) {
    return 2.0 / std::sqrt(std::numbers::pi) *
           testsupport::adaptive_simpson(
               [](double t) { return std::exp(-t * t); }, 0.0, x, 1e-15);
  };
  CHECK(shadows::erf(1.0) == Catch::Approx(0.842700792949715).margin(1e-13));
  CHECK(shadows::erf(1.0) == Catch::Approx(oracle(1.0)).margin(1e-13));
  CHECK(shadows::erf(2.5) == Catch::Approx(oracle(2.5)).margin(1e-13));

  // both evaluation regimes, against the library's C implementation
  for (double x = -6.0; x <= 6.0; x += 0.37)
    CHECK(shadows::erf(x) == Catch::Approx(::erf(x)).margin(2e-15));
  CHECK(shadows::erf(3.0 - 1e-12) == Catch::Approx(shadows::erf(3.0 + 1e-12)).margin(1e-13));
  CHECK(shadows::erf(-1.5) == -shadows::erf(1.5));
  CHECK(shadows::erf(30.0) == 1.0);
}

TEST_CASE("complete elliptic integral of the second kind") {
  CHECK(elliptic_E(0.0) == Catch::Approx(0.5 * std::numbers::pi).margin(1e-13));
  CHECK(elliptic_E(1.0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(elliptic_E(1.0 / std::sqrt(2.0)) ==
        Catch::Approx(1.350643881047676).margin(1e-12));
  // standard library implementation as an independent route
  for (double xi = 0.0; xi < 0.999; xi += 0.0613)
    CHECK(elliptic_E(xi) == Catch::Approx(std::comp_ellint_2(xi)).margin(1e-12));
  CHECK_THROWS_AS(elliptic_E(-0.1), std::domain_error);
  CHECK_THROWS_AS(elliptic_E(1.1), std::domain_error);
}

TEST_CASE("3F2 at unit argument") {
  // a leading zero parameter terminates the series immediately
  CHECK(hyp3f2_unit(0.0, 0.5, 1.5, 1.0, 2.0) == 1.0);
  // short terminating series, checked by hand:
  // 1 + a1 a2 a3/(b1 b2) z + ... with a1 = -1
  CHECK(hyp3f2_unit(-1.0, 2.0, 3.0, 1.0, 4.0) ==
        Catch::Approx(1.0 - 2.0 * 3.0 / 4.0).margin(1e-15));
  // divergent parameter combinations are rejected
  CHECK_THROWS_AS(hyp3f2_unit(1.0, 1.0, 1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp3f2_unit(0.5, 0.5, 0.5, 0.25, 0.25), std::domain_error);

  const double f = hyp3f2_unit(-0.5, 0.5, 1.5, 1.0, 2.0);
  CHECK(8.0 + 6.0 * std::numbers::pi * f ==
        Catch::Approx(22.237117433439470).margin(1e-10));
  // independent route: (pi^2/8) 3F2 = int_0^{pi/2} E(sin phi) sin^2 phi dphi
  const double j = testsupport::adaptive_simpson(
      [](double phi) {
        const double s = std::sin(phi);
        return elliptic_E(s) * s * s;
      },
      0.0, 0.5 * std::numbers::pi, 1e-13);
  CHECK(std::numbers::pi * std::numbers::pi / 8.0 * f ==
        Catch::Approx(j).margin(1e-9));
}

TEST_CASE("mean chorowidth formulas reproduce the table") {
  CHECK(mean_cw_simplex(2) == Catch::Approx(std::sqrt(3.0) / 4.0).margin(1e-10));
  CHECK(mean_cw_simplex(3) == Catch::Approx(0.433012701892219).margin(1e-12));
  CHECK(mean_cw_simplex(4) == Catch::Approx(0.418889720727840).margin(1e-12));
  CHECK(mean_cw_simplex(4) ==
        Catch::Approx(5.0 * std::sqrt(3.0) / (12.0 * std::numbers::pi) *
                      (std::numbers::pi - arcsec(4.0)))
            .margin(1e-12));
  CHECK_THROWS_AS(mean_cw_simplex(1), std::invalid_argument);

  CHECK(mean_cw_cube(2) == 1.0);
  CHECK(mean_cw_cube(3) == 1.5);
  CHECK(mean_cw_cube(4) == 2.0);

  CHECK(mean_cw_crosspolytope(3) == Catch::Approx(0.866025403784438).margin(1e-12));
  CHECK(mean_cw_crosspolytope(4) == Catch::Approx(0.769800358919501).margin(1e-12));
  CHECK(mean_cw_crosspolytope(4) ==
        Catch::Approx(4.0 * std::sqrt(3.0) / 9.0).margin(1e-10));
  CHECK_THROWS_AS(mean_cw_crosspolytope(2), std::invalid_argument);
}

TEST_CASE("expected vertex counts in four dimensions") {
  CHECK(expected_vertices(PolytopeName::Simplex) ==
        Catch::Approx(4.122601719540890).margin(1e-12));
  CHECK(expected_vertices(PolytopeName::Crosspolytope) ==
        Catch::Approx(5.192325502530850).margin(1e-12));
  CHECK(expected_vertices(PolytopeName::Cube) == 8.0);
  CHECK_THROWS_AS(expected_vertices(PolytopeName::Simplex, 3), std::invalid_argument);
  CHECK_THROWS_AS(expected_vertices(PolytopeName::Square), std::invalid_argument);

  // the erf-integral theorems give the same values
  const double simplex_integral =
      20.0 * std::sqrt(2.0 / std::numbers::pi) *
      testsupport::adaptive_simpson(
          [](double x) {
            const double c = 0.5 * (1.0 + shadows::erf(x));
            return std::exp(-2.0 * x * x) * c * c * c;
          },
          -8.0, 8.0, 1e-13);
  CHECK(simplex_integral ==
        Catch::Approx(expected_vertices(PolytopeName::Simplex)).margin(1e-9));
  const double cross_integral =
      48.0 * std::sqrt(2.0 / std::numbers::pi) *
      testsupport::adaptive_simpson(
          [](double x) {
            const double e = shadows::erf(x);
            return std::exp(-2.0 * x * x) * e * e;
          },
          0.0, 8.0, 1e-13);
  CHECK(cross_integral ==
        Catch::Approx(expected_vertices(PolytopeName::Crosspolytope)).margin(1e-9));
}

namespace {

// |a - b| within one unit of b's d-th significant digit
bool sig_digits_match(double a, double b, int digits) {
  const double magnitude = std::pow(10.0, std::floor(std::log10(std::abs(b))));
  return std::abs(a - b) <= magnitude * std::pow(10.0, 1 - digits);
}

}  // namespace

TEST_CASE("reference table carries every moment with verified digits") {
  const ReferenceTable& t = reference_table();
  CHECK(t.entries().size() >= 30);

  // spot values
  CHECK(t.at("cube3.E_pw").value == Catch::Approx(4.712388980384689).margin(1e-15));
  CHECK(t.at("tetra3.E_pw2").status == RefStatus::PaperNumericOnly);
  CHECK(t.at("tetra3.E_pw2").value == Catch::Approx(8.2170808733).margin(1e-12));
  CHECK(t.at("cube3.corr").status == RefStatus::Exact);
  CHECK(t.at("cube3.corr").value == Catch::Approx(0.915).margin(1e-3));
  CHECK(t.at("simplex4.E_pw").value ==
        Catch::Approx(2.748401146360593).margin(1e-15));
  CHECK_THROWS_AS(t.at("nonexistent.key"), std::invalid_argument);

  // every exact entry with printed digits agrees to 12 significant digits
  for (const auto& e : t.entries()) {
    if (e.digits.empty()) continue;
    const double printed = std::strtod(e.digits.c_str(), nullptr);
    if (e.status == RefStatus::Exact && e.print_ulp <= 1e-12)
      CHECK(sig_digits_match(e.value, printed, 12));
  }
}

TEST_CASE("vertex probabilities are complementary and dual") {
  const ReferenceTable& t = reference_table();
  CHECK(t.at("tetra3.p3").value + t.at("tetra3.p4").value ==
        Catch::Approx(1.0).margin(1e-14));
  // shared closed form: same double, not merely close
  CHECK(t.at("tetra3.p3").value == t.at("octa3.p6").value);
  CHECK(t.at("tetra3.p4").value == t.at("octa3.p4").value);
}

TEST_CASE("mean periwidth is pi times mean width") {
  const ReferenceTable& t = reference_table();
  for (const std::string body :
       {"tetra3", "cube3", "octa3", "simplex4", "cube4", "cross4"}) {
    CHECK(t.at(body + ".E_pw").value / std::numbers::pi ==
          Catch::Approx(t.at(body + ".E_w").value).margin(1e-14));
  }
}
