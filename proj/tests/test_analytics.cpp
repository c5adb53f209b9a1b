#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "rotor_search/analytics.hpp"
#include "rotor_search/quadrature.hpp"

using namespace rotor_search;

TEST_CASE("quadrature runtime against closed forms", "[analytics]") {
  // n=1: T = int_{pi/2}^{pi} dtheta / sqrt(-cos theta) = sqrt(2/pi) Gamma(1/4)^2 / 4
  const double gamma_quarter = std::tgamma(0.25);
  const double exact = std::sqrt(2.0 / std::numbers::pi) * gamma_quarter * gamma_quarter / 4.0;
  CHECK(quadrature_runtime(1) == Catch::Approx(exact).epsilon(1e-10));
  CHECK_THROWS_AS(quadrature_runtime(0), domain_error);
  CHECK_THROWS_AS(quadrature_runtime(65), capacity_error);
}

TEST_CASE("hypergeometric runtime identities", "[analytics]") {
  // 2F1(1/2, 1; 3/2; z^2) = atanh(z)/z at z = 1/sqrt2
  CHECK(std::abs(hypergeometric_runtime(1) -
                 std::sqrt(2.0) * std::atanh(1.0 / std::sqrt(2.0))) < 1e-10);
  // n=2: b = c makes the series the binomial (1-z)^{-1/2}, so T = sqrt2 * sqrt2 = 2
  CHECK(hypergeometric_runtime(2) == Catch::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(hypergeometric_runtime(0), domain_error);
  CHECK_THROWS_AS(hypergeometric_runtime(65), capacity_error);
  CHECK(std::isfinite(hypergeometric_runtime(64)));
}

TEST_CASE("hypergeometric runtime equals quadrature of the simplified integrand",
          "[analytics]") {
  // the -2 dropped: integrand sqrt(n/2) sin^{-n}(theta/2), no singularity
  for (int n : {1, 2, 3, 5, 8, 12, 16, 20}) {
    auto integrand = [n](double theta) {
      return std::sqrt(n / 2.0) * std::pow(std::sin(theta / 2), -n);
    };
    const double ref =
        detail::adaptive_gk15(integrand, std::numbers::pi / 2, std::numbers::pi, 1e-12, 1e-13);
    REQUIRE(std::abs(hypergeometric_runtime(n) - ref) <= 1e-8 * ref);
  }
}

TEST_CASE("asymptotic runtime plug-ins and doubling law", "[analytics]") {
  CHECK(asymptotic_runtime(1) == Catch::Approx(2.0).epsilon(1e-15));
  CHECK(asymptotic_runtime(10) == Catch::Approx(std::sqrt(2048.0 / 10.0)).epsilon(1e-15));
  for (int n : {3, 10, 25}) {
    const double ratio = asymptotic_runtime(n + 2) / asymptotic_runtime(n);
    REQUIRE(ratio == Catch::Approx(2.0 * std::sqrt(n / (n + 2.0))).epsilon(1e-12));
  }
  // log-space branch continues smoothly past the direct-evaluation range
  CHECK(asymptotic_runtime(901) / asymptotic_runtime(900) ==
        Catch::Approx(std::sqrt(2.0 * 900.0 / 901.0)).epsilon(1e-10));
}

TEST_CASE("runtime formula relations over the supported range", "[analytics]") {
  // The -2 in the true denominator only enlarges the integrand, so the
  // simplified (hypergeometric) value is always below the exact quadrature.
  // The relative difference is NOT monotone: it bottoms out near n=7 and
  // then climbs toward 1 - 2/pi as the singular region's constant-factor
  // contribution takes over.
  double prev = -1.0;
  for (int n = 1; n <= 32; ++n) {
    const double q = quadrature_runtime(n);
    const double h = hypergeometric_runtime(n);
    REQUIRE(h < q);
    const double rel = (q - h) / q;
    if (n >= 4 && n <= 32) {
      REQUIRE(rel > 0.25);
      REQUIRE(rel < 0.40);
    }
    if (n >= 8 && n <= 24) REQUIRE(rel > prev);
    prev = rel;
  }
}

TEST_CASE("hypergeometric approaches the asymptotic form from above", "[analytics]") {
  double prev_gap = 1e9;
  for (int n : {20, 24, 28, 32}) {
    const double ratio = hypergeometric_runtime(n) / asymptotic_runtime(n);
    REQUIRE(ratio >= 0.85);
    REQUIRE(ratio <= 1.15);
    REQUIRE(std::abs(ratio - 1.0) < prev_gap);
    prev_gap = std::abs(ratio - 1.0);
  }
}

TEST_CASE("quantum gap closed form", "[analytics]") {
  CHECK(quantum_gap(0.0, 1024.0) == 1.0);
  CHECK(quantum_gap(1.0, 1024.0) == 1.0);
  CHECK(quantum_gap(0.5, 1024.0) == Catch::Approx(1.0 / 32.0).epsilon(1e-14));
  for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(quantum_gap(s, 1.0) == 1.0);
  CHECK_THROWS_AS(quantum_gap(-0.01, 4.0), domain_error);
  CHECK_THROWS_AS(quantum_gap(1.01, 4.0), domain_error);
  CHECK_THROWS_AS(quantum_gap(0.5, 0.5), domain_error);
  // minimum at s = 1/2
  const double gmin = quantum_gap(0.5, 4096.0);
  for (double h : {1e-3, 0.05, 0.2, 0.5}) {
    REQUIRE(quantum_gap(0.5 + h, 4096.0) > gmin);
    REQUIRE(quantum_gap(0.5 - h, 4096.0) > gmin);
  }
}

TEST_CASE("runtime formula table", "[analytics]") {
  const RuntimeFormulae f = runtime_formulae(10);
  CHECK(f.n == 10);
  CHECK(f.quadrature_T > f.hypergeometric_T);
  CHECK(f.hypergeometric_T > f.asymptotic_T);
  CHECK_THROWS_AS(runtime_formulae(65), capacity_error);
}
