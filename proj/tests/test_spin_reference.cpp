#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "rotor_search/potential.hpp"
#include "rotor_search/rng.hpp"
#include "rotor_search/spin_reference.hpp"

using namespace rotor_search;

namespace {

// Independent oracle: the 2^n-term Pauli sign sum, evaluated literally.
double pauli_sum_entry(const SystemSpec& spec, std::uint32_t z) {
  const int n = spec.n;
  double sum = 0.0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    double term = 1.0;
    for (int i = 0; i < n; ++i) {
      if (!(subset & (1u << i))) continue;
      const std::uint32_t zi = (z >> (n - 1 - i)) & 1u;
      if ((spec.m[static_cast<std::size_t>(i)] + zi) & 1u) term = -term;
    }
    sum += term;
  }
  return -std::ldexp(sum, -n);
}

SystemSpec random_spec(int n, Rng& rng) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(n));
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next() & 1u);
  return SystemSpec(n, std::move(m));
}

std::uint32_t marked_index(const SystemSpec& spec) {
  std::uint32_t z = 0;
  for (int i = 0; i < spec.n; ++i)
    z |= static_cast<std::uint32_t>(spec.m[static_cast<std::size_t>(i)]) << (spec.n - 1 - i);
  return z;
}

}  // namespace

TEST_CASE("oracle diagonal for the two-rotor marked state", "[spin]") {
  const DiagonalOracle oracle = build_pauli_expansion(SystemSpec(2, {1, 1}));
  REQUIRE(oracle.entries.size() == 4);
  CHECK(oracle.entries[0] == 0.0);
  CHECK(oracle.entries[1] == 0.0);
  CHECK(oracle.entries[2] == 0.0);
  CHECK(oracle.entries[3] == -1.0);
}

TEST_CASE("oracle equals the brute-force Pauli sum", "[spin]") {
  Rng rng(0x0bacu);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const SystemSpec spec = random_spec(n, rng);
    const DiagonalOracle oracle = build_pauli_expansion(spec);
    for (std::uint32_t z = 0; z < (1u << n); ++z)
      REQUIRE(oracle.entries[z] == pauli_sum_entry(spec, z));
  }
}

TEST_CASE("projector identity: -1 at the marked index, 0 elsewhere", "[spin]") {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint32_t mbits = 0; mbits < (1u << n); ++mbits) {
      std::vector<std::uint8_t> m(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = (mbits >> (n - 1 - i)) & 1u;
      const SystemSpec spec(n, m);
      const DiagonalOracle oracle = build_pauli_expansion(spec);
      for (std::uint32_t z = 0; z < (1u << n); ++z) {
        const double expected = (z == marked_index(spec)) ? -1.0 : 0.0;
        REQUIRE(oracle.entries[z] == expected);
      }
    }
  }
  CHECK_THROWS_AS(build_pauli_expansion(SystemSpec::all_ones(21)), capacity_error);
}

TEST_CASE("rotor potential at corner configurations reproduces the oracle diagonal",
          "[spin]") {
  Rng rng(0xc04e4u);
  constexpr double kPi = std::numbers::pi;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const SystemSpec spec = random_spec(n, rng);
    const DiagonalOracle oracle = build_pauli_expansion(spec);
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
      std::vector<double> corner(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        corner[static_cast<std::size_t>(i)] = ((z >> (n - 1 - i)) & 1u) ? kPi : 0.0;
      REQUIRE(std::abs(potential_product(spec, corner) - oracle.entries[z]) <= 1e-15);
    }
  }
}

TEST_CASE("two-level block structure", "[spin]") {
  const TwoLevelBlock blk = two_level_block(0.3, 6);
  CHECK(blk.overlap == Catch::Approx(0.125).epsilon(1e-15));  // 1/sqrt(64)
  CHECK(blk.h_mm == Catch::Approx(-(0.7 / 64.0) - 0.3).epsilon(1e-14));
  CHECK(blk.h_pp == Catch::Approx(-0.7 - 0.3 / 64.0).epsilon(1e-14));
  CHECK(blk.h_mp == Catch::Approx(-0.125).epsilon(1e-14));
  CHECK(blk.lambda_plus >= blk.lambda_minus);
  CHECK(blk.lambda_plus <= 0.0);
  CHECK(blk.lambda_minus <= 0.0);
}

TEST_CASE("two-level gap equals the closed form", "[spin]") {
  CHECK(two_level_gap(0.5, 10) == Catch::Approx(1.0 / 32.0).epsilon(1e-13));
  CHECK(two_level_gap(0.0, 5) == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(two_level_gap(0.3, 6) == Catch::Approx(quantum_gap(0.3, 64.0)).epsilon(1e-13));
  for (int n = 1; n <= 12; ++n) {
    double worst = 0.0;
    for (int j = 0; j <= 1000; ++j) {
      const double s = j / 1000.0;
      worst = std::max(worst,
                       std::abs(two_level_gap(s, n) - quantum_gap(s, std::ldexp(1.0, n))));
    }
    REQUIRE(worst <= 1e-12);
  }
}

TEST_CASE("gap width scan", "[spin]") {
  const GapScan scan = gap_width_scan(4);
  CHECK(std::abs(scan.s_min - 0.5) <= 1e-5);
  CHECK(scan.g_min == Catch::Approx(0.25).epsilon(1e-8));
  // golden: solving g(s) = 2 g_min gives width sqrt(3K/(1-K)), K = 1/16
  CHECK(scan.width == Catch::Approx(std::sqrt(3.0 / 15.0)).margin(2e-7));
  for (int n : {6, 8, 10}) {
    const double ratio = gap_width_scan(n + 2).width / gap_width_scan(n).width;
    REQUIRE(ratio == Catch::Approx(0.5).margin(0.01));
  }
  CHECK_THROWS_AS(gap_width_scan(1), domain_error);
}
