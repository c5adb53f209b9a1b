#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "rotor_search/potential.hpp"
#include "rotor_search/rng.hpp"
#include "rotor_search/system.hpp"

using namespace rotor_search;

namespace {

constexpr double kPi = std::numbers::pi;

SystemSpec random_spec(int n, Rng& rng) {
  std::vector<std::uint8_t> m(static_cast<std::size_t>(n));
  for (auto& b : m) b = static_cast<std::uint8_t>(rng.next() & 1u);
  return SystemSpec(n, std::move(m));
}

std::vector<double> random_angles(int n, Rng& rng) {
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (auto& t : theta) t = 2 * kPi * rng.uniform01();
  return theta;
}

}  // namespace

TEST_CASE("potential_product at marked and unmarked corners", "[potential]") {
  const SystemSpec spec(2, {1, 1});
  CHECK(potential_product(spec, std::vector<double>{kPi, kPi}) == Catch::Approx(-1.0).margin(1e-15));
  CHECK(potential_product(spec, std::vector<double>{0.0, 0.0}) == Catch::Approx(0.0).margin(1e-15));
  // every factor equals 1 at theta = pi/2, so the value is -2^-n
  const SystemSpec mixed(2, {1, 0});
  CHECK(potential_product(mixed, std::vector<double>{kPi / 2, kPi / 2}) ==
        Catch::Approx(-0.25).margin(1e-15));
}

TEST_CASE("potential_expansion small cases", "[potential]") {
  CHECK(potential_expansion(SystemSpec(1, {1}), std::vector<double>{kPi}) ==
        Catch::Approx(-1.0).margin(1e-15));
  CHECK(potential_expansion(SystemSpec(2, {1, 0}), std::vector<double>{kPi, 0.0}) ==
        Catch::Approx(-1.0).margin(1e-15));
}

TEST_CASE("potential shape and capacity errors", "[potential]") {
  const SystemSpec spec(2, {1, 1});
  CHECK_THROWS_AS(potential_product(spec, std::vector<double>{0.0}), shape_error);
  CHECK_THROWS_AS(potential_expansion(spec, std::vector<double>{0.0, 0.0, 0.0}), shape_error);
  const SystemSpec big = SystemSpec::all_ones(21);
  CHECK_THROWS_AS(potential_expansion(big, std::vector<double>(21, 0.0)), capacity_error);
}

TEST_CASE("product and expansion forms agree on random inputs", "[potential]") {
  Rng rng(0x9a11e7u);
  for (int n = 1; n <= 12; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const SystemSpec spec = random_spec(n, rng);
      const auto theta = random_angles(n, rng);
      const double vp = potential_product(spec, theta);
      const double ve = potential_expansion(spec, theta);
      REQUIRE(std::abs(vp - ve) <= 1e-12);
    }
  }
}

TEST_CASE("potential range and minimizer characterization", "[potential]") {
  Rng rng(0xbeefu);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const SystemSpec spec = random_spec(n, rng);
    const auto theta = random_angles(n, rng);
    const double v = potential_product(spec, theta);
    REQUIRE(v <= 0.0);
    REQUIRE(v >= -1.0);
  }
  // equals -1 iff every angle sits at m_i pi (mod 2pi)
  const SystemSpec spec(3, {1, 0, 1});
  std::vector<double> at_min = {kPi, 0.0, kPi + 2 * kPi};
  CHECK(potential_product(spec, at_min) == Catch::Approx(-1.0).margin(1e-12));
  at_min[1] = 0.3;
  CHECK(potential_product(spec, at_min) > -1.0);
}

TEST_CASE("torque values at hand-checked points", "[torque]") {
  // n=1: the cross product over an empty set is 1
  CHECK(torques(SystemSpec(1, {1}), std::vector<double>{kPi / 2}).at(0) ==
        Catch::Approx(0.5).margin(1e-15));
  const auto tau2 = torques(SystemSpec(2, {1, 0}), std::vector<double>{kPi / 2, kPi / 2});
  CHECK(tau2.at(0) == Catch::Approx(0.25).margin(1e-15));
  CHECK(tau2.at(1) == Catch::Approx(-0.25).margin(1e-15));
  // vanishing neighbor factor 1 - cos 0 = 0 kills the first torque
  const auto tau3 = torques(SystemSpec(2, {1, 1}), std::vector<double>{kPi / 2, 0.0});
  CHECK(tau3.at(0) == 0.0);
}

TEST_CASE("torques match central finite differences", "[torque]") {
  Rng rng(0x70a9u);
  const double h = 1e-5;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(10));
    const SystemSpec spec = random_spec(n, rng);
    auto theta = random_angles(n, rng);
    const auto tau = torques(spec, theta);
    for (int r = 0; r < n; ++r) {
      const double keep = theta[static_cast<std::size_t>(r)];
      theta[static_cast<std::size_t>(r)] = keep + h;
      const double vp = potential_product(spec, theta);
      theta[static_cast<std::size_t>(r)] = keep - h;
      const double vm = potential_product(spec, theta);
      theta[static_cast<std::size_t>(r)] = keep;
      const double fd = -(vp - vm) / (2 * h);
      REQUIRE(std::abs(fd - tau[static_cast<std::size_t>(r)]) <=
              1e-6 * std::abs(tau[static_cast<std::size_t>(r)]) + 1e-10);
    }
  }
}

TEST_CASE("torque directionality pushes each rotor toward its marked angle", "[torque]") {
  Rng rng(0xd123u);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const SystemSpec spec = random_spec(n, rng);
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (auto& t : theta) t = 1e-3 + (kPi - 2e-3) * rng.uniform01();  // interior of (0, pi)
    const auto tau = torques(spec, theta);
    for (int r = 0; r < n; ++r) {
      const double sgn = spec.m[static_cast<std::size_t>(r)] ? -1.0 : 1.0;
      REQUIRE(sgn * tau[static_cast<std::size_t>(r)] <= 0.0);
    }
  }
}

TEST_CASE("effective potential plug-in values", "[potential]") {
  CHECK(effective_potential(4, kPi) == Catch::Approx(-0.25).margin(1e-15));
  CHECK(effective_potential(7, 0.0) == 0.0);
  CHECK(effective_potential(3, kPi / 2) == Catch::Approx(-1.0 / 24.0).margin(1e-15));
}

TEST_CASE("effective potential matches symmetric product potential", "[potential]") {
  // with all angles equal and all-ones m: V = -sin^{2n}(theta/2) = n V_n
  Rng rng(0xfeed5u);
  for (int n = 1; n <= 12; ++n) {
    const SystemSpec spec = SystemSpec::all_ones(n);
    for (int rep = 0; rep < 20; ++rep) {
      const double theta = 2 * kPi * rng.uniform01();
      const std::vector<double> all(static_cast<std::size_t>(n), theta);
      const double v = potential_product(spec, all);
      REQUIRE(std::abs(v - n * effective_potential(n, theta)) <= 1e-12);
    }
  }
}

TEST_CASE("gauge transform maps marked corner to all-pi and is involutive", "[gauge]") {
  const SystemSpec ones = SystemSpec::all_ones(3);
  const std::vector<double> theta = {0.1, 0.2, 0.3};
  CHECK(gauge_transform(ones, theta) == theta);  // all-ones: identity

  const SystemSpec spec(2, {0, 1});
  const auto mapped = gauge_transform(spec, std::vector<double>{0.0, kPi});
  CHECK(mapped.at(0) == Catch::Approx(kPi).margin(1e-15));
  CHECK(mapped.at(1) == Catch::Approx(kPi).margin(1e-15));

  const SystemSpec zeros(3, {0, 0, 0});
  const std::vector<double> half(3, kPi / 2);
  const auto fixed = gauge_transform(zeros, half);
  for (double v : fixed) CHECK(v == Catch::Approx(kPi / 2).margin(1e-15));

  // twice = identity
  Rng rng(0x1234u);
  const SystemSpec mixed(3, {0, 1, 0});
  const auto random = random_angles(3, rng);
  const auto twice = gauge_transform(mixed, gauge_transform(mixed, random));
  for (std::size_t i = 0; i < random.size(); ++i)
    CHECK(twice[i] == Catch::Approx(random[i]).margin(1e-14));
}

TEST_CASE("gauge covariance of potential and torques", "[gauge]") {
  Rng rng(0xabcdu);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const SystemSpec spec = random_spec(n, rng);
    const SystemSpec ones = SystemSpec::all_ones(n);
    const auto theta = random_angles(n, rng);
    const auto mapped = gauge_transform(spec, theta);
    REQUIRE(std::abs(potential_product(spec, theta) - potential_product(ones, mapped)) <=
            1e-14);
    const auto tau = torques(spec, theta);
    const auto tau_mapped = torques(ones, mapped);
    for (int r = 0; r < n; ++r) {
      const double flip = spec.m[static_cast<std::size_t>(r)] ? 1.0 : -1.0;
      REQUIRE(std::abs(tau[static_cast<std::size_t>(r)] -
                       flip * tau_mapped[static_cast<std::size_t>(r)]) <= 1e-14);
    }
  }
}
