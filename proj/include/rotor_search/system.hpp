#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rotor_search/errors.hpp"

namespace rotor_search {

// A search instance: n planar rotors and the marked bitstring m whose
// corner configuration theta_i = m_i * pi minimizes the oracle potential.
struct SystemSpec {
  int n = 1;
  std::vector<std::uint8_t> m;  // n bits, each 0 or 1

  SystemSpec() : m{1} {}

  SystemSpec(int n_, std::vector<std::uint8_t> m_) : n(n_), m(std::move(m_)) {
    if (n < 1) throw domain_error("SystemSpec: n must be >= 1");
    if (static_cast<int>(m.size()) != n)
      throw shape_error("SystemSpec: marked bitstring length != n");
    for (auto b : m)
      if (b > 1) throw domain_error("SystemSpec: marked bits must be 0 or 1");
  }

  // All-ones marked state: the frame in which every target angle is pi.
  static SystemSpec all_ones(int n_) {
    return SystemSpec(n_, std::vector<std::uint8_t>(static_cast<std::size_t>(n_), 1));
  }

  // Parses "1011"-style bitstrings.
  static SystemSpec from_string(int n_, const std::string& bits) {
    std::vector<std::uint8_t> m_;
    m_.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw domain_error("SystemSpec: marked bitstring must contain only 0/1");
      m_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return SystemSpec(n_, std::move(m_));
  }

  bool is_all_ones() const {
    for (auto b : m)
      if (!b) return false;
    return true;
  }
};

// Full-system phase-space point. Moment of inertia is fixed to 1, so omega
// is both angular velocity and angular momentum.
struct RotorState {
  double t = 0.0;
  std::vector<double> theta;
  std::vector<double> omega;

  RotorState() = default;
  RotorState(double t_, std::vector<double> th, std::vector<double> om)
      : t(t_), theta(std::move(th)), omega(std::move(om)) {}

  void check_shape(const SystemSpec& spec) const {
    if (static_cast<int>(theta.size()) != spec.n || static_cast<int>(omega.size()) != spec.n)
      throw shape_error("RotorState: theta/omega length != n");
  }
};

// State of the symmetric single-angle reduction.
struct ReducedState {
  double t = 0.0;
  double theta = 0.0;
  double omega = 0.0;
};

// theta_i -> pi - theta_i on every bit with m_i = 0. Sends the marked
// corner to the all-pi configuration; pi/2 is the pointwise fixed point.
template <class Real>
std::vector<Real> gauge_transform(const SystemSpec& spec, const std::vector<Real>& theta) {
  if (static_cast<int>(theta.size()) != spec.n)
    throw shape_error("gauge_transform: theta length != n");
  std::vector<Real> out(theta);
  for (int i = 0; i < spec.n; ++i)
    if (!spec.m[static_cast<std::size_t>(i)])
      out[static_cast<std::size_t>(i)] = std::numbers::pi_v<Real> - out[static_cast<std::size_t>(i)];
  return out;
}

// Velocity counterpart: flipped coordinates reverse their rate of change.
template <class Real>
std::vector<Real> gauge_transform_velocity(const SystemSpec& spec, const std::vector<Real>& omega) {
  if (static_cast<int>(omega.size()) != spec.n)
    throw shape_error("gauge_transform_velocity: omega length != n");
  std::vector<Real> out(omega);
  for (int i = 0; i < spec.n; ++i)
    if (!spec.m[static_cast<std::size_t>(i)])
      out[static_cast<std::size_t>(i)] = -out[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace rotor_search
