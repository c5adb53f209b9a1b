#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "rotor_search/errors.hpp"
#include "rotor_search/system.hpp"

namespace rotor_search {

namespace detail {

// Sign of the marked bit: +1 for m_i = 0, -1 for m_i = 1.
inline double bit_sign(std::uint8_t m) { return m ? -1.0 : 1.0; }

constexpr int kExpansionMaxN = 20;  // 2^n term enumeration cap

}  // namespace detail

// Oracle potential in O(n) product form:
//   V(theta) = -2^-n prod_i (1 + (-1)^{m_i} cos theta_i)
// Each factor lies in [0,2], so V in [-1,0] with the minimum -1 exactly at
// theta_i = m_i pi (mod 2pi).
template <class Real>
Real potential_product(const SystemSpec& spec, std::span<const Real> theta) {
  if (static_cast<int>(theta.size()) != spec.n)
    throw shape_error("potential_product: theta length != n");
  Real prod = 1;
  for (int i = 0; i < spec.n; ++i) {
    const Real sgn = spec.m[static_cast<std::size_t>(i)] ? Real(-1) : Real(1);
    prod *= Real(1) + sgn * std::cos(theta[static_cast<std::size_t>(i)]);
  }
  return -std::ldexp(prod, -spec.n);
}

template <class Real>
Real potential_product(const SystemSpec& spec, const std::vector<Real>& theta) {
  return potential_product<Real>(spec, std::span<const Real>(theta));
}

// Same potential as the explicit sum over all 2^n subsets S of {1..n}:
//   V(theta) = -2^-n sum_S prod_{i in S} (-1)^{m_i} cos theta_i
// Exponential cost; retained as the oracle the product form is checked against.
template <class Real>
Real potential_expansion(const SystemSpec& spec, std::span<const Real> theta) {
  if (static_cast<int>(theta.size()) != spec.n)
    throw shape_error("potential_expansion: theta length != n");
  if (spec.n > detail::kExpansionMaxN)
    throw capacity_error("potential_expansion: n > 20 (2^n terms)");
  std::vector<Real> signed_cos(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    const Real sgn = spec.m[static_cast<std::size_t>(i)] ? Real(-1) : Real(1);
    signed_cos[static_cast<std::size_t>(i)] = sgn * std::cos(theta[static_cast<std::size_t>(i)]);
  }
  const std::uint32_t subsets = 1u << spec.n;
  Real sum = 0;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    Real term = 1;
    for (int i = 0; i < spec.n; ++i)
      if (mask & (1u << i)) term *= signed_cos[static_cast<std::size_t>(i)];
    sum += term;
  }
  return -std::ldexp(sum, -spec.n);
}

template <class Real>
Real potential_expansion(const SystemSpec& spec, const std::vector<Real>& theta) {
  return potential_expansion<Real>(spec, std::span<const Real>(theta));
}

// All n torques tau_r = -dV/dtheta_r in O(n) total:
//   tau_r = -2^-n (-1)^{m_r} sin theta_r prod_{j != r} (1 + (-1)^{m_j} cos theta_j)
// The cross products are assembled from prefix/suffix partial products of the
// factors, so zero factors are handled exactly and nothing is divided.
template <class Real>
void torques(const SystemSpec& spec, std::span<const Real> theta, std::span<Real> tau) {
  if (static_cast<int>(theta.size()) != spec.n || static_cast<int>(tau.size()) != spec.n)
    throw shape_error("torques: theta/tau length != n");
  const auto n = static_cast<std::size_t>(spec.n);
  // suffix[r] = prod_{j > r} f_j, stashed in tau to avoid a second buffer
  tau[n - 1] = 1;
  for (std::size_t r = n - 1; r > 0; --r) {
    const Real sgn = spec.m[r] ? Real(-1) : Real(1);
    tau[r - 1] = tau[r] * (Real(1) + sgn * std::cos(theta[r]));
  }
  Real prefix = 1;
  for (std::size_t r = 0; r < n; ++r) {
    const Real sgn = spec.m[r] ? Real(-1) : Real(1);
    const Real cross = prefix * tau[r];
    tau[r] = -std::ldexp(sgn * std::sin(theta[r]) * cross, -spec.n);
    prefix *= Real(1) + sgn * std::cos(theta[r]);
  }
}

template <class Real>
std::vector<Real> torques(const SystemSpec& spec, const std::vector<Real>& theta) {
  std::vector<Real> tau(theta.size());
  torques<Real>(spec, std::span<const Real>(theta), std::span<Real>(tau));
  return tau;
}

// Effective potential of the symmetric reduction:
//   V_n(theta) = -(1/n) sin^{2n}(theta/2)
template <class Real>
Real effective_potential(int n, Real theta) {
  if (n < 1) throw domain_error("effective_potential: n must be >= 1");
  const Real s = std::sin(theta / 2);
  return -std::pow(s * s, Real(n)) / Real(n);
}

// Force term of the reduced equation, equal to -dV_n/dtheta:
//   F_n(theta) = sin^{2n-1}(theta/2) cos(theta/2)
template <class Real>
Real effective_force(int n, Real theta) {
  if (n < 1) throw domain_error("effective_force: n must be >= 1");
  const Real half = theta / 2;
  const Real s = std::sin(half);
  const Real s2 = s * s;
  return std::pow(s2, Real(n - 1)) * s * std::cos(half);
}

}  // namespace rotor_search
