#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rotor_search/errors.hpp"
#include "rotor_search/potential.hpp"
#include "rotor_search/schedule.hpp"
#include "rotor_search/system.hpp"

namespace rotor_search {

// Right-hand side of the full Euler-Lagrange system
//   (1-s) ddot(theta)_i - sdot dot(theta)_i - s tau_i(theta) = 0
// solved for the accelerations:
//   dtheta_i = omega_i
//   domega_i = (sdot omega_i + s tau_i(theta)) / (1 - s)
// The coefficient (1-s) vanishes at s = 1; callers must clamp before that.
template <class Real>
void eom_full_rhs(const SystemSpec& spec, std::span<const Real> theta,
                  std::span<const Real> omega, Real s, Real s_rate,
                  std::span<Real> dtheta, std::span<Real> domega) {
  if (!(s >= 0 && s < 1)) throw domain_error("eom_full_rhs: s must lie in [0, 1)");
  if (static_cast<int>(theta.size()) != spec.n || static_cast<int>(omega.size()) != spec.n ||
      static_cast<int>(dtheta.size()) != spec.n || static_cast<int>(domega.size()) != spec.n)
    throw shape_error("eom_full_rhs: state length != n");
  torques<Real>(spec, theta, domega);  // domega holds tau for now
  const Real inv = Real(1) / (Real(1) - s);
  for (int i = 0; i < spec.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    dtheta[k] = omega[k];
    domega[k] = (s_rate * omega[k] + s * domega[k]) * inv;
  }
}

// Convenience overload on RotorState; the span form is the hot path.
inline void eom_full_rhs(const SystemSpec& spec, const RotorState& state, double s,
                         double s_rate, std::vector<double>& dtheta,
                         std::vector<double>& domega) {
  state.check_shape(spec);
  dtheta.resize(state.theta.size());
  domega.resize(state.omega.size());
  eom_full_rhs<double>(spec, std::span<const double>(state.theta),
                       std::span<const double>(state.omega), s, s_rate,
                       std::span<double>(dtheta), std::span<double>(domega));
}

// Right-hand side of the symmetric single-angle reduction
//   (1-s) ddot(theta) - sdot dot(theta) - s sin^{2n-1}(theta/2) cos(theta/2) = 0
template <class Real>
void eom_reduced_rhs(int n, Real theta, Real omega, Real s, Real s_rate,
                     Real& dtheta, Real& domega) {
  if (!(s >= 0 && s < 1)) throw domain_error("eom_reduced_rhs: s must lie in [0, 1)");
  dtheta = omega;
  domega = (s_rate * omega + s * effective_force<Real>(n, theta)) / (Real(1) - s);
}

inline void eom_reduced_rhs(int n, const ReducedState& state, double s, double s_rate,
                            double& dtheta, double& domega) {
  eom_reduced_rhs<double>(n, state.theta, state.omega, s, s_rate, dtheta, domega);
}

// Energy of the reduced system, conserved along s = 1/2 trajectories:
//   E = omega^2 / 2 - (1/n) sin^{2n}(theta/2)
template <class Real>
Real conserved_energy(int n, Real theta, Real omega) {
  return omega * omega / 2 + effective_potential<Real>(n, theta);
}

inline double conserved_energy(int n, const ReducedState& state) {
  return conserved_energy<double>(n, state.theta, state.omega);
}

// Full-system counterpart, conserved under s = 1/2:
//   E = sum_i omega_i^2 / 2 + V(theta)
template <class Real>
Real full_energy(const SystemSpec& spec, std::span<const Real> theta,
                 std::span<const Real> omega) {
  Real kinetic = 0;
  for (auto w : omega) kinetic += w * w;
  return kinetic / 2 + potential_product<Real>(spec, theta);
}

}  // namespace rotor_search
