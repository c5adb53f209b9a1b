#pragma once

#include <cmath>
#include <numbers>

#include "rotor_search/errors.hpp"
#include "rotor_search/quadrature.hpp"

namespace rotor_search {

namespace detail {

constexpr int kFormulaMaxN = 64;  // runtime-formula table cap

}  // namespace detail

// Constant-schedule runtime as the exact first-passage integral
//   T = int_{pi/2}^{pi} dtheta sqrt( n 2^n / (2^{n+1} sin^{2n}(theta/2) - 2) ).
// The integrand has an inverse-square-root singularity at theta = pi/2
// (the denominator vanishes there); theta = pi/2 + u^2 removes it, and the
// denominator is evaluated as 2*expm1(n*log1p(sin u^2)) to avoid the
// cancellation near u = 0.
inline double quadrature_runtime(int n) {
  if (n < 1) throw domain_error("quadrature_runtime: n must be >= 1");
  if (n > detail::kFormulaMaxN)
    throw capacity_error("quadrature_runtime: n > 64 (formula cap)");
  const double num = std::ldexp(static_cast<double>(n), n);  // n 2^n
  const double limit = std::exp2(0.5 * (n + 1));             // integrand value at u = 0
  auto integrand = [n, num, limit](double u) {
    if (u <= 0.0) return limit;
    const double denom = 2.0 * std::expm1(n * std::log1p(std::sin(u * u)));
    return 2.0 * u * std::sqrt(num / denom);
  };
  const double umax = std::sqrt(std::numbers::pi / 2);
  return detail::adaptive_gk15(integrand, 0.0, umax, 1e-10, 1e-12);
}

// Hypergeometric form of the same runtime with the -2 dropped:
//   T ~= sqrt(n) 2F1(1/2, (n+1)/2; 3/2; 1/2)
// evaluated by the defining power series at z = 1/2. Terms grow until
// k ~ n/2 and then decay geometrically with ratio -> 1/2, so the budget
// 10n + 200 is generous for the supported n <= 64.
inline double hypergeometric_runtime(int n) {
  if (n < 1) throw domain_error("hypergeometric_runtime: n must be >= 1");
  if (n > detail::kFormulaMaxN)
    throw capacity_error("hypergeometric_runtime: n > 64 (formula cap)");
  const double a = 0.5, b = 0.5 * (n + 1), c = 1.5, z = 0.5;
  const int budget = 10 * n + 200;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < budget; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (std::abs(term) <= 1e-12 * std::abs(sum) && k > n) break;
    if (k == budget - 1)
      throw convergence_error("hypergeometric_runtime: series budget exhausted");
  }
  return std::sqrt(static_cast<double>(n)) * sum;
}

// Large-n asymptotic sqrt(2^{n+1}/n); switches to log-space above n = 900
// where 2^{n+1} itself would overflow.
inline double asymptotic_runtime(int n) {
  if (n < 1) throw domain_error("asymptotic_runtime: n must be >= 1");
  if (n <= 900) return std::sqrt(std::ldexp(1.0, n + 1) / n);
  return std::exp2(0.5 * ((n + 1) - std::log2(static_cast<double>(n))));
}

// Adiabatic gap of the interpolated search Hamiltonian,
//   g(s) = sqrt(1 - 4 s (1-s) (1 - 1/N)),
// minimized at s = 1/2 with value 1/sqrt(N).
inline double quantum_gap(double s, double N) {
  if (!(s >= 0.0 && s <= 1.0)) throw domain_error("quantum_gap: s outside [0, 1]");
  if (!(N >= 1.0)) throw domain_error("quantum_gap: N must be >= 1");
  return std::sqrt(1.0 - 4.0 * s * (1.0 - s) * (1.0 - 1.0 / N));
}

// The three runtime formulas side by side; n capped at 64.
struct RuntimeFormulae {
  int n = 0;
  double quadrature_T = 0.0;
  double hypergeometric_T = 0.0;
  double asymptotic_T = 0.0;
};

inline RuntimeFormulae runtime_formulae(int n) {
  if (n > detail::kFormulaMaxN)
    throw capacity_error("runtime_formulae: n > 64 (formula cap)");
  return RuntimeFormulae{n, quadrature_runtime(n), hypergeometric_runtime(n),
                         asymptotic_runtime(n)};
}

}  // namespace rotor_search
