#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "rotor_search/errors.hpp"

namespace rotor_search::detail {

// Gauss-Kronrod 15(7) pair on [-1, 1].
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kGk15WeightsK = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule (odd-indexed Kronrod nodes).
inline constexpr std::array<double, 4> kGk15WeightsG = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& kronrod, double& gauss) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double rk = 0.0, rg = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double x = half * kGk15Nodes[i];
    const double fv = (i == 7) ? f(c) : f(c - x) + f(c + x);
    rk += kGk15WeightsK[i] * fv;
    if (i % 2 == 1) rg += kGk15WeightsG[i / 2] * fv;  // odd indices = Gauss-7 nodes
  }
  kronrod = rk * half;
  gauss = rg * half;
}

// Recursive bisection on the 15(7) pair. Accepts an interval when the
// rule difference is below the local budget; smooth integrands only.
template <class F>
double adaptive_gk15(const F& f, double a, double b, double abs_tol, double rel_tol,
                     int depth = 0) {
  double k = 0.0, g = 0.0;
  gk15(f, a, b, k, g);
  const double err = std::abs(k - g);
  if (err <= abs_tol || err <= rel_tol * std::abs(k) || depth >= 60) {
    if (depth >= 60 && !(err <= abs_tol || err <= rel_tol * std::abs(k)))
      throw convergence_error("adaptive_gk15: recursion depth exhausted");
    return k;
  }
  const double c = 0.5 * (a + b);
  return adaptive_gk15(f, a, c, abs_tol / 2, rel_tol, depth + 1) +
         adaptive_gk15(f, c, b, abs_tol / 2, rel_tol, depth + 1);
}

}  // namespace rotor_search::detail
