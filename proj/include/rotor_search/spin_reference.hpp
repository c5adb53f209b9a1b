#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rotor_search/analytics.hpp"
#include "rotor_search/errors.hpp"
#include "rotor_search/system.hpp"

namespace rotor_search {

// Diagonal of the projector oracle -|m><m| in the computational basis.
// Basis index convention: bitstring z_1 z_2 ... z_n read as a binary number
// with z_1 the most significant bit, sigma^z |z_i> = (-1)^{z_i} |z_i>.
struct DiagonalOracle {
  int n = 0;
  std::vector<double> entries;  // 2^n values
};

// Builds the oracle diagonal from its Pauli-product expansion. Each basis
// entry is the closed product form of the 2^n-term sign sum:
//   entry(z) = -2^-n prod_i (1 + (-1)^{m_i + z_i})
// which is -1 at z = m and 0 elsewhere.
inline DiagonalOracle build_pauli_expansion(const SystemSpec& spec) {
  if (spec.n > 20) throw capacity_error("build_pauli_expansion: n > 20 (2^n entries)");
  const int n = spec.n;
  DiagonalOracle oracle;
  oracle.n = n;
  const std::uint32_t size = 1u << n;
  oracle.entries.resize(size);
  for (std::uint32_t z = 0; z < size; ++z) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t zi = (z >> (n - 1 - i)) & 1u;  // z_1 is the MSB
      const int parity = (spec.m[static_cast<std::size_t>(i)] + zi) & 1u;
      prod *= 1.0 + (parity ? -1.0 : 1.0);
    }
    oracle.entries[z] = -std::ldexp(prod, -n);
  }
  return oracle;
}

// H(s) = -(1-s)|+><+| - s|m><m| restricted to span{|m>, |+>}, expressed in
// that non-orthogonal basis together with its two nontrivial eigenvalues.
struct TwoLevelBlock {
  double s = 0.0;
  double overlap = 0.0;  // <m|+> = 1/sqrt(N)
  double h_mm = 0.0, h_mp = 0.0, h_pp = 0.0;
  double lambda_minus = 0.0, lambda_plus = 0.0;
};

// Solves the 2x2 generalized eigenproblem H c = lambda S c with overlap
// matrix S = [[1, k], [k, 1]], k = 1/sqrt(N). Only a scalar quadratic:
//   det(H - lambda S) = A lambda^2 - B lambda + C = 0,
//   A = 1 - 1/N,  B = h_mm + h_pp - 2 k h_mp,  C = h_mm h_pp - h_mp^2.
inline TwoLevelBlock two_level_block(double s, int n) {
  if (!(s >= 0.0 && s <= 1.0)) throw domain_error("two_level_block: s outside [0, 1]");
  if (n < 1) throw domain_error("two_level_block: n must be >= 1");
  const double N = std::ldexp(1.0, n);
  const double k = std::sqrt(1.0 / N);

  TwoLevelBlock blk;
  blk.s = s;
  blk.overlap = k;
  blk.h_mm = -(1.0 - s) / N - s;
  blk.h_pp = -(1.0 - s) - s / N;
  blk.h_mp = -(1.0 - s) * k - s * k;

  const double A = 1.0 - 1.0 / N;
  const double B = blk.h_mm + blk.h_pp - 2.0 * k * blk.h_mp;
  const double C = blk.h_mm * blk.h_pp - blk.h_mp * blk.h_mp;
  const double disc = std::sqrt(std::max(0.0, B * B - 4.0 * A * C));
  blk.lambda_minus = (B - disc) / (2.0 * A);
  blk.lambda_plus = (B + disc) / (2.0 * A);
  return blk;
}

// Gap of the two-level block; agrees with quantum_gap(s, 2^n).
inline double two_level_gap(double s, int n) {
  const TwoLevelBlock blk = two_level_block(s, n);
  return blk.lambda_plus - blk.lambda_minus;
}

struct GapScan {
  double s_min = 0.0;   // argmin of g over the grid
  double g_min = 0.0;
  double width = 0.0;   // measure of {s : g(s) <= 2 g_min}
};

// Scans g(s) on a uniform grid and measures the width of the region where
// the gap is within a factor 2 of its minimum. Region boundaries are
// refined by linear interpolation between straddling grid points.
inline GapScan gap_width_scan(int n, int grid_points = 100000) {
  if (n < 2) throw domain_error("gap_width_scan: n must be >= 2");
  if (grid_points < 3) throw domain_error("gap_width_scan: grid too coarse");
  const double N = std::ldexp(1.0, n);

  GapScan scan;
  scan.g_min = 2.0;  // g <= 1 everywhere
  std::vector<double> g(static_cast<std::size_t>(grid_points));
  for (int j = 0; j < grid_points; ++j) {
    const double s = static_cast<double>(j) / (grid_points - 1);
    g[static_cast<std::size_t>(j)] = quantum_gap(s, N);
    if (g[static_cast<std::size_t>(j)] < scan.g_min) {
      scan.g_min = g[static_cast<std::size_t>(j)];
      scan.s_min = s;
    }
  }
  const double thr = 2.0 * scan.g_min;
  int first = -1, last = -1;
  for (int j = 0; j < grid_points; ++j) {
    if (g[static_cast<std::size_t>(j)] <= thr) {
      if (first < 0) first = j;
      last = j;
    }
  }
  if (first < 0) {
    scan.width = 0.0;
    return scan;
  }
  const double h = 1.0 / (grid_points - 1);
  double s_left = first * h;
  if (first > 0) {
    const double g0 = g[static_cast<std::size_t>(first - 1)], g1 = g[static_cast<std::size_t>(first)];
    s_left = (first - 1 + (g0 - thr) / (g0 - g1)) * h;
  }
  double s_right = last * h;
  if (last < grid_points - 1) {
    const double g0 = g[static_cast<std::size_t>(last)], g1 = g[static_cast<std::size_t>(last + 1)];
    s_right = (last + (g0 - thr) / (g0 - g1)) * h;
  }
  scan.width = s_right - s_left;
  return scan;
}

}  // namespace rotor_search
