#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "rotor_search/errors.hpp"

namespace rotor_search {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares on already-transformed pairs (callers take logs).
// When the total variance of ys is zero the fit is exact and r_squared is
// reported as 1 rather than 0/0.
inline FitResult fit_loglinear(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size()) throw fit_error("fit_loglinear: xs/ys length mismatch");
  if (n < 2) throw fit_error("fit_loglinear: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw fit_error("fit_loglinear: xs have zero variance");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

inline FitResult fit_loglinear(const std::vector<double>& xs, const std::vector<double>& ys) {
  return fit_loglinear(std::span<const double>(xs), std::span<const double>(ys));
}

}  // namespace rotor_search
