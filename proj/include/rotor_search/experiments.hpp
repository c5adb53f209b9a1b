#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rotor_search/errors.hpp"
#include "rotor_search/fit.hpp"
#include "rotor_search/integrate.hpp"
#include "rotor_search/parallel.hpp"
#include "rotor_search/rng.hpp"
#include "rotor_search/schedule.hpp"
#include "rotor_search/system.hpp"

namespace rotor_search {

struct ExperimentConfig {
  IntegratorConfig integ;
  double hit_tol = 1e-4;          // success: cos(theta_end) <= -1 + hit_tol
  double success_tol = 0.01;      // per-rotor window for P_success readout
  double t_cap = 1e6;             // give-up bound for runtime searches
  double run_time_factor = 1.02;  // perturbed-run duration over first passage
  int threads = 1;

  // Sweeps do not keep trajectories around.
  IntegratorConfig sweep_integ() const {
    IntegratorConfig c = integ;
    c.sample_count = 0;
    return c;
  }
};

namespace detail {

constexpr double kScanStartT = 1.0;    // geometric coarse scan origin
constexpr double kScanGrowth = 1.1;    // coarse scan multiplier
constexpr double kBisectRelWidth = 1e-3;

inline ReducedState annealing_start() {
  return ReducedState{0.0, std::numbers::pi / 2, 0.0};
}

}  // namespace detail

// Unperturbed s = 1/2 first-passage time of the reduced system from
// (pi/2, 0); the constant-schedule notion of runtime.
inline double first_passage_time(int n, const ExperimentConfig& cfg) {
  const Schedule sched(ScheduleKind::constant_half, cfg.t_cap);
  const RunResult run = integrate_reduced(n, sched, detail::annealing_start(),
                                          cfg.sweep_integ(), /*stop_on_hit=*/true);
  if (run.termination != Termination::first_passage || !run.hit_time)
    throw not_found_error("first_passage_time: no passage below t_cap");
  return *run.hit_time;
}

struct ScanPoint {
  double T = 0.0;
  double cos_theta_end = 0.0;
  bool ok = false;
  std::string error;
};

struct RuntimeScan {
  int n = 0;
  ScheduleKind kind = ScheduleKind::linear;
  std::vector<ScanPoint> grid;          // ordered by T
  std::optional<double> t_min;          // first grid T achieving success
  double hit_tolerance = 0.0;           // threshold used for t_min
};

// Final rotor angle as a function of total runtime: one reduced run from
// (pi/2, 0) per grid value, success read off cos(theta_end). Integrator
// failures are recorded per point without aborting the scan. Under the
// constant-half schedule all points lie on one trajectory and t_min is the
// first-passage time instead of a grid value.
inline RuntimeScan final_angle_curve(int n, ScheduleKind kind,
                                     const std::vector<double>& t_grid,
                                     const ExperimentConfig& cfg) {
  if (t_grid.empty()) throw domain_error("final_angle_curve: empty T grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0)) throw domain_error("final_angle_curve: T values must be > 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw domain_error("final_angle_curve: T grid must be ascending");
  }
  RuntimeScan scan;
  scan.n = n;
  scan.kind = kind;
  scan.hit_tolerance = cfg.hit_tol;
  scan.grid.resize(t_grid.size());
  const IntegratorConfig integ = cfg.sweep_integ();

  parallel_for(t_grid.size(), cfg.threads, [&](std::size_t i) {
    ScanPoint& pt = scan.grid[i];
    pt.T = t_grid[i];
    try {
      const Schedule sched(kind, t_grid[i]);
      const RunResult run =
          integrate_reduced(n, sched, detail::annealing_start(), integ, false);
      pt.cos_theta_end = std::cos(run.final_state.theta.at(0));
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  });

  if (kind == ScheduleKind::constant_half) {
    try {
      scan.t_min = first_passage_time(n, cfg);
    } catch (const std::exception&) {
      scan.t_min.reset();
    }
  } else {
    for (const ScanPoint& pt : scan.grid) {
      if (pt.ok && pt.cos_theta_end <= -1.0 + cfg.hit_tol) {
        scan.t_min = pt.T;
        break;
      }
    }
  }
  return scan;
}

// Minimal annealing runtime for the linear and sine schedules: geometric
// coarse scan from T = 1 (x1.1 per step) until cos(theta_end) <= -1+hit_tol
// first holds, then bisection of the bracket to relative width 1e-3.
// Returns the successful end of the refined bracket.
inline double find_min_runtime(int n, ScheduleKind kind, const ExperimentConfig& cfg) {
  if (kind == ScheduleKind::constant_half)
    throw domain_error("find_min_runtime: constant-half uses first_passage_time");
  const IntegratorConfig integ = cfg.sweep_integ();
  auto succeeds = [&](double T) {
    const Schedule sched(kind, T);
    const RunResult run =
        integrate_reduced(n, sched, detail::annealing_start(), integ, false);
    return std::cos(run.final_state.theta.at(0)) <= -1.0 + cfg.hit_tol;
  };

  double hi = detail::kScanStartT;
  double lo = 0.0;
  if (succeeds(hi)) {
    // Already successful at the scan origin: walk down to find a failure.
    lo = hi / detail::kScanGrowth;
    while (lo > 1e-6 && succeeds(lo)) {
      hi = lo;
      lo /= detail::kScanGrowth;
    }
    if (succeeds(lo)) return lo;  // success persists down to the floor
  } else {
    lo = hi;
    do {
      lo = hi;
      hi *= detail::kScanGrowth;
      if (hi > cfg.t_cap)
        throw not_found_error("find_min_runtime: no success below t_cap");
    } while (!succeeds(hi));
  }

  while ((hi - lo) / hi > detail::kBisectRelWidth) {
    const double mid = 0.5 * (lo + hi);
    if (succeeds(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

struct ScalingPoint {
  int n = 0;
  double t_min = 0.0;
  bool ok = false;
  std::string error;
};

struct ScheduleScaling {
  ScheduleKind kind = ScheduleKind::linear;
  std::vector<ScalingPoint> points;
  std::optional<FitResult> fit;  // log2(T_min) vs n over the ok points
  std::vector<std::string> warnings;
};

struct ScalingReport {
  std::vector<ScheduleScaling> per_kind;
};

// Minimal runtime per (schedule, n) with a least-squares slope of
// log2(T_min) against n per schedule. Constant-half runtimes are
// first-passage times; the annealing kinds use find_min_runtime.
inline ScalingReport scaling_sweep(const std::vector<int>& n_values,
                                   const std::vector<ScheduleKind>& kinds,
                                   const ExperimentConfig& cfg) {
  if (n_values.empty()) throw domain_error("scaling_sweep: empty n range");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw domain_error("scaling_sweep: n must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1])
      throw domain_error("scaling_sweep: n range must be ascending");
  }
  ScalingReport report;
  report.per_kind.resize(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    report.per_kind[k].kind = kinds[k];
    report.per_kind[k].points.resize(n_values.size());
  }

  const std::size_t cells = kinds.size() * n_values.size();
  parallel_for(cells, cfg.threads, [&](std::size_t cell) {
    const std::size_t k = cell / n_values.size();
    const std::size_t j = cell % n_values.size();
    ScalingPoint& pt = report.per_kind[k].points[j];
    pt.n = n_values[j];
    try {
      pt.t_min = kinds[k] == ScheduleKind::constant_half
                     ? first_passage_time(pt.n, cfg)
                     : find_min_runtime(pt.n, kinds[k], cfg);
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  });

  for (ScheduleScaling& sched : report.per_kind) {
    std::vector<double> xs, ys;
    for (const ScalingPoint& pt : sched.points) {
      if (pt.ok) {
        xs.push_back(static_cast<double>(pt.n));
        ys.push_back(std::log2(pt.t_min));
      } else {
        sched.warnings.push_back("n=" + std::to_string(pt.n) +
                                 " excluded from fit: " + pt.error);
      }
    }
    if (xs.size() >= 2)
      sched.fit = fit_loglinear(xs, ys);
    else
      sched.warnings.push_back("fit skipped: fewer than 2 points");
  }
  return report;
}

struct SuccessEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;  // binomial: sqrt(p(1-p)/trials)
  long long successes = 0;
  long long trials = 0;
  long long integrator_failures = 0;  // counted as failures, tallied apart
};

// Fraction of perturbed constant-half runs that end with every rotor within
// the success window of its target. Per trial, each rotor starts at
// pi/2 + sigma_i * eps with an independent fair sign sigma_i; the run lasts
// t_run or stops at the first time all angles have crossed pi. Trial t
// draws from the stream derive_seed(seed, t), so thread count and execution
// order cannot affect the estimate.
inline SuccessEstimate success_probability(int n, double eps, double t_run,
                                           long long trials, std::uint64_t seed,
                                           const ExperimentConfig& cfg) {
  if (!(eps >= 0)) throw domain_error("success_probability: eps must be >= 0");
  if (trials < 1) throw domain_error("success_probability: trials must be >= 1");
  if (!(t_run > 0)) throw domain_error("success_probability: t_run must be > 0");

  const SystemSpec spec = SystemSpec::all_ones(n);
  const Schedule sched(ScheduleKind::constant_half, t_run);
  const IntegratorConfig integ = cfg.sweep_integ();
  const double pi_half = std::numbers::pi / 2;

  // 0 = failure, 1 = success, 2 = integrator failure
  std::vector<std::uint8_t> outcome(static_cast<std::size_t>(trials), 0);
  parallel_for(static_cast<std::size_t>(trials), cfg.threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    RotorState init;
    init.theta.resize(static_cast<std::size_t>(n));
    init.omega.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      init.theta[static_cast<std::size_t>(i)] = pi_half + rng.sign() * eps;
    try {
      const RunResult run = integrate_full(spec, sched, init, integ, /*stop_on_hit=*/true);
      bool good = true;
      for (int i = 0; i < n; ++i)
        if (!(std::cos(run.final_state.theta[static_cast<std::size_t>(i)]) <=
              -1.0 + cfg.success_tol)) {
          good = false;
          break;
        }
      outcome[t] = good ? 1 : 0;
    } catch (const std::exception&) {
      outcome[t] = 2;
    }
  });

  SuccessEstimate est;
  est.trials = trials;
  for (auto o : outcome) {
    if (o == 1) ++est.successes;
    if (o == 2) ++est.integrator_failures;
  }
  est.p_hat = static_cast<double>(est.successes) / static_cast<double>(trials);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

struct SensitivityPoint {
  double eps = 0.0;
  double p = 0.0;
  double std_err = 0.0;
  long long integrator_failures = 0;
};

struct SensitivityCurve {
  int n = 0;
  double t_run = 0.0;
  std::vector<SensitivityPoint> points;
  std::optional<double> eps_star;  // interpolated eps at P = 0.9
};

struct SensitivityReport {
  std::vector<SensitivityCurve> curves;
  std::optional<FitResult> fit;  // ln(eps_star) vs n; slope = -alpha
  long long trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> warnings;
};

// Log-spaced default grid, 10^-6 to 1 with 25 points.
inline std::vector<double> default_eps_grid(double eps_min = 1e-6, double eps_max = 1.0,
                                            int points = 25) {
  if (!(eps_min > 0) || !(eps_max > eps_min) || points < 2)
    throw domain_error("default_eps_grid: need 0 < eps_min < eps_max, points >= 2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lmin = std::log(eps_min), lmax = std::log(eps_max);
  for (int j = 0; j < points; ++j)
    grid[static_cast<std::size_t>(j)] =
        std::exp(lmin + (lmax - lmin) * static_cast<double>(j) / (points - 1));
  grid.back() = eps_max;
  return grid;
}

// P_success curves over the eps grid for each n, the interpolated eps at
// P = 0.9 per n, and the log-linear fit of eps_star against n. Run length
// per n is run_time_factor times the unperturbed first-passage time.
// Cell (n, eps index) draws from derive_seed(master_seed, n, eps index).
inline SensitivityReport sensitivity_sweep(const std::vector<int>& n_list,
                                           const std::vector<double>& eps_grid,
                                           long long trials, std::uint64_t master_seed,
                                           const ExperimentConfig& cfg) {
  if (n_list.empty()) throw domain_error("sensitivity_sweep: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw domain_error("sensitivity_sweep: n must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw domain_error("sensitivity_sweep: n list must be ascending");
  }
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0)) throw domain_error("sensitivity_sweep: eps must be > 0");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))
      throw domain_error("sensitivity_sweep: eps grid must be ascending");
  }

  SensitivityReport report;
  report.trials = trials;
  report.master_seed = master_seed;

  for (int n : n_list) {
    SensitivityCurve curve;
    curve.n = n;
    curve.t_run = cfg.run_time_factor * first_passage_time(n, cfg);
    curve.points.reserve(eps_grid.size());
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
      const std::uint64_t cell_seed =
          derive_seed(master_seed, static_cast<std::uint64_t>(n), e);
      const SuccessEstimate est =
          success_probability(n, eps_grid[e], curve.t_run, trials, cell_seed, cfg);
      curve.points.push_back(
          {eps_grid[e], est.p_hat, est.std_err, est.integrator_failures});
    }

    // First downward crossing of P = 0.9, interpolated linearly in
    // (ln eps, P) between the bracketing grid points.
    for (std::size_t k = 0; k + 1 < curve.points.size(); ++k) {
      const double p0 = curve.points[k].p, p1 = curve.points[k + 1].p;
      if (p0 >= 0.9 && p1 < 0.9) {
        const double l0 = std::log(curve.points[k].eps);
        const double l1 = std::log(curve.points[k + 1].eps);
        const double frac = (0.9 - p0) / (p1 - p0);
        curve.eps_star = std::exp(l0 + frac * (l1 - l0));
        break;
      }
    }
    if (!curve.eps_star)
      report.warnings.push_back("n=" + std::to_string(n) +
                                ": P_success curve does not bracket 0.9");
    report.curves.push_back(std::move(curve));
  }

  std::vector<double> xs, ys;
  for (const SensitivityCurve& curve : report.curves)
    if (curve.eps_star) {
      xs.push_back(static_cast<double>(curve.n));
      ys.push_back(std::log(*curve.eps_star));
    }
  if (xs.size() >= 2)
    report.fit = fit_loglinear(xs, ys);
  else
    report.warnings.push_back("eps_star fit skipped: fewer than 2 points");
  return report;
}

// Digital reference: sequential scan for a uniformly random marked item
// among N; the query count is uniform on {1..N} with mean (N+1)/2.
inline double digital_baseline(std::uint64_t N, std::uint64_t seed, long long trials) {
  if (N < 1) throw domain_error("digital_baseline: N must be >= 1");
  if (trials < 1) throw domain_error("digital_baseline: trials must be >= 1");
  Rng rng(derive_seed(seed, 0xd161ull));
  double sum = 0.0;
  for (long long t = 0; t < trials; ++t)
    sum += static_cast<double>(rng.below(N) + 1);
  return sum / static_cast<double>(trials);
}

}  // namespace rotor_search
