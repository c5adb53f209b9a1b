#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rotor_search/dynamics.hpp"
#include "rotor_search/errors.hpp"
#include "rotor_search/potential.hpp"
#include "rotor_search/schedule.hpp"
#include "rotor_search/system.hpp"

namespace rotor_search {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long long max_steps = 10'000'000;
  double s_clamp = 1e-9;   // integrate only while s <= 1 - s_clamp
  int sample_count = 512;  // uniformly spaced samples retained (0 = none)

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0))
      throw domain_error("IntegratorConfig: tolerances must be > 0");
    if (!(s_clamp > 0) || !(s_clamp < 1))
      throw domain_error("IntegratorConfig: s_clamp must lie in (0, 1)");
    if (max_steps < 1) throw domain_error("IntegratorConfig: max_steps must be >= 1");
    if (sample_count < 0) throw domain_error("IntegratorConfig: sample_count must be >= 0");
  }
};

enum class Termination { reached_end, first_passage, step_budget };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::reached_end: return "reached-end";
    case Termination::first_passage: return "first-passage";
    case Termination::step_budget: return "step-budget";
  }
  return "?";
}

struct TrajectorySample {
  double t = 0.0;
  std::vector<double> theta;
  std::vector<double> omega;
};

struct RunResult {
  std::vector<TrajectorySample> samples;
  RotorState final_state;                   // length-1 vectors for reduced runs
  std::optional<double> hit_time;           // first upward crossing of theta = pi
  std::optional<double> energy_drift;       // max |E(t)-E(0)|; constant-half only
  long long steps_taken = 0;
  Termination termination = Termination::reached_end;

  ReducedState final_reduced() const {
    return ReducedState{final_state.t, final_state.theta.at(0), final_state.omega.at(0)};
  }
};

namespace detail {

// Dormand-Prince 5(4) embedded pair with the first-same-as-last property.
// Substeps reuse k1, so trajectory samples and event refinement cost five
// extra stage evaluations each instead of a dense-output formula.
template <class Real, class Rhs>
class Dopri5 {
 public:
  Dopri5(int dim, Rhs rhs) : dim_(dim), rhs_(std::move(rhs)) {
    for (auto* v : {&k2_, &k3_, &k4_, &k5_, &k6_, &ytmp_}) v->assign(dim_, Real(0));
  }

  // Advances stages k2..k6 from (t, y, k1) with step h and writes the
  // fifth-order solution into ynew. No error estimate.
  void stages(Real t, const std::vector<Real>& y, const std::vector<Real>& k1, Real h,
              std::vector<Real>& ynew) {
    static constexpr Real a21 = Real(1) / 5;
    static constexpr Real a31 = Real(3) / 40, a32 = Real(9) / 40;
    static constexpr Real a41 = Real(44) / 45, a42 = Real(-56) / 15, a43 = Real(32) / 9;
    static constexpr Real a51 = Real(19372) / 6561, a52 = Real(-25360) / 2187,
                          a53 = Real(64448) / 6561, a54 = Real(-212) / 729;
    static constexpr Real a61 = Real(9017) / 3168, a62 = Real(-355) / 33,
                          a63 = Real(46732) / 5247, a64 = Real(49) / 176,
                          a65 = Real(-5103) / 18656;
    static constexpr Real a71 = Real(35) / 384, a73 = Real(500) / 1113,
                          a74 = Real(125) / 192, a75 = Real(-2187) / 6784,
                          a76 = Real(11) / 84;
    static constexpr Real c2 = Real(1) / 5, c3 = Real(3) / 10, c4 = Real(4) / 5,
                          c5 = Real(8) / 9;

    for (int i = 0; i < dim_; ++i) ytmp_[i] = y[i] + h * a21 * k1[i];
    rhs_(t + c2 * h, ytmp_, k2_);
    for (int i = 0; i < dim_; ++i) ytmp_[i] = y[i] + h * (a31 * k1[i] + a32 * k2_[i]);
    rhs_(t + c3 * h, ytmp_, k3_);
    for (int i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a41 * k1[i] + a42 * k2_[i] + a43 * k3_[i]);
    rhs_(t + c4 * h, ytmp_, k4_);
    for (int i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a51 * k1[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(t + c5 * h, ytmp_, k5_);
    for (int i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a61 * k1[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                             a65 * k5_[i]);
    rhs_(t + h, ytmp_, k6_);
    for (int i = 0; i < dim_; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                            a76 * k6_[i]);
  }

  // Full trial step: solution plus embedded fourth-order error estimate.
  // k7 = f(t+h, ynew) is returned for first-same-as-last reuse.
  void step(Real t, const std::vector<Real>& y, const std::vector<Real>& k1, Real h,
            std::vector<Real>& ynew, std::vector<Real>& k7, std::vector<Real>& yerr) {
    static constexpr Real e1 = Real(71) / 57600, e3 = Real(-71) / 16695,
                          e4 = Real(71) / 1920, e5 = Real(-17253) / 339200,
                          e6 = Real(22) / 525, e7 = Real(-1) / 40;
    stages(t, y, k1, h, ynew);
    rhs_(t + h, ynew, k7);
    for (int i = 0; i < dim_; ++i)
      yerr[i] = h * (e1 * k1[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] +
                     e7 * k7[i]);
  }

  int dim() const { return dim_; }
  Rhs& rhs() { return rhs_; }

 private:
  int dim_;
  Rhs rhs_;
  std::vector<Real> k2_, k3_, k4_, k5_, k6_, ytmp_;
};

template <class Real>
Real weighted_rms(const std::vector<Real>& err, const std::vector<Real>& y0,
                  const std::vector<Real>& y1, Real atol, Real rtol) {
  Real sum = 0;
  const auto n = err.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Real sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const Real q = err[i] / sc;
    sum += q * q;
  }
  return std::sqrt(sum / static_cast<Real>(n));
}

// Initial step size heuristic (Hairer, Norsett, Wanner II.4).
template <class Real, class Rhs>
Real initial_step(Rhs& rhs, Real t0, const std::vector<Real>& y0,
                  const std::vector<Real>& f0, Real t_end, Real atol, Real rtol) {
  const auto n = y0.size();
  Real d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real sc = atol + rtol * std::abs(y0[i]);
    const Real a = y0[i] / sc, b = f0[i] / sc;
    d0 += a * a;
    d1 += b * b;
  }
  d0 = std::sqrt(d0 / static_cast<Real>(n));
  d1 = std::sqrt(d1 / static_cast<Real>(n));
  Real h0 = (d0 < Real(1e-5) || d1 < Real(1e-5)) ? Real(1e-6) : Real(0.01) * d0 / d1;
  h0 = std::min(h0, t_end - t0);
  std::vector<Real> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  rhs(t0 + h0, y1, f1);
  Real d2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Real sc = atol + rtol * std::abs(y0[i]);
    const Real q = (f1[i] - f0[i]) / sc;
    d2 += q * q;
  }
  d2 = std::sqrt(d2 / static_cast<Real>(n)) / h0;
  Real h1;
  const Real dm = std::max(d1, d2);
  if (dm <= Real(1e-15))
    h1 = std::max(Real(1e-6), h0 * Real(1e-3));
  else
    h1 = std::pow(Real(0.01) / dm, Real(1) / 5);
  return std::min({Real(100) * h0, h1, t_end - t0});
}

// Adaptive driver shared by the reduced and full integrations.
//
//   Rhs:    void(t, y, dy)          flat state y = [theta..., omega...]
//   Event:  Real(y)                 hit when the value crosses 0 upward
//   Energy: Real(y) or nullptr-like absent via has_energy = false
//   Sink:   void(t, y)              invoked for each retained sample, in order
//
// The caller guarantees t_end is short of any s = 1 singularity; no stage
// time ever exceeds t_end.
template <class Real, class Rhs, class Event, class Energy, class Sink>
struct AdaptiveRun {
  Real t0, t_end;
  const IntegratorConfig& cfg;
  bool stop_on_hit;
  bool has_energy;
  Event event;
  Energy energy;
  Sink sink;

  std::optional<Real> hit_time;
  Real energy_drift = 0;
  long long steps = 0;
  Real t_final = 0;
  Termination termination = Termination::reached_end;

  void run(Dopri5<Real, Rhs>& stepper, std::vector<Real>& y) {
    const int dim = stepper.dim();
    const Real rtol = static_cast<Real>(cfg.rel_tol);
    const Real atol = static_cast<Real>(cfg.abs_tol);

    std::vector<Real> k1(dim), k7(dim), ynew(dim), yerr(dim), yref(dim);
    stepper.rhs()(t0, y, k1);

    // Planned uniform sample times over [t0, t_end].
    std::vector<Real> sample_t;
    if (cfg.sample_count == 1) {
      sample_t.push_back(t0);
    } else if (cfg.sample_count > 1) {
      sample_t.reserve(static_cast<std::size_t>(cfg.sample_count));
      for (int j = 0; j < cfg.sample_count; ++j)
        sample_t.push_back(t0 + (t_end - t0) * static_cast<Real>(j) /
                                    static_cast<Real>(cfg.sample_count - 1));
      sample_t.back() = t_end;
    }
    std::size_t next_sample = 0;
    if (next_sample < sample_t.size() && sample_t[next_sample] <= t0) {
      sink(t0, y);
      ++next_sample;
    }

    Real E0 = 0;
    if (has_energy) E0 = energy(y);
    Real g_old = event(y);

    Real t = t0;
    t_final = t0;
    if (t_end <= t0) {  // empty domain: nothing to do
      termination = Termination::reached_end;
      return;
    }
    Real h = initial_step<Real>(stepper.rhs(), t0, y, k1, t_end, atol, rtol);
    h = std::max(h, Real(16) * std::numeric_limits<Real>::epsilon() * std::max(std::abs(t0), Real(1)));

    const Real hit_tol_t =
        std::max(rtol * std::max(std::abs(t_end), Real(1)),
                 Real(32) * std::numeric_limits<Real>::epsilon() * std::max(std::abs(t_end), Real(1)));

    while (t < t_end) {
      if (steps >= cfg.max_steps) {
        t_final = t;
        termination = Termination::step_budget;
        return;
      }
      bool last = false;
      if (h >= t_end - t) {
        h = t_end - t;
        last = true;
      }

      stepper.step(t, y, k1, h, ynew, k7, yerr);
      ++steps;

      bool finite = true;
      for (int i = 0; i < dim; ++i)
        if (!std::isfinite(ynew[i]) || !std::isfinite(yerr[i])) finite = false;

      Real err = finite ? weighted_rms<Real>(yerr, y, ynew, atol, rtol)
                        : std::numeric_limits<Real>::infinity();

      if (err > 1) {  // reject, shrink
        const Real scale =
            finite ? std::max(Real(0.2), Real(0.9) * std::pow(err, Real(-0.2))) : Real(0.1);
        h *= scale;
        if (h < Real(16) * std::numeric_limits<Real>::epsilon() * std::max(std::abs(t), Real(1)))
          throw blowup_error("integrate: step size underflow (non-finite or stiff state)");
        continue;
      }

      const Real t_new = t + h;

      // Event: first upward crossing of the event function through zero.
      Real g_new = event(ynew);
      bool hit_now = false;
      Real t_hit = t_new;
      if (!hit_time && g_old < 0 && g_new >= 0) {
        // Bisect the step on re-integrated substates; k1 belongs to (t, y).
        Real lo = 0, hi = h;
        for (int it = 0; it < 200 && (hi - lo) > hit_tol_t; ++it) {
          const Real mid = (lo + hi) / 2;
          if (mid <= 0 || mid >= h) break;
          stepper.stages(t, y, k1, mid, yref);
          if (event(yref) >= 0)
            hi = mid;
          else
            lo = mid;
        }
        t_hit = t + hi;
        hit_time = t_hit;
        hit_now = true;
      }

      // Retained samples inside (t, t_new]; cut at the hit when stopping there.
      const Real sample_limit = (hit_now && stop_on_hit) ? t_hit : t_new;
      while (next_sample < sample_t.size() && sample_t[next_sample] <= sample_limit) {
        const Real ts = sample_t[next_sample];
        if (ts >= t_new) {
          sink(t_new, ynew);
        } else {
          stepper.stages(t, y, k1, ts - t, yref);
          sink(ts, yref);
        }
        ++next_sample;
      }

      if (hit_now && stop_on_hit) {
        if (*hit_time < t_new) {
          stepper.stages(t, y, k1, *hit_time - t, yref);
          ynew = yref;
        }
        y = ynew;
        t_final = *hit_time;
        termination = Termination::first_passage;
        if (has_energy) {
          const Real E = energy(y);
          energy_drift = std::max(energy_drift, std::abs(E - E0));
        }
        return;
      }

      // Accept.
      y.swap(ynew);
      k1.swap(k7);  // first-same-as-last
      t = t_new;
      g_old = g_new;
      if (has_energy) {
        const Real E = energy(y);
        energy_drift = std::max(energy_drift, std::abs(E - E0));
      }
      if (last) break;

      const Real scale = err <= std::numeric_limits<Real>::min()
                             ? Real(10)
                             : std::min(Real(10), std::max(Real(0.2), Real(0.9) * std::pow(err, Real(-0.2))));
      h *= scale;
    }
    t_final = t;
    // Rounding can leave the last accepted time an ulp short of t_end;
    // remaining planned samples are flushed with the end state.
    while (next_sample < sample_t.size()) {
      sink(t, y);
      ++next_sample;
    }
    termination = Termination::reached_end;
  }
};

}  // namespace detail

// Integrates the reduced equation from init.t until s reaches 1 - s_clamp
// (annealing kinds) or until sched.total_time (constant-half), whichever is
// sooner. With stop_on_hit the run ends at the first upward crossing of
// theta = pi instead.
template <class Real = double>
RunResult integrate_reduced(int n, const Schedule& sched, const ReducedState& init,
                            const IntegratorConfig& cfg = {}, bool stop_on_hit = false) {
  if (n < 1) throw domain_error("integrate_reduced: n must be >= 1");
  cfg.validate();
  if (!std::isfinite(init.theta) || !std::isfinite(init.omega) || !std::isfinite(init.t))
    throw domain_error("integrate_reduced: non-finite initial state");

  const double t_end_d =
      std::min(sched.total_time, schedule_time_of(sched, 1.0 - cfg.s_clamp));
  const bool track_energy = sched.kind == ScheduleKind::constant_half;

  auto rhs = [&sched, n](Real t, const std::vector<Real>& y, std::vector<Real>& dy) {
    const Real s = schedule_value<Real>(sched, t);
    const Real sr = schedule_rate<Real>(sched, t);
    eom_reduced_rhs<Real>(n, y[0], y[1], s, sr, dy[0], dy[1]);
  };
  auto event = [](const std::vector<Real>& y) { return y[0] - std::numbers::pi_v<Real>; };
  auto energy = [n](const std::vector<Real>& y) {
    return conserved_energy<Real>(n, y[0], y[1]);
  };

  RunResult result;
  auto sink = [&result](Real t, const std::vector<Real>& y) {
    result.samples.push_back({static_cast<double>(t),
                              {static_cast<double>(y[0])},
                              {static_cast<double>(y[1])}});
  };

  detail::Dopri5<Real, decltype(rhs)> stepper(2, rhs);
  std::vector<Real> y = {static_cast<Real>(init.theta), static_cast<Real>(init.omega)};
  detail::AdaptiveRun<Real, decltype(rhs), decltype(event), decltype(energy), decltype(sink)>
      run{static_cast<Real>(init.t), static_cast<Real>(t_end_d), cfg, stop_on_hit,
          track_energy, event, energy, sink};
  run.run(stepper, y);

  result.final_state =
      RotorState(static_cast<double>(run.t_final), {static_cast<double>(y[0])},
                 {static_cast<double>(y[1])});
  result.steps_taken = run.steps;
  result.termination = run.termination;
  if (run.hit_time) result.hit_time = static_cast<double>(*run.hit_time);
  if (track_energy) result.energy_drift = static_cast<double>(run.energy_drift);
  return result;
}

// Full-system integration. Inputs in the lab frame are gauge-transformed to
// the all-ones working frame (every target angle pi), integrated there with
// the single event function min_i theta_i - pi, and mapped back.
template <class Real = double>
RunResult integrate_full(const SystemSpec& spec, const Schedule& sched, const RotorState& init,
                         const IntegratorConfig& cfg = {}, bool stop_on_hit = false) {
  cfg.validate();
  init.check_shape(spec);
  for (int i = 0; i < spec.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!std::isfinite(init.theta[k]) || !std::isfinite(init.omega[k]))
      throw domain_error("integrate_full: non-finite initial state");
  }

  const int n = spec.n;
  const SystemSpec work = SystemSpec::all_ones(n);
  const bool trivial_gauge = spec.is_all_ones();

  const double t_end_d =
      std::min(sched.total_time, schedule_time_of(sched, 1.0 - cfg.s_clamp));
  const bool track_energy = sched.kind == ScheduleKind::constant_half;

  auto rhs = [&sched, &work, n](Real t, const std::vector<Real>& y, std::vector<Real>& dy) {
    const Real s = schedule_value<Real>(sched, t);
    const Real sr = schedule_rate<Real>(sched, t);
    const auto un = static_cast<std::size_t>(n);
    eom_full_rhs<Real>(work, std::span<const Real>(y.data(), un),
                       std::span<const Real>(y.data() + un, un),
                       s, sr, std::span<Real>(dy.data(), un),
                       std::span<Real>(dy.data() + un, un));
  };
  auto event = [n](const std::vector<Real>& y) {
    Real mn = y[0];
    for (int i = 1; i < n; ++i) mn = std::min(mn, y[static_cast<std::size_t>(i)]);
    return mn - std::numbers::pi_v<Real>;
  };
  auto energy = [&work, n](const std::vector<Real>& y) {
    const auto un = static_cast<std::size_t>(n);
    return full_energy<Real>(work, std::span<const Real>(y.data(), un),
                             std::span<const Real>(y.data() + un, un));
  };

  // Map a working-frame flat state back to the lab frame.
  auto to_lab = [&spec, n, trivial_gauge](const std::vector<Real>& y, std::vector<double>& th,
                                          std::vector<double>& om) {
    const auto un = static_cast<std::size_t>(n);
    th.resize(un);
    om.resize(un);
    for (std::size_t i = 0; i < un; ++i) {
      if (!trivial_gauge && !spec.m[i]) {
        th[i] = static_cast<double>(std::numbers::pi_v<Real> - y[i]);
        om[i] = static_cast<double>(-y[un + i]);
      } else {
        th[i] = static_cast<double>(y[i]);
        om[i] = static_cast<double>(y[un + i]);
      }
    }
  };

  RunResult result;
  auto sink = [&result, &to_lab](Real t, const std::vector<Real>& y) {
    TrajectorySample s;
    s.t = static_cast<double>(t);
    to_lab(y, s.theta, s.omega);
    result.samples.push_back(std::move(s));
  };

  // Working-frame initial state.
  std::vector<Real> y(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!trivial_gauge && !spec.m[k]) {
      y[k] = std::numbers::pi_v<Real> - static_cast<Real>(init.theta[k]);
      y[static_cast<std::size_t>(n) + k] = -static_cast<Real>(init.omega[k]);
    } else {
      y[k] = static_cast<Real>(init.theta[k]);
      y[static_cast<std::size_t>(n) + k] = static_cast<Real>(init.omega[k]);
    }
  }

  detail::Dopri5<Real, decltype(rhs)> stepper(2 * n, rhs);
  detail::AdaptiveRun<Real, decltype(rhs), decltype(event), decltype(energy), decltype(sink)>
      run{static_cast<Real>(init.t), static_cast<Real>(t_end_d), cfg, stop_on_hit,
          track_energy, event, energy, sink};
  run.run(stepper, y);

  to_lab(y, result.final_state.theta, result.final_state.omega);
  result.final_state.t = static_cast<double>(run.t_final);
  result.steps_taken = run.steps;
  result.termination = run.termination;
  if (run.hit_time) result.hit_time = static_cast<double>(*run.hit_time);
  if (track_energy) result.energy_drift = static_cast<double>(run.energy_drift);
  return result;
}

}  // namespace rotor_search
