#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rotor_search/errors.hpp"

namespace rotor_search {

enum class ScheduleKind {
  constant_half,  // s(t) = 1/2 throughout; runs end by first passage
  linear,         // s(t) = t/T
  sine            // s(t) = sin(pi t / 2T)
};

inline const char* schedule_name(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::constant_half: return "constant";
    case ScheduleKind::linear: return "linear";
    case ScheduleKind::sine: return "sine";
  }
  return "?";
}

inline ScheduleKind schedule_kind_from_name(const std::string& name) {
  if (name == "constant" || name == "constant-half") return ScheduleKind::constant_half;
  if (name == "linear") return ScheduleKind::linear;
  if (name == "sine") return ScheduleKind::sine;
  throw domain_error("unknown schedule kind: " + name);
}

// Annealing profile s(t) on [0, T]. The annealing kinds run from s(0)=0 to
// s(T)=1; constant-half ignores T except as the run duration.
struct Schedule {
  ScheduleKind kind = ScheduleKind::constant_half;
  double total_time = 1.0;

  Schedule() = default;
  Schedule(ScheduleKind k, double T) : kind(k), total_time(T) {
    if (!(T > 0)) throw domain_error("Schedule: total_time must be > 0");
  }
};

template <class Real>
Real schedule_value(const Schedule& sched, Real t) {
  const Real T = static_cast<Real>(sched.total_time);
  if (t < 0 || t > T) throw domain_error("schedule_value: t outside [0, T]");
  switch (sched.kind) {
    case ScheduleKind::constant_half: return Real(0.5);
    case ScheduleKind::linear: return t / T;
    case ScheduleKind::sine: return std::sin(std::numbers::pi_v<Real> * t / (2 * T));
  }
  return Real(0);
}

// Exact analytic derivative ds/dt of schedule_value.
template <class Real>
Real schedule_rate(const Schedule& sched, Real t) {
  const Real T = static_cast<Real>(sched.total_time);
  if (t < 0 || t > T) throw domain_error("schedule_rate: t outside [0, T]");
  switch (sched.kind) {
    case ScheduleKind::constant_half: return Real(0);
    case ScheduleKind::linear: return Real(1) / T;
    case ScheduleKind::sine: {
      const Real w = std::numbers::pi_v<Real> / (2 * T);
      return w * std::cos(w * t);
    }
  }
  return Real(0);
}

// Earliest time with s(t) = s_target, or +infinity when the schedule never
// reaches it (constant-half). Used to clamp integration short of s = 1.
inline double schedule_time_of(const Schedule& sched, double s_target) {
  if (s_target < 0 || s_target > 1)
    throw domain_error("schedule_time_of: s outside [0, 1]");
  switch (sched.kind) {
    case ScheduleKind::constant_half:
      return s_target == 0.5 ? 0.0 : std::numeric_limits<double>::infinity();
    case ScheduleKind::linear:
      return sched.total_time * s_target;
    case ScheduleKind::sine:
      return (2 * sched.total_time / std::numbers::pi) * std::asin(s_target);
  }
  return 0.0;
}

}  // namespace rotor_search
