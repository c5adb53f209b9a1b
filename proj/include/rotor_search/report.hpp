#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "rotor_search/dynamics.hpp"
#include "rotor_search/experiments.hpp"
#include "rotor_search/integrate.hpp"
#include "rotor_search/schedule.hpp"

namespace rotor_search {

// 17 significant digits: enough for bit-faithful double round trips.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

// Reduced-run trajectory CSV: t, s, theta, omega and the conserved energy
// column for constant-half runs.
inline void write_trajectory_csv(std::ostream& os, const RunResult& run,
                                 const Schedule& sched, int n) {
  const bool with_energy = sched.kind == ScheduleKind::constant_half;
  os << "t,s,theta,omega";
  if (with_energy) os << ",energy";
  os << "\n";
  for (const TrajectorySample& s : run.samples) {
    os << fmt17(s.t) << ','
       << fmt17(schedule_value<double>(sched, std::min(s.t, sched.total_time)))
       << ',' << fmt17(s.theta.at(0)) << ',' << fmt17(s.omega.at(0));
    if (with_energy)
      os << ',' << fmt17(conserved_energy<double>(n, s.theta.at(0), s.omega.at(0)));
    os << "\n";
  }
}

// Full-run trajectory CSV: t, s, theta_1..theta_n, omega_1..omega_n and the
// total energy for constant-half runs.
inline void write_trajectory_csv(std::ostream& os, const RunResult& run,
                                 const Schedule& sched, const SystemSpec& spec) {
  const bool with_energy = sched.kind == ScheduleKind::constant_half;
  os << "t,s";
  for (int i = 1; i <= spec.n; ++i) os << ",theta_" << i;
  for (int i = 1; i <= spec.n; ++i) os << ",omega_" << i;
  if (with_energy) os << ",energy";
  os << "\n";
  for (const TrajectorySample& s : run.samples) {
    os << fmt17(s.t) << ','
       << fmt17(schedule_value<double>(sched, std::min(s.t, sched.total_time)));
    for (double th : s.theta) os << ',' << fmt17(th);
    for (double om : s.omega) os << ',' << fmt17(om);
    if (with_energy)
      os << ',' << fmt17(full_energy<double>(spec, std::span<const double>(s.theta),
                                             std::span<const double>(s.omega)));
    os << "\n";
  }
}

inline void write_runtime_scan_csv(std::ostream& os, const RuntimeScan& scan) {
  os << "T,cos_theta_end\n";
  for (const ScanPoint& pt : scan.grid)
    if (pt.ok) os << fmt17(pt.T) << ',' << fmt17(pt.cos_theta_end) << "\n";
}

inline void write_scaling_csv(std::ostream& os, const ScalingReport& report) {
  os << "kind,n,T_min,log2_T_min\n";
  for (const ScheduleScaling& sched : report.per_kind)
    for (const ScalingPoint& pt : sched.points)
      if (pt.ok)
        os << schedule_name(sched.kind) << ',' << pt.n << ',' << fmt17(pt.t_min) << ','
           << fmt17(std::log2(pt.t_min)) << "\n";
}

inline void write_sensitivity_csv(std::ostream& os, const SensitivityReport& report) {
  os << "n,eps,p_success,std_err\n";
  for (const SensitivityCurve& curve : report.curves)
    for (const SensitivityPoint& pt : curve.points)
      os << curve.n << ',' << fmt17(pt.eps) << ',' << fmt17(pt.p) << ','
         << fmt17(pt.std_err) << "\n";
}

inline void write_sensitivity_fit_csv(std::ostream& os, const SensitivityReport& report) {
  os << "n,eps_star\n";
  for (const SensitivityCurve& curve : report.curves)
    if (curve.eps_star) os << curve.n << ',' << fmt17(*curve.eps_star) << "\n";
}

}  // namespace rotor_search
