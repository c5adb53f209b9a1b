#pragma once

// Classical rotor analog of adiabatic unstructured search: oracle potential
// and torques, annealing schedules, adaptive integration of the full and
// reduced equations of motion, closed-form runtime formulas, the two-level
// quantum gap reference, and the runtime-scaling / precision-sensitivity
// experiment drivers.

#include "rotor_search/analytics.hpp"
#include "rotor_search/dynamics.hpp"
#include "rotor_search/errors.hpp"
#include "rotor_search/experiments.hpp"
#include "rotor_search/fit.hpp"
#include "rotor_search/integrate.hpp"
#include "rotor_search/parallel.hpp"
#include "rotor_search/potential.hpp"
#include "rotor_search/report.hpp"
#include "rotor_search/rng.hpp"
#include "rotor_search/schedule.hpp"
#include "rotor_search/spin_reference.hpp"
#include "rotor_search/system.hpp"
