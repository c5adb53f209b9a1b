#pragma once

#include <stdexcept>
#include <string>

namespace rotor_search {

// Input vector length does not match the system size.
struct shape_error : std::invalid_argument {
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a hard size cap (2^n enumeration, formula table, ...).
struct capacity_error : std::length_error {
  explicit capacity_error(const std::string& what) : std::length_error(what) {}
};

// Scalar argument outside its admissible range (t outside [0,T], s >= 1, ...).
struct domain_error : std::domain_error {
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// State became non-finite or the step size underflowed during integration.
struct blowup_error : std::runtime_error {
  explicit blowup_error(const std::string& what) : std::runtime_error(what) {}
};

// Series or iteration failed to converge within its budget.
struct convergence_error : std::runtime_error {
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A scan or search ended without locating what it was asked for.
struct not_found_error : std::runtime_error {
  explicit not_found_error(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate input to a least-squares fit (zero abscissa variance).
struct fit_error : std::invalid_argument {
  explicit fit_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rotor_search
