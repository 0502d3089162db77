#pragma once

#include <stdexcept>
#include <string>

namespace omc {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-supplied parameters or config files (CLI exit code 2).
class config_error : public error {
 public:
  using error::error;
};

// Drift matrix has a non-negative eigenvalue real part; no steady state
// (CLI exit code 3).
class instability_error : public error {
 public:
  using error::error;
};

// Realizability or synthesis feasibility violated (CLI exit code 4).
class constraint_error : public error {
 public:
  using error::error;
};

// Numerical kernel failed validation (bad input matrix, resonant solver,
// residual above tolerance).
class numeric_error : public error {
 public:
  using error::error;
};

}  // namespace omc
