#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rescat {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Mass conversion used by the CLI layer: masses are given in atomic mass
// units and converted to electron masses (hbar = 1 atomic units internally).
inline constexpr double kElectronMassesPerAmu = 1822.888486;

// Invalid physical input (non-positive mass, bad tail exponent, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Physics-domain violation (energy ceiling, missing barrier, ...).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical non-convergence or instability.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Calibration search failure; carries the sweep trace for diagnostics.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& msg, std::string trace)
      : std::runtime_error(msg), trace_(std::move(trace)) {}
  const std::string& trace() const { return trace_; }

 private:
  std::string trace_;
};

// Configuration file / CLI argument problem.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double square(double x) { return x * x; }

// Fold an angle into (-pi/2, pi/2] by removing the nearest multiple of pi.
inline double fold_half_pi(double angle) {
  double folded = angle - kPi * std::round(angle / kPi);
  if (folded <= -0.5 * kPi) folded += kPi;  // boundary: prefer +pi/2
  return folded;
}

}  // namespace rescat
