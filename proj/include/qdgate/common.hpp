#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdgate {

// Energies are in meV and times in ps throughout.
inline constexpr double kHbar = 0.6582119569;  // meV ps
inline constexpr double kPi = 3.14159265358979323846;

using Complex = std::complex<double>;
using Operator16 = Eigen::Matrix<Complex, 16, 16>;
using RealOperator16 = Eigen::Matrix<double, 16, 16>;
using State16 = Eigen::Matrix<Complex, 16, 1>;

/// Malformed or incomplete run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical precondition failed during a run (step size too large,
/// phase undefined, leakage above a gate-check threshold).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance from `angle` to `target` on the circle, in [0, pi].
double wrapped_distance(double angle, double target);

}  // namespace qdgate
