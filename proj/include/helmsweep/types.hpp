#ifndef HELMSWEEP_TYPES_HPP
#define HELMSWEEP_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace helmsweep {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr Complex I1{0.0, 1.0};

/// Error thrown on invalid user input (grid sizes, config values, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Error thrown when a matrix turns out singular to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& msg)
      : std::runtime_error(msg) {}
};

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace helmsweep

#endif
