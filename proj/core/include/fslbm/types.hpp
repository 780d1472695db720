#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fslbm {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using CellIndex = std::size_t;
inline constexpr CellIndex kNoCell = static_cast<CellIndex>(-1);

// Error hierarchy. The CLI maps each family onto its own exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical or numerical parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Scenario file could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = -1, int column = -1)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line < 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
           message;
  }

  int line_;
  int column_;
};

/// Simulation blew up (NaN or lattice velocity above the stability bound).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fslbm
