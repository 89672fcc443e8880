#pragma once

#include <stdexcept>
#include <string>

namespace nsac {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A specific volume or temperature at or below the positivity floor, or a
/// non-finite value, was found in an interior cell.
class PositivityError : public Error {
 public:
  PositivityError(int cell, std::string field, double x, double value);

  int cell() const noexcept { return cell_; }
  const std::string& field() const noexcept { return field_; }
  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  int cell_;
  std::string field_;
  double x_;
  double value_;
};

/// Configuration text could not be turned into a valid run configuration.
/// `line` is 0 when the problem is not tied to a single line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string key = {});

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace nsac
