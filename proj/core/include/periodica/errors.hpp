#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace periodica {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The number of prominent minima is not a multiple of the period count:
// either the scale or the period count handed to the odometry is wrong.
class OdometryInconsistency : public Error {
 public:
  OdometryInconsistency(std::size_t count, long long periods)
      : Error("odometry: " + std::to_string(count) +
              " prominent minima are not divisible by N=" +
              std::to_string(periods)),
        count_(count),
        periods_(periods) {}

  std::size_t count() const noexcept { return count_; }
  long long periods() const noexcept { return periods_; }

 private:
  std::size_t count_;
  long long periods_;
};

}  // namespace periodica
