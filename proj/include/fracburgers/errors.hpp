#pragma once

#include <stdexcept>
#include <string>

namespace fracburgers {

// Root of the library's exception hierarchy. Each subclass maps onto one CLI
// exit code (see app.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid sizes, ranges, unknown keys, inconsistent declared constants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Non-finite samples or malformed input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// State left the admissible set (e.g. w <= 0 where a square root is needed).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double time = 0.0)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// A kernel produced a non-finite value or broke a declared bound.
class KernelError : public Error {
 public:
  using Error::Error;
};

// Non-finite stage or runaway growth during time stepping.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, double time)
      : Error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracburgers
