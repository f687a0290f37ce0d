#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace kwlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument, malformed configuration or mismatched shapes.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical failure: non-finite state, failed convergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Configured size cap exceeded (mode count, tuple count).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported binary file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A resonance denominator fell below the guard threshold.
class NearResonance : public NumericalError {
 public:
  NearResonance(const std::string& what, std::string tuple)
      : NumericalError(what + " at " + tuple), tuple_(std::move(tuple)) {}
  const std::string& tuple() const noexcept { return tuple_; }

 private:
  std::string tuple_;
};

}  // namespace kwlab
