#pragma once

#include <stdexcept>
#include <string>

namespace hgcompton {

// Requested scattered energy exceeds what energy conservation allows.
struct KinematicallyForbidden : std::domain_error {
  using std::domain_error::domain_error;
};

// Adaptive integration exhausted its subdivision budget above tolerance.
struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Regularized integral did not converge under width halving.
struct OracleUnconverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Spectrum grid too coarse to resolve the minima it is asked to count.
struct InsufficientResolution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config text could not be read; carries the 1-based offending line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Config parsed but a value violates a bound; names the key.
struct ValidationError : std::runtime_error {
  std::string key;
  ValidationError(std::string key_, const std::string& what_)
      : std::runtime_error(key_ + ": " + what_), key(std::move(key_)) {}
};

}  // namespace hgcompton
