#pragma once

#include <stdexcept>
#include <string>

namespace tline {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violated a type invariant. `key()` names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& constraint)
      : Error(key + ": " + constraint), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// The requested closed form does not exist for this scenario.
class UnsupportedFormulaError : public Error {
 public:
  using Error::Error;
};

/// An s-domain expression was evaluated on (or numerically at) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tline
