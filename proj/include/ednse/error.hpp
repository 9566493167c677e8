// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EDNSE_ERROR_HPP
#define EDNSE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ednse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value is out of range or inconsistent.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, int line, const std::string& what)
      : Error(format(key, line, what)), key_(key), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& what) {
    std::string msg = "config";
    if (line > 0) msg += " line " + std::to_string(line);
    if (!key.empty()) msg += " key '" + key + "'";
    return msg + ": " + what;
  }

  std::string key_;
  int line_;
};

/// The solution left the representable range (non-finite values or an
/// overflowing damping exponent).
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// The discrete energy inequality was violated beyond tolerance.
class EnergyViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ednse

#endif  // EDNSE_ERROR_HPP
