#pragma once

#include <stdexcept>
#include <string>

namespace nlnet {

  // Invalid scenario/network/kernel parameters. Maps to exit code 1.
  class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // Argument outside the domain of a function (e.g. density above rho_max).
  class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
  };

  // Density left [0, rho_max] after a step. Maps to exit code 2.
  class CflViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // Malformed scenario file; message names the offending field.
  class ParseError : public ConfigError {
  public:
    using ConfigError::ConfigError;
  };

}  // namespace nlnet
