#ifndef STACKMEC_ERRORS_HPP
#define STACKMEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stackmec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration: degenerate ranges, zero entity counts, bad solver knobs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A loaded or constructed value violates a domain invariant. Carries the field name.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Malformed scenario file: missing sections, wrong types, unknown schema version.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent assignment structure (a UE linked to more than one UAV, stale mirror).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Demand cannot be served: global capacity exceeded or no available UAV can absorb load.
class InfeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Capacity rebalance tripped its oscillation guard.
class RebalanceError : public Error {
 public:
  using Error::Error;
};

/// The closed-form price has a negative radicand; the interior analysis does not apply.
class DegenerateEconomicsError : public Error {
 public:
  using Error::Error;
};

}  // namespace stackmec

#endif  // STACKMEC_ERRORS_HPP
