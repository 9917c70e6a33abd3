#pragma once

#include <stdexcept>
#include <string>

namespace cavnet {

/// Input outside its domain: a spec field, config key or argument.
/// `field()` holds the dotted path of the offending value, e.g.
/// "network.cavities[0].r_in", or is empty when no single field is at fault.
class SpecError : public std::invalid_argument {
 public:
  SpecError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Failure during time integration: non-finite values or a state that no
/// longer passes validation.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(double time_ns, const std::string& message)
      : std::runtime_error("t = " + std::to_string(time_ns) + " ns: " + message),
        time_ns_(time_ns) {}

  double time_ns() const noexcept { return time_ns_; }

 private:
  double time_ns_;
};

}  // namespace cavnet
