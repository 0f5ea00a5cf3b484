#pragma once

#include <stdexcept>
#include <string>

namespace deepwave {

enum class ErrorCode {
  domain = 1,            // operation not defined for this grid kind / parameter range
  decay_violation = 2,   // line profile does not decay toward the endpoints
  singular = 3,          // vanishing denominator or singular matrix
  non_finite = 4,        // NaN or infinity in a profile
  config = 5,            // configuration parse or validation failure
  io = 6,
  invalid_argument = 7,
  insufficient_data = 8, // not enough samples for a fit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace deepwave
