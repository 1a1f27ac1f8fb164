#pragma once

#include <stdexcept>
#include <string>

namespace surf2m {

/// Failure categories raised by the library. Every throwing operation
/// documents which of these it can raise.
enum class Errc {
  NonConvergence,     ///< iteration/subdivision budget exhausted before tolerance
  NonFinite,          ///< integrand produced inf/NaN at an interior point
  OutOfRange,         ///< target lies outside the range of a monotone function
  DegenerateSlope,    ///< a slope entering a negative power is below threshold
  DegenerateFactor,   ///< a product factor entering a negative power is below threshold
  DegenerateGradient, ///< all gradient components are zero
  DegenerateTangent,  ///< tangent vectors are numerically parallel
  InfeasibleModuli,   ///< squared moduli of the solved coefficients are negative
  DomainViolation,    ///< integration path leaves the positivity domain
  InvalidArgument,    ///< construction-time parameter validation failed
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::NonFinite: return "NonFinite";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::DegenerateSlope: return "DegenerateSlope";
    case Errc::DegenerateFactor: return "DegenerateFactor";
    case Errc::DegenerateGradient: return "DegenerateGradient";
    case Errc::DegenerateTangent: return "DegenerateTangent";
    case Errc::InfeasibleModuli: return "InfeasibleModuli";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace surf2m
