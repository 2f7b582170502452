#pragma once

#include <stdexcept>
#include <string>

namespace hgreg {

enum class ErrorCode {
  pole,
  non_convergence,
  divergence,
  slow_convergence,
  invalid_argument,
  degeneracy_extrapolation,
  branch_mismatch,
  path_clearance,
  step_underflow,
  tolerance_not_met,
  quadrature_not_converged,
  branch_ambiguity,
  retry_exhausted,
  degenerate_tangent,
  bad_prime,
  non_integral_exponent,
  insufficient_coefficients,
  ambiguous_conductor,
  invalid_center,
  step_limit_exceeded,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::pole: return "pole";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::slow_convergence: return "slow-convergence";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::degeneracy_extrapolation: return "parameter-degeneracy-extrapolation-failure";
    case ErrorCode::branch_mismatch: return "branch-mismatch";
    case ErrorCode::path_clearance: return "path-clearance";
    case ErrorCode::step_underflow: return "step-size-underflow";
    case ErrorCode::tolerance_not_met: return "tolerance-not-met";
    case ErrorCode::quadrature_not_converged: return "quadrature-not-converged";
    case ErrorCode::branch_ambiguity: return "branch-ambiguity";
    case ErrorCode::retry_exhausted: return "retry-exhausted";
    case ErrorCode::degenerate_tangent: return "degenerate-tangent";
    case ErrorCode::bad_prime: return "bad-prime";
    case ErrorCode::non_integral_exponent: return "non-integral-exponent";
    case ErrorCode::insufficient_coefficients: return "insufficient-coefficients";
    case ErrorCode::ambiguous_conductor: return "ambiguous-conductor";
    case ErrorCode::invalid_center: return "invalid-center";
    case ErrorCode::step_limit_exceeded: return "step-limit-exceeded";
  }
  return "unknown";
}

// Every failure the library reports carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hgreg
