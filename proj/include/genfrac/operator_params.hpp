#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace genfrac {

enum class Side { Left, Right };

/// Parameters of the generalized (Katugampola-type) fractional integral
///
///   left:  rho^(1-beta) x^kappa / Gamma(alpha)
///            * int_a^x  t^(rho(eta+1)-1) (x^rho - t^rho)^(alpha-1) f(t) dt
///   right: rho^(1-beta) x^(rho eta) / Gamma(alpha)
///            * int_x^b  t^(kappa+rho-1) (t^rho - x^rho)^(alpha-1) f(t) dt
///
/// `lower` is a, `upper` is b (only read on the right side).
struct OperatorParams {
  double alpha = 1.0;
  double beta = 1.0;
  double rho = 1.0;
  double eta = 0.0;
  double kappa = 0.0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  Side side = Side::Left;
};

enum class ValidationCode {
  NonFinite,
  AlphaNotPositive,
  RhoNotPositive,
  LowerOutOfRange,
  LowerEndpointDivergent,
};

/// Rejection from validate(); code() names the violated condition.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(ValidationCode code, const std::string& message)
      : std::invalid_argument(message), code_(code) {}

  ValidationCode code() const noexcept { return code_; }

 private:
  ValidationCode code_;
};

/// Throws ValidationError on the first violated invariant.
void validate(const OperatorParams& params);

const char* to_string(Side side);

}  // namespace genfrac
