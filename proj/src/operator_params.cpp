#include "genfrac/operator_params.hpp"

#include <cmath>

namespace genfrac {

void validate(const OperatorParams& p) {
  for (double v : {p.alpha, p.beta, p.rho, p.eta, p.kappa, p.lower}) {
    if (!std::isfinite(v)) {
      throw ValidationError(ValidationCode::NonFinite, "parameters must be finite");
    }
  }
  if (!(p.alpha > 0.0)) {
    throw ValidationError(ValidationCode::AlphaNotPositive, "alpha must be positive");
  }
  if (!(p.rho > 0.0)) {
    throw ValidationError(ValidationCode::RhoNotPositive, "rho must be positive");
  }
  if (p.lower < 0.0) {
    throw ValidationError(ValidationCode::LowerOutOfRange, "lower bound a must be non-negative");
  }
  // t^(rho(eta+1)-1) must be integrable at t = 0.
  if (p.side == Side::Left && p.lower == 0.0 && !(p.rho * (p.eta + 1.0) > 0.0)) {
    throw ValidationError(ValidationCode::LowerEndpointDivergent,
                          "rho(eta+1) must be positive when a=0");
  }
}

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

}  // namespace genfrac
