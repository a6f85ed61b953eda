#pragma once

#include "genfrac/operator_params.hpp"
#include "genfrac/quadrature.hpp"

namespace genfrac {

/// Integral factor of the generalized operator (everything except the
/// rho^(1-beta) x^kappa / Gamma(alpha) prefactor, or x^(rho eta) on the right).
///
/// Left side, a = 0 maps t = x u^(1/rho):
///   x^(rho(eta+alpha)) / rho * int_0^1 u^eta (1-u)^(alpha-1) f(x u^(1/rho)) du
/// Left side, a > 0 maps t^rho = a^rho + (x^rho - a^rho) u and keeps only the
/// (1-u)^(alpha-1) weight. The right side maps t^rho = x^rho + (b^rho - x^rho) u
/// with the u^(alpha-1) weight. The singular endpoint is never sampled.
///
/// Throws DomainError when x is outside the operator's range or when
/// rho(eta+1) <= 0 with a = 0 (divergent at t = 0).
IntegralResult integrate_kernel(const Integrand& f, const OperatorParams& params, double x,
                                const QuadratureConfig& cfg = {});

/// Closed form of the full left operator applied to t^sigma with a = 0:
///   rho^(-beta) x^(kappa + rho(eta+alpha) + sigma) B(eta + sigma/rho + 1, alpha) / Gamma(alpha)
/// Throws DomainError when a != 0 or eta + sigma/rho + 1 <= 0.
double closed_form_monomial(const OperatorParams& params, double sigma, double x);

}  // namespace genfrac
