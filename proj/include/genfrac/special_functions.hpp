#pragma once

namespace genfrac {

/// Gamma function for real x > 0. Relative error below 1e-13 up to the
/// overflow point (x ~ 171.6); returns +inf beyond it.
/// Throws DomainError for x <= 0 or NaN.
double gamma_fn(double x);

/// log Gamma(x) for real x > 0, finite for every finite positive x.
double log_gamma_fn(double x);

/// Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
/// Uses the direct product while it is representable and log space otherwise.
double beta_fn(double a, double b);

/// log B(a, b).
double log_beta_fn(double a, double b);

}  // namespace genfrac
