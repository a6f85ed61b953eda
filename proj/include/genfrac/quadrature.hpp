#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace genfrac {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // >= 0
  long evaluations = 0;
};

/// The adaptive scheme ran out of subdivisions. `best()` is the estimate it had.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& message, IntegralResult best)
      : std::runtime_error(message), best_(best) {}

  const IntegralResult& best() const noexcept { return best_; }

 private:
  IntegralResult best_;
};

/// A node of the unit interval carried with both distances to the endpoints,
/// so integrands near u = 1 never form 1 - u by cancellation.
struct UnitPoint {
  double u;
  double one_minus_u;
  double log_u;
  double log_one_minus_u;
};

using Integrand = std::function<double(double)>;
using UnitIntegrand = std::function<double(const UnitPoint&)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [lo, hi].
IntegralResult integrate_adaptive(const Integrand& f, double lo, double hi,
                                  const QuadratureConfig& cfg = {});

/// Integral over [0, 1] of u^lower_exp * (1 - u)^upper_exp * g(u).
///
/// Both exponents must exceed -1. When either is negative the weight is
/// singular and the integral is computed with tanh-sinh nodes whose weights
/// are formed in log space (the endpoint itself is never sampled); otherwise
/// the bounded integrand goes to the Gauss-Kronrod scheme.
IntegralResult integrate_jacobi(double lower_exp, double upper_exp, const UnitIntegrand& g,
                                const QuadratureConfig& cfg = {});

/// Same as integrate_jacobi but always uses the tanh-sinh endpoint scheme.
IntegralResult integrate_jacobi_tanh_sinh(double lower_exp, double upper_exp,
                                          const UnitIntegrand& g,
                                          const QuadratureConfig& cfg = {});

}  // namespace genfrac
