#include "genfrac/kernel.hpp"

#include <cmath>

#include "genfrac/errors.hpp"
#include "genfrac/special_functions.hpp"

namespace genfrac {

namespace {

IntegralResult scaled(IntegralResult r, double log_scale) {
  const double scale = std::exp(log_scale);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

IntegralResult left_kernel(const Integrand& f, const OperatorParams& p, double x,
                           const QuadratureConfig& cfg) {
  const double a = p.lower;
  if (!(x >= a) || !std::isfinite(x)) {
    throw DomainError("evaluation point x must satisfy x >= a");
  }
  if (x == a) return {0.0, 0.0, 1};
  const double log_x = std::log(x);
  const double rho = p.rho;

  if (a == 0.0) {
    auto g = [&](const UnitPoint& pt) { return f(x * std::exp(pt.log_u / rho)); };
    const double log_scale = rho * (p.eta + p.alpha) * log_x - std::log(rho);
    return scaled(integrate_jacobi(p.eta, p.alpha - 1.0, g, cfg), log_scale);
  }

  // t^rho = x^rho * inner(u), inner = r + q u = 1 - q (1 - u),
  // with r = (a/x)^rho and q = 1 - r.
  const double log_ratio = rho * std::log(a / x);
  const double r = std::exp(log_ratio);
  const double q = -std::expm1(log_ratio);
  auto log_inner = [q, r](const UnitPoint& pt) {
    return q > 0.5 ? std::log(r + q * pt.u) : std::log1p(-q * pt.one_minus_u);
  };
  auto g = [&](const UnitPoint& pt) {
    const double li = log_inner(pt);
    return std::exp(p.eta * li) * f(x * std::exp(li / rho));
  };
  const double log_scale =
      rho * (p.eta + p.alpha) * log_x + p.alpha * std::log(q) - std::log(rho);
  return scaled(integrate_jacobi(0.0, p.alpha - 1.0, g, cfg), log_scale);
}

IntegralResult right_kernel(const Integrand& f, const OperatorParams& p, double x,
                            const QuadratureConfig& cfg) {
  const double b = p.upper;
  if (!std::isfinite(b)) throw DomainError("right-sided evaluation needs a finite upper bound b");
  if (!(x > 0.0) || !(x <= b)) throw DomainError("evaluation point x must satisfy 0 < x <= b");
  if (x == b) return {0.0, 0.0, 1};
  const double rho = p.rho;
  const double log_x = std::log(x);
  // t^rho = x^rho (1 + Q u), Q = (b/x)^rho - 1.
  const double big_q = std::expm1(rho * std::log(b / x));
  auto g = [&](const UnitPoint& pt) {
    const double li = std::log1p(big_q * pt.u);
    return std::exp(p.kappa / rho * li) * f(x * std::exp(li / rho));
  };
  const double log_scale =
      (rho * p.alpha + p.kappa) * log_x + p.alpha * std::log(big_q) - std::log(rho);
  return scaled(integrate_jacobi(p.alpha - 1.0, 0.0, g, cfg), log_scale);
}

}  // namespace

IntegralResult integrate_kernel(const Integrand& f, const OperatorParams& params, double x,
                                const QuadratureConfig& cfg) {
  if (params.side == Side::Left && params.lower == 0.0 &&
      !(params.rho * (params.eta + 1.0) > 0.0)) {
    throw DomainError("rho(eta+1) must be positive when a=0");
  }
  validate(params);
  return params.side == Side::Left ? left_kernel(f, params, x, cfg)
                                   : right_kernel(f, params, x, cfg);
}

double closed_form_monomial(const OperatorParams& p, double sigma, double x) {
  if (p.lower != 0.0) throw DomainError("closed_form_monomial requires a = 0");
  if (!(p.rho > 0.0) || !(p.alpha > 0.0)) {
    throw DomainError("closed_form_monomial requires rho > 0 and alpha > 0");
  }
  const double first = p.eta + sigma / p.rho + 1.0;
  if (!(first > 0.0)) throw DomainError("eta + sigma/rho + 1 must be positive");
  if (!(x > 0.0)) throw DomainError("closed_form_monomial requires x > 0");
  const double exponent = p.kappa + p.rho * (p.eta + p.alpha) + sigma;
  return std::pow(p.rho, -p.beta) * std::pow(x, exponent) * beta_fn(first, p.alpha) /
         gamma_fn(p.alpha);
}

}  // namespace genfrac
