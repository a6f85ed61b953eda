#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genfrac/function_model.hpp"
#include "genfrac/kernel.hpp"
#include "genfrac/operator_params.hpp"
#include "genfrac/quadrature.hpp"

namespace genfrac {

enum class ClassicalKind {
  RiemannLiouville,
  Hadamard,
  ErdelyiKober,
  Katugampola,
  Weyl,
  Liouville,
  Generalized,
};

/// CLI name, e.g. "riemann-liouville".
const char* to_string(ClassicalKind kind);
std::optional<ClassicalKind> classical_kind_from_string(std::string_view name);

/// Which classical integral the parameters reduce to.
///
/// RL-form parameters (kappa = eta = 0, rho = 1; beta is irrelevant there)
/// give Weyl when lower = -inf and RiemannLiouville for any finite a.
/// Then Erdelyi-Kober (beta = 0, kappa = -rho(alpha+eta)), Katugampola
/// (beta = alpha, kappa = eta = 0), otherwise Generalized. Hadamard is a
/// rho -> 0+ limit and never returned here. Accepts lower = -inf; does not
/// validate otherwise.
ClassicalKind reduce_to_classical(const OperatorParams& params, double tol = 1e-9);

struct Classification {
  ClassicalKind kind;
  std::vector<std::string> notes;  // aliases and advisories
};

/// reduce_to_classical plus notes: the Liouville alias at a = 0 and the
/// Hadamard-limit advisory when beta = alpha, kappa = eta = 0 and rho <= tol_limit.
Classification classify(const OperatorParams& params, double tol = 1e-9,
                        double tol_limit = 1e-2);

/// Full generalized operator at x (left: a < x, right: x < b). The error
/// estimate is the quadrature estimate times the prefactor.
IntegralResult evaluate(const OperatorParams& params, const Integrand& f, double x,
                        const QuadratureConfig& cfg = {});
/// Same, after checking that f's domain covers the integration range.
IntegralResult evaluate(const OperatorParams& params, const TestFunction& f, double x,
                        const QuadratureConfig& cfg = {});

/// Parameters of a classical integral evaluated from its own definition.
struct ClassicalSpec {
  ClassicalKind kind = ClassicalKind::RiemannLiouville;
  double alpha = 1.0;
  double lower = 0.0;  // a; unused for Weyl and Liouville
  double rho = 1.0;    // Katugampola rho, Erdelyi-Kober sigma
  double eta = 0.0;    // Erdelyi-Kober eta
};

/// Left-sided classical integral computed directly: each kernel is removed
/// by its own change of variables (v = (x-t)^alpha for RL, v = log(x/t)^alpha
/// for Hadamard, and so on) and the result goes to Gauss-Kronrod. None of
/// this shares code with integrate_kernel, so the two are independent checks.
/// Weyl and Liouville (lower limit -inf) need a TestFunction with a decay
/// envelope; the truncation tail bound is added to error_estimate.
IntegralResult evaluate_classical(const ClassicalSpec& spec, const TestFunction& f, double x,
                                  const QuadratureConfig& cfg = {});
/// Finite-interval kinds only (not Weyl, Liouville or Generalized).
IntegralResult evaluate_classical(const ClassicalSpec& spec, const Integrand& f, double x,
                                  const QuadratureConfig& cfg = {});

struct WeylTruncation {
  double cut;         // L: the integral runs over [L, x]
  double tail_bound;  // bound on the omitted part over (-inf, L)
};

/// Smallest cut x - 2^k (k >= 0) whose tail bound is <= abs_tol.
/// Throws DomainError when f has no decaying envelope toward -inf.
WeylTruncation weyl_truncation(double alpha, const TestFunction& f, double x, double abs_tol);

/// Either a generalized parameter set or a classical definition, applied to
/// plain integrands. The inequality checks only see this interface.
class FractionalOperator {
 public:
  static FractionalOperator generalized(const OperatorParams& params);
  /// Finite-interval classical kinds only.
  static FractionalOperator classical(const ClassicalSpec& spec);

  IntegralResult apply(const Integrand& f, double x, const QuadratureConfig& cfg = {}) const;

  /// Left end of the integration range.
  double lower() const;
  std::string describe() const;

  const std::optional<OperatorParams>& params() const { return params_; }
  const std::optional<ClassicalSpec>& spec() const { return spec_; }

 private:
  std::optional<OperatorParams> params_;
  std::optional<ClassicalSpec> spec_;
};

struct OraclePoint {
  OperatorParams params;
  double sigma;
};

/// alpha in {0.3, 0.5, 1, 1.7, 2.5}, rho in {0.5, 1, 2}, eta in {0, 0.5, 1},
/// kappa in {0, 1}, beta in {0, alpha}, sigma in {0, 1, 2}; a = 0. 540 points.
std::vector<OraclePoint> oracle_grid();

struct OracleSweep {
  int points = 0;
  double max_rel_error = 0.0;
  /// Largest |error| / error_estimate seen (error-estimate honesty).
  double max_error_ratio = 0.0;
  OraclePoint worst{};
  long evaluations = 0;
};

/// evaluate() on t^sigma against closed_form_monomial over oracle_grid().
OracleSweep run_oracle_sweep(double x, const QuadratureConfig& cfg = {});

}  // namespace genfrac
