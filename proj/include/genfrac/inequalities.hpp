#pragma once

#include <limits>
#include <optional>
#include <string>

#include "genfrac/function_model.hpp"
#include "genfrac/operator.hpp"

namespace genfrac {

enum class TheoremId { T8, T9, T10, T11, T12, T13, T14, T15, ForwardMinkowski, Young, PowerMean };

const char* to_string(TheoremId id);

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

// Constants of the reverse inequalities. Each throws DomainError outside its
// hypotheses (m, M > 0, m <= M; conjugate p, q > 1; positive boxes).
double c1(double m, double M);
double c2(double m, double M);
double c3(double p, double M);
/// 2^(q-1) / (q (m+1)^q)
double c4(double q, double m);
/// Variant with 2^(p-1) in place of 2^(q-1), as printed in the theorem statement.
double c4_statement(double p, double q, double m);
double c5(double a_lo, double A_hi, double b_lo, double B_hi);
double c6(double m, double M);

/// Conjugate exponent p / (p - 1); +inf at p = 1.
double conjugate(double p);

struct CheckConfig {
  double p = 2.0;
  /// T12 parameter; NaN means m / 2.
  double c = std::numeric_limits<double>::quiet_NaN();
  double slack_factor = 2.0;
  /// Use the statement's 2^(p-1) in c4 instead of 2^(q-1).
  bool paper_statement_constants = false;
  QuadratureConfig quad{};

  /// Throws DomainError unless p >= 1 and slack_factor >= 0.
  void validate() const;
  double q() const { return conjugate(p); }
};

/// One evaluated inequality lhs <= rhs (or lower <= lhs <= rhs for the
/// two-sided T12 and T14).
struct InequalityCheck {
  TheoremId theorem = TheoremId::T8;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> lower;
  double constant = 0.0;
  double slack = 0.0;
  bool satisfied = false;
  double lhs_err = 0.0;
  double rhs_err = 0.0;
  double lower_err = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// Smallest gap of the inequality divided by |rhs|; negative when violated.
  double margin = 0.0;
  /// T10: right side with the outer 1/p exponent on the operator term.
  std::optional<double> alternate_rhs;
  std::string note;
};

InequalityCheck check_t8(const PositivePair& pair, const FractionalOperator& op, double x,
                         const CheckConfig& cfg);
InequalityCheck check_t9(const PositivePair& pair, const FractionalOperator& op, double x,
                         const CheckConfig& cfg);
InequalityCheck check_t10(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
InequalityCheck check_t11(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
InequalityCheck check_t12(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
/// Needs a BoxBounded pair (InvalidBounds otherwise).
InequalityCheck check_t13(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
InequalityCheck check_t14(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
InequalityCheck check_t15(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg);
/// (I(f+g)^p)^(1/p) <= (I f^p)^(1/p) + (I g^p)^(1/p)
InequalityCheck check_forward_minkowski(const PositivePair& pair, const FractionalOperator& op,
                                        double x, const CheckConfig& cfg);

/// Dispatch on the theorem id (T8..T15 and ForwardMinkowski).
InequalityCheck run_check(TheoremId id, const PositivePair& pair, const FractionalOperator& op,
                          double x, const CheckConfig& cfg);

/// a b <= a^p/p + b^q/q with q = p/(p-1), a, b >= 0, p > 1.
bool young_holds(double a, double b, double p);
/// (a+b)^r <= 2^(r-1) (a^r + b^r), a, b >= 0, r >= 1.
bool power_mean_holds(double a, double b, double r);
/// Both of the above with exponent r. Comparisons allow a few ulps of rounding.
bool check_scalar_lemmas(double r, double a, double b);

}  // namespace genfrac
