#include "genfrac/operator.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "genfrac/errors.hpp"
#include "genfrac/special_functions.hpp"

namespace genfrac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindName {
  ClassicalKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ClassicalKind::RiemannLiouville, "riemann-liouville"},
    {ClassicalKind::Hadamard, "hadamard"},
    {ClassicalKind::ErdelyiKober, "erdelyi-kober"},
    {ClassicalKind::Katugampola, "katugampola"},
    {ClassicalKind::Weyl, "weyl"},
    {ClassicalKind::Liouville, "liouville"},
    {ClassicalKind::Generalized, "generalized"},
};

bool near(double value, double target, double tol) { return std::abs(value - target) <= tol; }

bool rl_form(const OperatorParams& p, double tol) {
  return near(p.kappa, 0.0, tol) && near(p.eta, 0.0, tol) && near(p.rho, 1.0, tol);
}

IntegralResult scaled(IntegralResult r, double factor) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

// (1/Gamma(alpha)) int_0^W w^(alpha-1) h(w) dw.
// Below alpha = 1 the weight is removed with v = w^alpha, leaving a bounded
// integrand over [0, W^alpha].
IntegralResult power_weighted(double alpha, double W, const Integrand& h,
                              const QuadratureConfig& cfg) {
  if (!(W >= 0.0) || !std::isfinite(W)) throw DomainError("integration range must be finite");
  if (W == 0.0) return {0.0, 0.0, 1};
  if (alpha < 1.0) {
    const double inv = 1.0 / alpha;
    auto g = [&](double v) { return h(std::pow(v, inv)); };
    return scaled(integrate_adaptive(g, 0.0, std::pow(W, alpha), cfg), 1.0 / gamma_fn(alpha + 1.0));
  }
  auto g = [&](double w) { return alpha == 1.0 ? h(w) : std::pow(w, alpha - 1.0) * h(w); };
  return scaled(integrate_adaptive(g, 0.0, W, cfg), 1.0 / gamma_fn(alpha));
}

void require_left_point(double a, double x) {
  if (!std::isfinite(x) || !(x >= a)) throw DomainError("evaluation point x must satisfy x >= a");
}

void require_covers(const TestFunction& f, double lo, double hi) {
  const Interval& d = f.domain();
  if (!(d.lo <= lo) || !(d.hi >= hi)) {
    std::ostringstream msg;
    msg << "function domain [" << d.lo << ", " << d.hi << "] does not cover [" << lo << ", "
        << hi << "]";
    throw DomainError(msg.str());
  }
}

}  // namespace

const char* to_string(ClassicalKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "generalized";
}

std::optional<ClassicalKind> classical_kind_from_string(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (name == entry.name) return entry.kind;
  }
  return std::nullopt;
}

ClassicalKind reduce_to_classical(const OperatorParams& p, double tol) {
  if (rl_form(p, tol)) {
    return p.lower == -kInf ? ClassicalKind::Weyl : ClassicalKind::RiemannLiouville;
  }
  if (p.lower == -kInf) return ClassicalKind::Generalized;
  if (near(p.beta, 0.0, tol) && near(p.kappa, -p.rho * (p.alpha + p.eta), tol)) {
    return ClassicalKind::ErdelyiKober;
  }
  if (near(p.beta, p.alpha, tol) && near(p.kappa, 0.0, tol) && near(p.eta, 0.0, tol)) {
    return ClassicalKind::Katugampola;
  }
  return ClassicalKind::Generalized;
}

Classification classify(const OperatorParams& p, double tol, double tol_limit) {
  Classification out{reduce_to_classical(p, tol), {}};
  if (out.kind == ClassicalKind::RiemannLiouville && p.lower == 0.0) {
    out.notes.push_back("also liouville: kappa=0, eta=0, rho=1 with a=0");
  }
  if (out.kind == ClassicalKind::Weyl) {
    out.notes.push_back("liouville integral has the same left-sided form");
  }
  if (p.lower == -kInf && out.kind == ClassicalKind::Generalized) {
    out.notes.push_back("a=-inf reduces only with kappa=0, eta=0, rho=1");
  }
  if (near(p.beta, p.alpha, tol) && near(p.kappa, 0.0, tol) && near(p.eta, 0.0, tol) &&
      p.rho > 0.0 && p.rho <= tol_limit) {
    out.notes.push_back("hadamard limit: rho -> 0+ with beta=alpha, kappa=0, eta=0");
  }
  if (p.side == Side::Right) out.notes.push_back("right-sided");
  return out;
}

IntegralResult evaluate(const OperatorParams& p, const Integrand& f, double x,
                        const QuadratureConfig& cfg) {
  IntegralResult r = integrate_kernel(f, p, x, cfg);
  if (r.value == 0.0 && r.error_estimate == 0.0) return r;
  const double log_x = std::log(x);
  const double x_power = p.side == Side::Left ? p.kappa * log_x : p.rho * p.eta * log_x;
  const double log_prefactor = (1.0 - p.beta) * std::log(p.rho) + x_power - log_gamma_fn(p.alpha);
  return scaled(r, std::exp(log_prefactor));
}

IntegralResult evaluate(const OperatorParams& p, const TestFunction& f, double x,
                        const QuadratureConfig& cfg) {
  if (p.side == Side::Left) {
    require_covers(f, p.lower, x);
  } else {
    require_covers(f, x, p.upper);
  }
  return evaluate(p, Integrand(f), x, cfg);
}

IntegralResult evaluate_classical(const ClassicalSpec& s, const Integrand& f, double x,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(s.alpha > 0.0) || !std::isfinite(s.alpha)) throw DomainError("alpha must be positive");
  const double a = s.lower;
  switch (s.kind) {
    case ClassicalKind::RiemannLiouville: {
      if (!std::isfinite(a)) throw DomainError("riemann-liouville needs a finite lower bound");
      require_left_point(a, x);
      return power_weighted(s.alpha, x - a, [&](double w) { return f(x - w); }, cfg);
    }
    case ClassicalKind::Hadamard: {
      if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("hadamard needs a > 0");
      require_left_point(a, x);
      return power_weighted(s.alpha, std::log(x / a),
                            [&](double w) { return f(x * std::exp(-w)); }, cfg);
    }
    case ClassicalKind::Katugampola: {
      if (!(s.rho > 0.0)) throw DomainError("rho must be positive");
      if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("lower bound a must be non-negative");
      require_left_point(a, x);
      // w = x^rho - t^rho
      const double xr = std::pow(x, s.rho);
      auto h = [&](double w) { return f(std::pow(std::max(xr - w, 0.0), 1.0 / s.rho)); };
      return scaled(power_weighted(s.alpha, xr - std::pow(a, s.rho), h, cfg),
                    std::pow(s.rho, -s.alpha));
    }
    case ClassicalKind::ErdelyiKober: {
      const double sigma = s.rho;
      if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
      if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("lower bound a must be non-negative");
      if (a == 0.0 && !(s.eta > -1.0)) throw DomainError("erdelyi-kober with a=0 needs eta > -1");
      require_left_point(a, x);
      const double xs = std::pow(x, sigma);
      auto h = [&](double w) {
        const double ts = std::max(xs - w, 0.0);
        return std::pow(ts, s.eta) * f(std::pow(ts, 1.0 / sigma));
      };
      return scaled(power_weighted(s.alpha, xs - std::pow(a, sigma), h, cfg),
                    std::pow(x, -sigma * (s.alpha + s.eta)));
    }
    case ClassicalKind::Weyl:
    case ClassicalKind::Liouville:
      throw DomainError("weyl and liouville integrals need a test function with a decay envelope");
    case ClassicalKind::Generalized:
      break;
  }
  throw DomainError("generalized operator has no classical definition; use evaluate()");
}

WeylTruncation weyl_truncation(double alpha, const TestFunction& f, double x, double abs_tol) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  const double inv_gamma = 1.0 / gamma_fn(alpha);
  double s0 = 1.0;
  for (int k = 0; k < 64; ++k, s0 *= 2.0) {
    const double cut = x - s0;
    const auto env = f.decay_envelope(cut);
    if (!env) throw DomainError("function " + f.to_string() + " has no decaying envelope toward -inf");
    // (x-t)^(alpha-1) <= s0^(alpha-1) e^((alpha-1)(x-t-s0)/s0) for t <= cut.
    const double rate = alpha <= 1.0 ? env->rate : env->rate - (alpha - 1.0) / s0;
    if (!(rate > 0.0)) continue;
    const double bound = env->scale * std::pow(s0, alpha - 1.0) / rate * inv_gamma;
    if (bound <= abs_tol) return {cut, bound};
  }
  throw DomainError("function " + f.to_string() + " does not decay fast enough toward -inf");
}

IntegralResult evaluate_classical(const ClassicalSpec& s, const TestFunction& f, double x,
                                  const QuadratureConfig& cfg) {
  if (s.kind == ClassicalKind::Weyl || s.kind == ClassicalKind::Liouville) {
    cfg.validate();
    if (f.domain().lo != -kInf) {
      throw DomainError("weyl and liouville integrals need a function defined down to -inf");
    }
    require_covers(f, -kInf, x);
    const WeylTruncation cut = weyl_truncation(s.alpha, f, x, 0.5 * cfg.abs_tol);
    IntegralResult r = evaluate_classical(
        ClassicalSpec{ClassicalKind::RiemannLiouville, s.alpha, cut.cut, 1.0, 0.0}, Integrand(f), x,
        cfg);
    r.error_estimate += cut.tail_bound;
    return r;
  }
  require_covers(f, s.lower, x);
  return evaluate_classical(s, Integrand(f), x, cfg);
}

FractionalOperator FractionalOperator::generalized(const OperatorParams& params) {
  validate(params);
  FractionalOperator op;
  op.params_ = params;
  return op;
}

FractionalOperator FractionalOperator::classical(const ClassicalSpec& spec) {
  if (spec.kind == ClassicalKind::Weyl || spec.kind == ClassicalKind::Liouville ||
      spec.kind == ClassicalKind::Generalized) {
    throw DomainError(std::string("no finite-interval classical definition for ") +
                      to_string(spec.kind));
  }
  FractionalOperator op;
  op.spec_ = spec;
  return op;
}

IntegralResult FractionalOperator::apply(const Integrand& f, double x,
                                         const QuadratureConfig& cfg) const {
  return params_ ? evaluate(*params_, f, x, cfg) : evaluate_classical(*spec_, f, x, cfg);
}

double FractionalOperator::lower() const { return params_ ? params_->lower : spec_->lower; }

std::string FractionalOperator::describe() const {
  std::ostringstream out;
  if (params_) {
    const auto& p = *params_;
    out << "generalized(alpha=" << p.alpha << ", beta=" << p.beta << ", rho=" << p.rho
        << ", eta=" << p.eta << ", kappa=" << p.kappa << ", a=" << p.lower << ")";
  } else {
    const auto& s = *spec_;
    out << to_string(s.kind) << "-direct(alpha=" << s.alpha << ", a=" << s.lower;
    if (s.kind == ClassicalKind::Katugampola) out << ", rho=" << s.rho;
    if (s.kind == ClassicalKind::ErdelyiKober) out << ", sigma=" << s.rho << ", eta=" << s.eta;
    out << ")";
  }
  return out.str();
}

std::vector<OraclePoint> oracle_grid() {
  std::vector<OraclePoint> grid;
  for (double alpha : {0.3, 0.5, 1.0, 1.7, 2.5}) {
    for (double rho : {0.5, 1.0, 2.0}) {
      for (double eta : {0.0, 0.5, 1.0}) {
        for (double kappa : {0.0, 1.0}) {
          for (double beta : {0.0, alpha}) {
            for (double sigma : {0.0, 1.0, 2.0}) {
              OperatorParams p;
              p.alpha = alpha;
              p.beta = beta;
              p.rho = rho;
              p.eta = eta;
              p.kappa = kappa;
              grid.push_back({p, sigma});
            }
          }
        }
      }
    }
  }
  return grid;
}

OracleSweep run_oracle_sweep(double x, const QuadratureConfig& cfg) {
  OracleSweep out;
  for (const auto& point : oracle_grid()) {
    const double sigma = point.sigma;
    const auto r = evaluate(
        point.params, [sigma](double t) { return sigma == 0.0 ? 1.0 : std::pow(t, sigma); }, x, cfg);
    const double exact = closed_form_monomial(point.params, sigma, x);
    const double err = std::abs(r.value - exact);
    const double rel = err / std::abs(exact);
    if (rel > out.max_rel_error || out.points == 0) {
      out.max_rel_error = rel;
      out.worst = point;
    }
    if (err > 0.0) {
      out.max_error_ratio = std::max(
          out.max_error_ratio,
          r.error_estimate > 0.0 ? err / r.error_estimate : std::numeric_limits<double>::infinity());
    }
    out.evaluations += r.evaluations;
    ++out.points;
  }
  return out;
}

}  // namespace genfrac
