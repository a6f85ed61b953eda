#include "genfrac/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

void require_ratio(double m, double M) {
  if (!(m > 0.0) || !(M >= m) || !std::isfinite(M)) {
    throw DomainError("ratio constants need 0 < m <= M");
  }
}

void require_conjugate(double p, double q) {
  if (!(p > 1.0) || !(q > 1.0) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw DomainError("p and q must be conjugate exponents > 1");
  }
}

// Value with a first-order error bound.
struct Val {
  double v;
  double e;
};

Val operator+(Val a, Val b) { return {a.v + b.v, a.e + b.e}; }
Val operator*(Val a, Val b) { return {a.v * b.v, std::abs(a.v) * b.e + std::abs(b.v) * a.e}; }
Val operator*(double c, Val a) { return {c * a.v, std::abs(c) * a.e}; }

Val power(Val a, double s) {
  if (s == 1.0) return a;
  const double v = std::pow(a.v, s);
  return {v, a.v > 0.0 ? std::abs(s) * v / a.v * a.e : 0.0};
}

double pow_fast(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

class Bench {
 public:
  Bench(const PositivePair& pair, const FractionalOperator& op, double x, const CheckConfig& cfg)
      : pair_(pair), op_(op), x_(x), cfg_(cfg) {
    cfg.validate();
    const Interval& df = pair.f.domain();
    const Interval& dg = pair.g.domain();
    const double lo = op.lower();
    if (!(df.lo <= lo && df.hi >= x && dg.lo <= lo && dg.hi >= x)) {
      throw DomainError("pair domain does not cover the integration range [a, x]");
    }
  }

  // I applied to t -> h(f(t), g(t)).
  template <class H>
  Val I(H h) const {
    const TestFunction& f = pair_.f;
    const TestFunction& g = pair_.g;
    auto r = op_.apply([&](double t) { return h(f(t), g(t)); }, x_, cfg_.quad);
    return {r.value, r.error_estimate};
  }

  // (I F^p)^(1/p) with F = h(f, g).
  template <class H>
  Val norm(H h) const {
    const double p = cfg_.p;
    return power(I([&](double fv, double gv) { return pow_fast(h(fv, gv), p); }), 1.0 / p);
  }

  Val norm_f() const {
    return norm([](double fv, double) { return fv; });
  }
  Val norm_g() const {
    return norm([](double, double gv) { return gv; });
  }

  InequalityCheck finish(TheoremId id, double constant, Val lhs, Val rhs,
                         std::optional<Val> lower = std::nullopt) const {
    InequalityCheck out;
    out.theorem = id;
    out.constant = constant;
    out.lhs = lhs.v;
    out.lhs_err = lhs.e;
    out.rhs = rhs.v;
    out.rhs_err = rhs.e;
    double err = lhs.e + rhs.e;
    double gap = rhs.v - lhs.v;
    if (lower) {
      out.lower = lower->v;
      out.lower_err = lower->e;
      err += lower->e;
      gap = std::min(gap, lhs.v - lower->v);
    }
    out.slack = cfg_.slack_factor * err;
    out.satisfied = lhs.v <= rhs.v + out.slack && (!lower || lower->v <= lhs.v + out.slack);
    out.verdict = out.satisfied ? Verdict::Pass : Verdict::Fail;
    out.margin = gap / std::abs(rhs.v);
    return out;
  }

  const PositivePair& pair() const { return pair_; }
  const CheckConfig& cfg() const { return cfg_; }

 private:
  const PositivePair& pair_;
  const FractionalOperator& op_;
  double x_;
  const CheckConfig& cfg_;
};

// Quadrature trouble becomes an inconclusive record instead of an exception.
template <class Body>
InequalityCheck guarded(TheoremId id, Body body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    InequalityCheck out;
    out.theorem = id;
    out.verdict = Verdict::Inconclusive;
    out.note = e.what();
    return out;
  }
}

void require_p_above_one(const CheckConfig& cfg, const char* which) {
  if (!(cfg.p > 1.0)) throw DomainError(std::string(which) + " needs p > 1");
}

}  // namespace

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T8: return "T8";
    case TheoremId::T9: return "T9";
    case TheoremId::T10: return "T10";
    case TheoremId::T11: return "T11";
    case TheoremId::T12: return "T12";
    case TheoremId::T13: return "T13";
    case TheoremId::T14: return "T14";
    case TheoremId::T15: return "T15";
    case TheoremId::ForwardMinkowski: return "ForwardMinkowski";
    case TheoremId::Young: return "Young";
    case TheoremId::PowerMean: return "PowerMean";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

double c1(double m, double M) {
  require_ratio(m, M);
  return (M * (m + 1.0) + (M + 1.0)) / ((m + 1.0) * (M + 1.0));
}

double c2(double m, double M) {
  require_ratio(m, M);
  return (M + 1.0) * (m + 1.0) / M - 2.0;
}

double c3(double p, double M) {
  if (!(p > 1.0)) throw DomainError("c3 needs p > 1");
  if (!(M > 0.0)) throw DomainError("c3 needs M > 0");
  return std::pow(2.0, p - 1.0) * std::pow(M, p) / (p * std::pow(M + 1.0, p));
}

double c4(double q, double m) {
  if (!(q > 1.0)) throw DomainError("c4 needs q > 1");
  if (!(m > 0.0)) throw DomainError("c4 needs m > 0");
  return std::pow(2.0, q - 1.0) / (q * std::pow(m + 1.0, q));
}

double c4_statement(double p, double q, double m) {
  require_conjugate(p, q);
  if (!(m > 0.0)) throw DomainError("c4 needs m > 0");
  return std::pow(2.0, p - 1.0) / (q * std::pow(m + 1.0, q));
}

double c5(double a_lo, double A_hi, double b_lo, double B_hi) {
  if (!(a_lo > 0.0) || !(b_lo > 0.0) || !(A_hi >= a_lo) || !(B_hi >= b_lo)) {
    throw DomainError("c5 needs 0 < a <= A and 0 < b <= B");
  }
  return (A_hi * (a_lo + B_hi) + B_hi * (A_hi + b_lo)) / ((A_hi + b_lo) * (a_lo + B_hi));
}

double c6(double m, double M) {
  require_ratio(m, M);
  return 1.0 / ((m + 1.0) * (M + 1.0));
}

double conjugate(double p) {
  if (!(p >= 1.0)) throw DomainError("exponent p must be >= 1");
  return p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0);
}

void CheckConfig::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be >= 1");
  if (!(slack_factor >= 0.0)) throw DomainError("slack_factor must be >= 0");
  quad.validate();
}

InequalityCheck check_t8(const PositivePair& pair, const FractionalOperator& op, double x,
                         const CheckConfig& cfg) {
  Bench b(pair, op, x, cfg);
  const double k = c1(pair.m, pair.M);
  return guarded(TheoremId::T8, [&] {
    const Val lhs = b.norm_f() + b.norm_g();
    const Val rhs = k * b.norm([](double fv, double gv) { return fv + gv; });
    return b.finish(TheoremId::T8, k, lhs, rhs);
  });
}

InequalityCheck check_t9(const PositivePair& pair, const FractionalOperator& op, double x,
                         const CheckConfig& cfg) {
  Bench b(pair, op, x, cfg);
  const double k = c2(pair.m, pair.M);
  return guarded(TheoremId::T9, [&] {
    const Val nf = b.norm_f();
    const Val ng = b.norm_g();
    const Val lhs = k * (nf * ng);
    const Val rhs = power(nf, 2.0) + power(ng, 2.0);
    return b.finish(TheoremId::T9, k, lhs, rhs);
  });
}

InequalityCheck check_t10(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  require_p_above_one(cfg, "T10");
  Bench b(pair, op, x, cfg);
  const double p = cfg.p;
  const double q = cfg.q();
  const double k = std::pow(pair.M / pair.m, 1.0 / (p * q));
  return guarded(TheoremId::T10, [&] {
    const Val i_f = b.I([](double fv, double) { return fv; });
    const Val i_g = b.I([](double, double gv) { return gv; });
    const Val i_mix = b.I([&](double fv, double gv) {
      return std::pow(fv, 1.0 / p) * std::pow(gv, 1.0 / q);
    });
    const Val lhs = power(i_f, 1.0 / p) * power(i_g, 1.0 / q);
    InequalityCheck out = b.finish(TheoremId::T10, k, lhs, k * i_mix);
    out.alternate_rhs = k * std::pow(i_mix.v, 1.0 / p);
    return out;
  });
}

InequalityCheck check_t11(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  require_p_above_one(cfg, "T11");
  Bench b(pair, op, x, cfg);
  const double p = cfg.p;
  const double q = cfg.q();
  const double k3 = c3(p, pair.M);
  const double k4 = cfg.paper_statement_constants ? c4_statement(p, q, pair.m) : c4(q, pair.m);
  return guarded(TheoremId::T11, [&] {
    const Val lhs = b.I([](double fv, double gv) { return fv * gv; });
    const Val sum_p = b.I([&](double fv, double gv) { return pow_fast(fv, p) + pow_fast(gv, p); });
    const Val sum_q = b.I([&](double fv, double gv) { return pow_fast(fv, q) + pow_fast(gv, q); });
    InequalityCheck out = b.finish(TheoremId::T11, k4, lhs, k3 * sum_p + k4 * sum_q);
    if (cfg.paper_statement_constants) out.note = "c4 with 2^(p-1)";
    return out;
  });
}

InequalityCheck check_t12(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  const double m = pair.m;
  const double M = pair.M;
  const double c = std::isnan(cfg.c) ? 0.5 * m : cfg.c;
  if (!(c > 0.0) || !(c < m)) throw DomainError("T12 needs 0 < c < m");
  Bench b(pair, op, x, cfg);
  return guarded(TheoremId::T12, [&] {
    const Val n_diff = b.norm([c](double fv, double gv) { return fv - c * gv; });
    const Val middle = b.norm_f() + b.norm_g();
    const Val lower = ((M + 1.0) / (M - c)) * n_diff;
    const Val upper = ((m + 1.0) / (m - c)) * n_diff;
    return b.finish(TheoremId::T12, c, middle, upper, lower);
  });
}

InequalityCheck check_t13(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  if (pair.kind != PairKind::BoxBounded || !pair.box) {
    throw InvalidBounds("T13 needs a box-bounded pair");
  }
  const Box& box = *pair.box;
  Bench b(pair, op, x, cfg);
  const double k = c5(box.f_lo, box.f_hi, box.g_lo, box.g_hi);
  return guarded(TheoremId::T13, [&] {
    const Val lhs = b.norm_f() + b.norm_g();
    const Val rhs = k * b.norm([](double fv, double gv) { return fv + gv; });
    return b.finish(TheoremId::T13, k, lhs, rhs);
  });
}

InequalityCheck check_t14(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  Bench b(pair, op, x, cfg);
  const double k = c6(pair.m, pair.M);
  return guarded(TheoremId::T14, [&] {
    const Val i_fg = b.I([](double fv, double gv) { return fv * gv; });
    const Val middle = k * b.I([](double fv, double gv) { return (fv + gv) * (fv + gv); });
    return b.finish(TheoremId::T14, k, middle, (1.0 / pair.m) * i_fg, (1.0 / pair.M) * i_fg);
  });
}

InequalityCheck check_t15(const PositivePair& pair, const FractionalOperator& op, double x,
                          const CheckConfig& cfg) {
  Bench b(pair, op, x, cfg);
  const double m = pair.m;
  const double M = pair.M;
  require_ratio(m, M);
  return guarded(TheoremId::T15, [&] {
    const Val lhs = b.norm_f() + b.norm_g();
    const Val rhs = 2.0 * b.norm([m, M](double fv, double gv) {
      return std::max(M * ((M / m + 1.0) * fv - M * gv), ((m + M) * gv - fv) / m);
    });
    return b.finish(TheoremId::T15, 2.0, lhs, rhs);
  });
}

InequalityCheck check_forward_minkowski(const PositivePair& pair, const FractionalOperator& op,
                                        double x, const CheckConfig& cfg) {
  Bench b(pair, op, x, cfg);
  return guarded(TheoremId::ForwardMinkowski, [&] {
    const Val lhs = b.norm([](double fv, double gv) { return fv + gv; });
    const Val rhs = b.norm_f() + b.norm_g();
    return b.finish(TheoremId::ForwardMinkowski, 1.0, lhs, rhs);
  });
}

InequalityCheck run_check(TheoremId id, const PositivePair& pair, const FractionalOperator& op,
                          double x, const CheckConfig& cfg) {
  switch (id) {
    case TheoremId::T8: return check_t8(pair, op, x, cfg);
    case TheoremId::T9: return check_t9(pair, op, x, cfg);
    case TheoremId::T10: return check_t10(pair, op, x, cfg);
    case TheoremId::T11: return check_t11(pair, op, x, cfg);
    case TheoremId::T12: return check_t12(pair, op, x, cfg);
    case TheoremId::T13: return check_t13(pair, op, x, cfg);
    case TheoremId::T14: return check_t14(pair, op, x, cfg);
    case TheoremId::T15: return check_t15(pair, op, x, cfg);
    case TheoremId::ForwardMinkowski: return check_forward_minkowski(pair, op, x, cfg);
    case TheoremId::Young:
    case TheoremId::PowerMean: break;
  }
  throw DomainError(std::string("no operator check for ") + to_string(id));
}

namespace {
// Rounding allowance for the scalar lemmas: both sides are a handful of
// correctly rounded operations.
constexpr double kScalarUlps = 16.0 * std::numeric_limits<double>::epsilon();
}  // namespace

bool young_holds(double a, double b, double p) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(p > 1.0)) throw DomainError("young needs a, b >= 0, p > 1");
  const double q = p / (p - 1.0);
  const double rhs = std::pow(a, p) / p + std::pow(b, q) / q;
  return a * b <= rhs * (1.0 + kScalarUlps);
}

bool power_mean_holds(double a, double b, double r) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(r >= 1.0)) {
    throw DomainError("power mean needs a, b >= 0, r >= 1");
  }
  const double lhs = std::pow(a + b, r);
  const double rhs = std::pow(2.0, r - 1.0) * (std::pow(a, r) + std::pow(b, r));
  return lhs <= rhs * (1.0 + kScalarUlps);
}

bool check_scalar_lemmas(double r, double a, double b) {
  return young_holds(a, b, r) && power_mean_holds(a, b, r);
}

}  // namespace genfrac
