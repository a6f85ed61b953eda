#include "genfrac/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "genfrac/errors.hpp"

namespace genfrac {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be at least 1");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked(double value, double where) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << "integrand is not finite (" << value << ") at " << where;
    throw DomainError(msg.str());
  }
  return value;
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 10/21 rule.

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525102311, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod21(const Integrand& f, double lo, double hi, long& evals) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = checked(f(center), center);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (std::size_t k = 0; k < 10; ++k) {
    const double dx = half * kXgk[k];
    f1[k] = checked(f(center - dx), center - dx);
    f2[k] = checked(f(center + dx), center + dx);
    resk += kWgk[k] * (f1[k] + f2[k]);
    resabs += kWgk[k] * (std::abs(f1[k]) + std::abs(f2[k]));
    if (k % 2 == 1) resg += kWg[k / 2] * (f1[k] + f2[k]);
  }
  evals += 21;
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t k = 0; k < 10; ++k) {
    resasc += kWgk[k] * (std::abs(f1[k] - mean) + std::abs(f2[k] - mean));
  }
  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  err = std::max(err, 50.0 * kEps * resabs);
  return {lo, hi, resk * half, err};
}

// ---------------------------------------------------------------------------
// Tanh-sinh rule on a sub-segment [c, d] of [0, 1] with the Jacobi weight
// u^e0 (1-u)^e1 folded into log-space node weights.

constexpr double kTsFirstStep = 0.5;
constexpr double kTsMaxAbscissa = 10.0;
constexpr int kTsMaxLevel = 6;
constexpr double kLogUnderflow = -745.0;

struct TsSegment {
  double c;
  double d;
  double value;
  double error;
};

struct TsContext {
  double e0;
  double e1;
  const UnitIntegrand* g;
  long evals = 0;
};

// Contribution at abscissa tau (without the step factor); |weight-only log| in out_log.
double ts_term(TsContext& ctx, double c, double d, double tau, double& out_log) {
  const double z = std::numbers::pi * std::sinh(tau);
  double v;
  double w;  // 1 - v
  double log_v;
  double log_w;
  if (z >= 0.0) {
    const double e = std::exp(-z);
    const double l1p = std::log1p(e);
    log_v = -l1p;
    log_w = -z - l1p;
    v = 1.0 / (1.0 + e);
    w = e / (1.0 + e);
  } else {
    const double e = std::exp(z);
    const double l1p = std::log1p(e);
    log_v = z - l1p;
    log_w = -l1p;
    v = e / (1.0 + e);
    w = 1.0 / (1.0 + e);
  }
  const double width = d - c;
  const double log_width = std::log(width);
  const double abs_tau = std::abs(tau);
  const double log_cosh =
      abs_tau + std::log1p(std::exp(-2.0 * abs_tau)) - std::numbers::ln2;
  const double log_jac = log_width + std::log(std::numbers::pi) + log_cosh + log_v + log_w;

  UnitPoint pt{};
  if (c == 0.0) {
    pt.u = width * v;
    pt.log_u = log_width + log_v;
  } else {
    pt.u = c + width * v;
    pt.log_u = std::log(pt.u);
  }
  if (d == 1.0) {
    pt.one_minus_u = width * w;
    pt.log_one_minus_u = log_width + log_w;
  } else {
    pt.one_minus_u = (1.0 - d) + width * w;
    pt.log_one_minus_u = std::log(pt.one_minus_u);
  }
  const double log_weight = log_jac + ctx.e0 * pt.log_u + ctx.e1 * pt.log_one_minus_u;
  out_log = log_weight;
  if (log_weight < kLogUnderflow) return 0.0;
  ++ctx.evals;
  const double gv = checked((*ctx.g)(pt), pt.u);
  return std::exp(log_weight) * gv;
}

TsSegment ts_integrate(TsContext& ctx, double c, double d, double abs_target,
                       double rel_tol) {
  // Level 0: walk outward from tau = 0 until the terms are negligible.
  double log_w = 0.0;
  double total = ts_term(ctx, c, d, 0.0, log_w);
  double abs_total = std::abs(total);
  double tail = 0.0;
  double tau_bound[2] = {0.0, 0.0};
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? -1.0 : 1.0;
    int small_run = 0;
    double tau = 0.0;
    double last = 0.0;
    while (true) {
      tau += kTsFirstStep;
      if (tau > kTsMaxAbscissa) {
        tail += std::abs(last) * kTsFirstStep;
        break;
      }
      const double term = ts_term(ctx, c, d, sign * tau, log_w);
      total += term;
      abs_total += std::abs(term);
      last = term;
      tau_bound[side] = tau;
      const bool negligible =
          log_w < kLogUnderflow || std::abs(term) <= 1e-18 * std::abs(total);
      small_run = negligible ? small_run + 1 : 0;
      if (small_run >= 2) break;
    }
  }

  double h = kTsFirstStep;
  double estimate = h * total;
  double diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= kTsMaxLevel; ++level) {
    h *= 0.5;
    double added = 0.0;
    // New nodes sit at odd multiples of h.
    for (long j = 1; j * h <= tau_bound[0]; j += 2) {
      const double term = ts_term(ctx, c, d, -static_cast<double>(j) * h, log_w);
      added += term;
      abs_total += std::abs(term);
    }
    for (long j = 1; j * h <= tau_bound[1]; j += 2) {
      const double term = ts_term(ctx, c, d, static_cast<double>(j) * h, log_w);
      added += term;
      abs_total += std::abs(term);
    }
    total += added;
    const double refined = h * total;
    diff = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 2 && diff <= std::max(abs_target, rel_tol * std::abs(estimate))) break;
  }
  const double rounding = 50.0 * kEps * h * abs_total;
  return {c, d, estimate, diff + rounding + tail};
}

double tolerance(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

}  // namespace

IntegralResult integrate_adaptive(const Integrand& f, double lo, double hi,
                                  const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate_adaptive needs finite limits");
  }
  if (lo == hi) return {0.0, 0.0, 1};
  long evals = 0;
  std::priority_queue<Segment> queue;
  Segment first = kronrod21(f, lo, hi, evals);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int segments = 1;
  while (total_err > tolerance(cfg, total)) {
    if (segments >= cfg.max_subdivisions) {
      throw ConvergenceError("Gauss-Kronrod: subdivision limit reached",
                             {total, total_err, evals});
    }
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw ConvergenceError("Gauss-Kronrod: interval too small to bisect",
                             {total, total_err, evals});
    }
    queue.pop();
    const Segment left = kronrod21(f, worst.lo, mid, evals);
    const Segment right = kronrod21(f, mid, worst.hi, evals);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++segments;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    total_err += queue.top().error;
    queue.pop();
  }
  return {total, total_err, evals};
}

IntegralResult integrate_jacobi_tanh_sinh(double lower_exp, double upper_exp,
                                          const UnitIntegrand& g,
                                          const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(lower_exp > -1.0) || !(upper_exp > -1.0)) {
    throw DomainError("Jacobi weight exponents must exceed -1");
  }
  TsContext ctx{lower_exp, upper_exp, &g};
  std::vector<TsSegment> segments;
  segments.push_back(ts_integrate(ctx, 0.0, 1.0, cfg.abs_tol, cfg.rel_tol));
  auto sum = [&segments]() {
    double value = 0.0;
    double err = 0.0;
    for (const auto& s : segments) {
      value += s.value;
      err += s.error;
    }
    return std::pair{value, err};
  };
  auto [total, total_err] = sum();
  while (total_err > tolerance(cfg, total)) {
    if (static_cast<int>(segments.size()) >= cfg.max_subdivisions) {
      throw ConvergenceError("tanh-sinh: subdivision limit reached",
                             {total, total_err, std::max(ctx.evals, 1L)});
    }
    auto worst = std::max_element(segments.begin(), segments.end(),
                                  [](const auto& a, const auto& b) { return a.error < b.error; });
    const double c = worst->c;
    const double d = worst->d;
    const double mid = 0.5 * (c + d);
    if (!(mid > c && mid < d)) {
      throw ConvergenceError("tanh-sinh: interval too small to bisect",
                             {total, total_err, std::max(ctx.evals, 1L)});
    }
    const double target = 0.5 * (d - c) * tolerance(cfg, total);
    *worst = ts_integrate(ctx, c, mid, target, cfg.rel_tol);
    segments.push_back(ts_integrate(ctx, mid, d, target, cfg.rel_tol));
    std::tie(total, total_err) = sum();
  }
  return {total, total_err, std::max(ctx.evals, 1L)};
}

IntegralResult integrate_jacobi(double lower_exp, double upper_exp, const UnitIntegrand& g,
                                const QuadratureConfig& cfg) {
  if (!(lower_exp > -1.0) || !(upper_exp > -1.0)) {
    throw DomainError("Jacobi weight exponents must exceed -1");
  }
  if (lower_exp < 0.0 || upper_exp < 0.0) {
    return integrate_jacobi_tanh_sinh(lower_exp, upper_exp, g, cfg);
  }
  // Bounded weight: plain adaptive scheme on the product.
  auto bounded = [&](double u) {
    const UnitPoint pt{u, 1.0 - u, std::log(u), std::log1p(-u)};
    const double weight = (lower_exp == 0.0 ? 1.0 : std::pow(u, lower_exp)) *
                          (upper_exp == 0.0 ? 1.0 : std::pow(pt.one_minus_u, upper_exp));
    return weight * g(pt);
  };
  return integrate_adaptive(bounded, 0.0, 1.0, cfg);
}

}  // namespace genfrac
