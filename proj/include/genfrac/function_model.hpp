#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace genfrac {

/// Closed interval [lo, hi]; lo may be -inf for whole-half-line operators.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  bool contains(double t) const { return t >= lo && t <= hi; }
  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Bound f(t) <= scale * exp(rate * (t - L)) valid for every t <= L.
struct DecayEnvelope {
  double scale;
  double rate;
};

struct ExprNode;

/// Non-negative real function given by an expression tree, evaluated exactly
/// at any point. Primitive factories check finiteness and positivity on a
/// dense grid of the domain (values may touch zero only at an endpoint, as
/// t^sigma does at t = 0); sums, products and powers of valid functions stay
/// valid. Copies share the immutable tree.
class TestFunction {
 public:
  static TestFunction constant(double c, Interval domain = {});
  static TestFunction monomial(double sigma, Interval domain = {});
  /// sum_k c[k] t^k
  static TestFunction polynomial(std::vector<double> coeffs, Interval domain = {});
  /// exp(sum_k c[k] t^k)
  static TestFunction exp_polynomial(std::vector<double> coeffs, Interval domain = {});
  /// lo + (hi - lo) sin^2(w t + phi)
  static TestFunction sin_squared(double w, double phi, double lo, double hi,
                                  Interval domain = {});
  /// 1 / (1 + exp(-sum_k c[k] t^k))
  static TestFunction logistic(std::vector<double> coeffs, Interval domain = {});

  friend TestFunction operator+(const TestFunction& a, const TestFunction& b);
  friend TestFunction operator*(const TestFunction& a, const TestFunction& b);
  friend TestFunction operator*(double c, const TestFunction& f);
  /// t -> f(t)^p, p >= 0.
  TestFunction pow(double p) const;
  /// t -> f(t + offset); the domain moves by -offset.
  TestFunction shifted(double offset) const;
  /// Same expression on another domain (re-checked).
  TestFunction with_domain(Interval domain) const;

  /// Unchecked evaluation; quadrature nodes call this.
  double operator()(double t) const;

  const Interval& domain() const { return domain_; }

  /// Function-spec string that parse_function() maps back to this tree.
  std::string to_string() const;

  /// Exponential envelope toward -inf at L, when the tree admits one.
  std::optional<DecayEnvelope> decay_envelope(double L) const;

 private:
  TestFunction(std::shared_ptr<const ExprNode> root, Interval domain);
  void check_on_domain() const;

  std::shared_ptr<const ExprNode> root_;
  Interval domain_;

  friend class PairBuilder;
};

/// Checked evaluation. Throws DomainError when t is outside the domain.
double eval_fn(const TestFunction& f, double t);

/// Parses the function-spec mini-language:
///   const:3   mono:sigma=2   poly:c0,c1,...   expoly:c0,c1,...
///   sinpos:w,phi,lo,hi   logistic:c0,c1,...
/// and the combinators add(A;B;...), mul(A;B;...), pow(A;p), shift(A;c).
/// Throws ParseError naming the offending token.
TestFunction parse_function(std::string_view spec, Interval domain = {});

enum class PairKind { RatioBounded, BoxBounded };

struct Box {
  double f_lo;
  double f_hi;
  double g_lo;
  double g_hi;
};

/// f, g positive with m <= f/g <= M on the common domain. Box pairs also
/// carry their boxes; their m, M are the induced f_lo/g_hi and f_hi/g_lo.
struct PositivePair {
  TestFunction f;
  TestFunction g;
  double m;
  double M;
  PairKind kind;
  std::optional<Box> box;
};

/// Seeded ratio-constrained pair: g = exp(P) with |P| <= 1.5 on the domain,
/// f = r g with r = m + (M - m) s and s a seeded smooth map into [0, 1].
/// `complexity` (1..4) sets the degree of P and enables blending s with a
/// logistic of a random polynomial. Throws InvalidBounds unless 0 < m <= M.
PositivePair generate_ratio_pair(std::uint64_t seed, double m, double M, Interval domain,
                                 int complexity = 2);

/// Seeded box-constrained pair: f mapped into [f_lo, f_hi], g into [g_lo, g_hi].
/// Throws InvalidBounds unless 0 < f_lo <= f_hi and 0 < g_lo <= g_hi.
PositivePair generate_box_pair(std::uint64_t seed, double f_lo, double f_hi, double g_lo,
                               double g_hi, Interval domain);

/// Deterministic random stream. Uniform draws are built from raw 64-bit
/// engine output so they are identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a master seed with stream identifiers into an independent seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

}  // namespace genfrac
