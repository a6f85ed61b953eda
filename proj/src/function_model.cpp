#include "genfrac/function_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <variant>

#include "genfrac/errors.hpp"

namespace genfrac {

using NodePtr = std::shared_ptr<const ExprNode>;

struct Constant {
  double c;
};
struct Monomial {
  double sigma;
};
struct Polynomial {
  std::vector<double> c;
};
struct ExpPolynomial {
  std::vector<double> c;
};
struct SinSquared {
  double w, phi, lo, hi;
};
struct Logistic {
  std::vector<double> c;
};
struct Sum {
  std::vector<NodePtr> terms;
};
struct Product {
  std::vector<NodePtr> factors;
};
struct Power {
  NodePtr base;
  double p;
};
struct Shift {
  NodePtr inner;
  double offset;
};

struct ExprNode {
  std::variant<Constant, Monomial, Polynomial, ExpPolynomial, SinSquared, Logistic, Sum,
               Product, Power, Shift>
      v;
};

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class T>
NodePtr make(T node) {
  return std::make_shared<const ExprNode>(ExprNode{std::move(node)});
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) acc = acc * t + static_cast<double>(k) * c[k];
  return acc;
}

double eval_node(const ExprNode& node, double t) {
  return std::visit(
      overloaded{
          [](const Constant& n) { return n.c; },
          [t](const Monomial& n) { return n.sigma == 0.0 ? 1.0 : std::pow(t, n.sigma); },
          [t](const Polynomial& n) { return horner(n.c, t); },
          [t](const ExpPolynomial& n) { return std::exp(horner(n.c, t)); },
          [t](const SinSquared& n) {
            const double s = std::sin(n.w * t + n.phi);
            return n.lo + (n.hi - n.lo) * (s * s);
          },
          [t](const Logistic& n) { return 1.0 / (1.0 + std::exp(-horner(n.c, t))); },
          [t](const Sum& n) {
            double acc = 0.0;
            for (const auto& term : n.terms) acc += eval_node(*term, t);
            return acc;
          },
          [t](const Product& n) {
            double acc = 1.0;
            for (const auto& factor : n.factors) acc *= eval_node(*factor, t);
            return acc;
          },
          [t](const Power& n) { return std::pow(eval_node(*n.base, t), n.p); },
          [t](const Shift& n) { return eval_node(*n.inner, t + n.offset); },
      },
      node.v);
}

std::string fmt_num(double v) {
  char buf[32];
  // Shortest of %.15g / %.17g that round-trips.
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += fmt_num(c[i]);
  }
  return out;
}

std::string node_string(const ExprNode& node) {
  auto joined = [](const char* name, const std::vector<NodePtr>& kids) {
    std::string out = std::string(name) + "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ';';
      out += node_string(*kids[i]);
    }
    return out + ")";
  };
  return std::visit(
      overloaded{
          [](const Constant& n) { return "const:" + fmt_num(n.c); },
          [](const Monomial& n) { return "mono:sigma=" + fmt_num(n.sigma); },
          [](const Polynomial& n) { return "poly:" + fmt_list(n.c); },
          [](const ExpPolynomial& n) { return "expoly:" + fmt_list(n.c); },
          [](const SinSquared& n) {
            return "sinpos:" + fmt_list({n.w, n.phi, n.lo, n.hi});
          },
          [](const Logistic& n) { return "logistic:" + fmt_list(n.c); },
          [&](const Sum& n) { return joined("add", n.terms); },
          [&](const Product& n) { return joined("mul", n.factors); },
          [](const Power& n) { return "pow(" + node_string(*n.base) + ";" + fmt_num(n.p) + ")"; },
          [](const Shift& n) {
            return "shift(" + node_string(*n.inner) + ";" + fmt_num(n.offset) + ")";
          },
      },
      node.v);
}

std::optional<DecayEnvelope> node_envelope(const ExprNode& node, double L) {
  using Env = std::optional<DecayEnvelope>;
  return std::visit(
      overloaded{
          [](const Constant& n) -> Env { return DecayEnvelope{std::abs(n.c), 0.0}; },
          [](const Monomial&) -> Env { return std::nullopt; },
          [](const Polynomial&) -> Env { return std::nullopt; },
          [L](const ExpPolynomial& n) -> Env {
            // Concave exponent: tangent line at L bounds it from above.
            if (n.c.size() > 3) return std::nullopt;
            if (n.c.size() == 3 && n.c[2] > 0.0) return std::nullopt;
            const double slope = horner_derivative(n.c, L);
            if (slope < 0.0) return std::nullopt;
            return DecayEnvelope{std::exp(horner(n.c, L)), slope};
          },
          [](const SinSquared& n) -> Env {
            return DecayEnvelope{std::max(std::abs(n.lo), std::abs(n.hi)), 0.0};
          },
          [](const Logistic&) -> Env { return DecayEnvelope{1.0, 0.0}; },
          [L](const Sum& n) -> Env {
            DecayEnvelope acc{0.0, std::numeric_limits<double>::infinity()};
            for (const auto& term : n.terms) {
              auto e = node_envelope(*term, L);
              if (!e) return std::nullopt;
              acc.scale += e->scale;
              acc.rate = std::min(acc.rate, e->rate);
            }
            if (n.terms.empty()) acc.rate = 0.0;
            return acc;
          },
          [L](const Product& n) -> Env {
            DecayEnvelope acc{1.0, 0.0};
            for (const auto& factor : n.factors) {
              auto e = node_envelope(*factor, L);
              if (!e) return std::nullopt;
              acc.scale *= e->scale;
              acc.rate += e->rate;
            }
            return acc;
          },
          [L](const Power& n) -> Env {
            auto e = node_envelope(*n.base, L);
            if (!e || n.p < 0.0) return std::nullopt;
            return DecayEnvelope{std::pow(e->scale, n.p), e->rate * n.p};
          },
          [L](const Shift& n) -> Env { return node_envelope(*n.inner, L + n.offset); },
      },
      node.v);
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (!(out.lo <= out.hi)) throw DomainError("functions have disjoint domains");
  return out;
}

void require_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + ": parameters must be finite");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TestFunction

TestFunction::TestFunction(std::shared_ptr<const ExprNode> root, Interval domain)
    : root_(std::move(root)), domain_(domain) {
  if (!(domain_.lo <= domain_.hi) || std::isnan(domain_.lo) || !std::isfinite(domain_.hi)) {
    throw DomainError("function domain must be an interval with a finite upper end");
  }
}

void TestFunction::check_on_domain() const {
  constexpr int kGrid = 1000;
  const double lo = std::isfinite(domain_.lo) ? domain_.lo : domain_.hi - 16.0;
  const double hi = domain_.hi;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = i == kGrid ? hi : lo + (hi - lo) * i / kGrid;
    const double v = (*this)(t);
    const bool endpoint = (i == 0 && std::isfinite(domain_.lo)) || i == kGrid;
    if (!std::isfinite(v) || v < 0.0 || (v == 0.0 && !endpoint && hi > lo)) {
      std::ostringstream msg;
      msg << "function " << to_string() << " is not positive and finite on its domain (value "
          << v << " at t=" << t << ")";
      throw DomainError(msg.str());
    }
  }
}

TestFunction TestFunction::constant(double c, Interval domain) {
  require_finite({c}, "const");
  TestFunction f(make(Constant{c}), domain);
  f.check_on_domain();
  return f;
}

TestFunction TestFunction::monomial(double sigma, Interval domain) {
  require_finite({sigma}, "mono");
  if (domain.lo < 0.0) throw DomainError("mono: domain must lie in [0, inf)");
  TestFunction f(make(Monomial{sigma}), domain);
  f.check_on_domain();
  return f;
}

TestFunction TestFunction::polynomial(std::vector<double> coeffs, Interval domain) {
  for (double c : coeffs) require_finite({c}, "poly");
  if (coeffs.empty()) throw DomainError("poly: needs at least one coefficient");
  TestFunction f(make(Polynomial{std::move(coeffs)}), domain);
  f.check_on_domain();
  return f;
}

TestFunction TestFunction::exp_polynomial(std::vector<double> coeffs, Interval domain) {
  for (double c : coeffs) require_finite({c}, "expoly");
  if (coeffs.empty()) throw DomainError("expoly: needs at least one coefficient");
  TestFunction f(make(ExpPolynomial{std::move(coeffs)}), domain);
  f.check_on_domain();
  return f;
}

TestFunction TestFunction::sin_squared(double w, double phi, double lo, double hi,
                                       Interval domain) {
  require_finite({w, phi, lo, hi}, "sinpos");
  TestFunction f(make(SinSquared{w, phi, lo, hi}), domain);
  f.check_on_domain();
  return f;
}

TestFunction TestFunction::logistic(std::vector<double> coeffs, Interval domain) {
  for (double c : coeffs) require_finite({c}, "logistic");
  if (coeffs.empty()) throw DomainError("logistic: needs at least one coefficient");
  TestFunction f(make(Logistic{std::move(coeffs)}), domain);
  f.check_on_domain();
  return f;
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
  return TestFunction(make(Sum{{a.root_, b.root_}}), intersect(a.domain_, b.domain_));
}

TestFunction operator*(const TestFunction& a, const TestFunction& b) {
  return TestFunction(make(Product{{a.root_, b.root_}}), intersect(a.domain_, b.domain_));
}

TestFunction operator*(double c, const TestFunction& f) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be positive");
  return TestFunction(make(Product{{make(Constant{c}), f.root_}}), f.domain_);
}

TestFunction TestFunction::pow(double p) const {
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("pow: exponent must be >= 0");
  return TestFunction(make(Power{root_, p}), domain_);
}

TestFunction TestFunction::shifted(double offset) const {
  require_finite({offset}, "shift");
  return TestFunction(make(Shift{root_, offset}), {domain_.lo - offset, domain_.hi - offset});
}

TestFunction TestFunction::with_domain(Interval domain) const {
  TestFunction f(root_, domain);
  f.check_on_domain();
  return f;
}

double TestFunction::operator()(double t) const { return eval_node(*root_, t); }

std::string TestFunction::to_string() const { return node_string(*root_); }

std::optional<DecayEnvelope> TestFunction::decay_envelope(double L) const {
  return node_envelope(*root_, L);
}

double eval_fn(const TestFunction& f, double t) {
  if (!f.domain().contains(t)) {
    std::ostringstream msg;
    msg << "t=" << t << " is outside the domain [" << f.domain().lo << ", " << f.domain().hi
        << "]";
    throw DomainError(msg.str());
  }
  return f(t);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr node = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input", std::string(text_.substr(pos_)));
    return node;
  }

 private:
  [[noreturn]] static void fail(const std::string& why, const std::string& token) {
    throw ParseError("invalid function spec: " + why + " at '" + token + "'", token);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // A primitive extends up to the next ';' or ')' at this nesting level.
  std::string_view take_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ';' && text_[pos_] != ')' &&
           text_[pos_] != '(') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  static double number(std::string_view tok) {
    tok = trim(tok);
    const std::string owned(tok);
    if (owned.empty()) fail("missing number", owned);
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end != owned.c_str() + owned.size() || !std::isfinite(v)) fail("not a finite number", owned);
    return v;
  }

  static std::vector<double> numbers(std::string_view args) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = args.find(',', start);
      out.push_back(number(args.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }

  NodePtr primitive(std::string_view atom) {
    atom = trim(atom);
    const std::size_t colon = atom.find(':');
    if (colon == std::string_view::npos) fail("expected kind:arguments", std::string(atom));
    const std::string_view kind = trim(atom.substr(0, colon));
    const std::string_view args = atom.substr(colon + 1);
    if (kind == "const") return make(Constant{number(args)});
    if (kind == "mono") {
      std::string_view a = trim(args);
      if (a.starts_with("sigma=")) a.remove_prefix(6);
      return make(Monomial{number(a)});
    }
    if (kind == "poly") return make(Polynomial{numbers(args)});
    if (kind == "expoly") return make(ExpPolynomial{numbers(args)});
    if (kind == "logistic") return make(Logistic{numbers(args)});
    if (kind == "sinpos") {
      const auto v = numbers(args);
      if (v.size() != 4) fail("sinpos takes w,phi,lo,hi", std::string(args));
      return make(SinSquared{v[0], v[1], v[2], v[3]});
    }
    fail("unknown function kind", std::string(kind));
  }

  NodePtr expr() {
    skip_space();
    const std::size_t start = pos_;
    const std::string_view head = take_atom();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const std::string name(trim(head));
      ++pos_;
      std::vector<NodePtr> kids;
      std::vector<std::string_view> scalars;
      const bool scalar_tail = name == "pow" || name == "shift";
      kids.push_back(expr());
      while (pos_ < text_.size() && text_[pos_] == ';') {
        ++pos_;
        if (scalar_tail) {
          scalars.push_back(take_atom());
        } else {
          kids.push_back(expr());
        }
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') {
        fail("missing ')'", std::string(text_.substr(start)));
      }
      ++pos_;
      if (name == "add") return make(Sum{std::move(kids)});
      if (name == "mul") return make(Product{std::move(kids)});
      if (scalar_tail) {
        if (scalars.size() != 1) fail(name + " takes one expression and one number", name);
        const double v = number(scalars[0]);
        if (name == "pow") {
          if (v < 0.0) fail("pow exponent must be >= 0", std::string(scalars[0]));
          return make(Power{kids[0], v});
        }
        return make(Shift{kids[0], v});
      }
      fail("unknown combinator", name);
    }
    if (trim(head).empty()) fail("empty expression", std::string(text_.substr(start)));
    return primitive(head);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

class PairBuilder {
 public:
  static TestFunction raw(NodePtr node, Interval domain) { return TestFunction(std::move(node), domain); }
  static NodePtr root(const TestFunction& f) { return f.root_; }
  static void check(const TestFunction& f) { f.check_on_domain(); }
};

TestFunction parse_function(std::string_view spec, Interval domain) {
  TestFunction f = PairBuilder::raw(SpecParser(spec).parse(), domain);
  PairBuilder::check(f);
  return f;
}

// ---------------------------------------------------------------------------
// Pair generation

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(splitmix(master) ^ a) ^ (b * 0xd1342543de82ef95ULL));
}

namespace {

// Random polynomial scaled so that |P(t)| <= bound on the domain.
std::vector<double> bounded_polynomial(RandomStream& rng, int degree, double bound,
                                       const Interval& domain) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& ck : c) ck = rng.uniform(-1.0, 1.0);
  const double radius = std::max(std::abs(domain.lo), std::abs(domain.hi));
  double sup = 0.0;
  double power = 1.0;
  for (double ck : c) {
    sup += std::abs(ck) * power;
    power *= radius;
  }
  if (sup > 0.0) {
    for (double& ck : c) ck *= bound / sup;
  }
  return c;
}

// Smooth seeded map into [0, 1]: (1 + sin(w t + phi)) / 2, optionally blended
// with a logistic of a low-degree polynomial.
NodePtr unit_map(RandomStream& rng, const Interval& domain, bool allow_blend) {
  const double w = rng.uniform(0.5, 6.0) / domain.width();
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  // (1 + sin(w t + phi)) / 2 == sin^2(w t / 2 + phi / 2 + pi / 4)
  NodePtr wave = make(SinSquared{0.5 * w, 0.5 * phi + 0.25 * std::numbers::pi, 0.0, 1.0});
  if (!allow_blend || rng.uniform(0.0, 1.0) < 0.5) return wave;
  const double lambda = rng.uniform(0.3, 0.8);
  const int degree = rng.uniform_int(1, 2);
  NodePtr sigmoid = make(Logistic{bounded_polynomial(rng, degree, 3.0, domain)});
  return make(Sum{{make(Product{{make(Constant{lambda}), wave}}),
                   make(Product{{make(Constant{1.0 - lambda}), sigmoid}})}});
}

// lo + (hi - lo) * s, collapsing to a constant when the band is empty.
NodePtr affine(double lo, double hi, NodePtr unit) {
  if (lo == hi) return make(Constant{lo});
  if (const auto* wave = std::get_if<SinSquared>(&unit->v); wave && wave->lo == 0.0 && wave->hi == 1.0) {
    return make(SinSquared{wave->w, wave->phi, lo, hi});
  }
  return make(Sum{{make(Constant{lo}), make(Product{{make(Constant{hi - lo}), std::move(unit)}})}});
}

void require_domain(const Interval& domain) {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < domain.hi)) {
    throw InvalidBounds("pair domain must be a finite non-degenerate interval");
  }
}

constexpr int kCertifyGrid = 1000;
constexpr double kCertifySlack = 1e-12;

}  // namespace

PositivePair generate_ratio_pair(std::uint64_t seed, double m, double M, Interval domain,
                                 int complexity) {
  if (!std::isfinite(m) || !std::isfinite(M) || !(m > 0.0)) {
    throw InvalidBounds("ratio bounds need 0 < m");
  }
  if (m > M) throw InvalidBounds("ratio bounds need m <= M");
  require_domain(domain);
  complexity = std::clamp(complexity, 1, 4);
  RandomStream rng(seed);

  const auto g_root = make(ExpPolynomial{bounded_polynomial(rng, complexity, 1.5, domain)});
  NodePtr ratio = affine(m, M, unit_map(rng, domain, complexity >= 2));
  NodePtr f_root = (m == 1.0 && M == 1.0) ? g_root : make(Product{{ratio, g_root}});

  PositivePair pair{PairBuilder::raw(f_root, domain), PairBuilder::raw(g_root, domain), m, M,
                    PairKind::RatioBounded, std::nullopt};
  PairBuilder::check(pair.f);
  PairBuilder::check(pair.g);
  for (int i = 0; i <= kCertifyGrid; ++i) {
    const double t = domain.lo + domain.width() * i / kCertifyGrid;
    const double r = pair.f(t) / pair.g(t);
    if (!(r >= m - kCertifySlack && r <= M + kCertifySlack)) {
      throw std::logic_error("generated pair violates its ratio bounds at t=" + std::to_string(t));
    }
  }
  return pair;
}

PositivePair generate_box_pair(std::uint64_t seed, double f_lo, double f_hi, double g_lo,
                               double g_hi, Interval domain) {
  for (double v : {f_lo, f_hi, g_lo, g_hi}) {
    if (!std::isfinite(v)) throw InvalidBounds("box bounds must be finite");
  }
  if (!(f_lo > 0.0) || !(g_lo > 0.0)) throw InvalidBounds("box bounds need strictly positive lower ends");
  if (f_lo > f_hi || g_lo > g_hi) throw InvalidBounds("box bounds are inverted");
  require_domain(domain);
  RandomStream rng(seed);

  NodePtr f_root = affine(f_lo, f_hi, unit_map(rng, domain, true));
  NodePtr g_root = affine(g_lo, g_hi, unit_map(rng, domain, true));
  PositivePair pair{PairBuilder::raw(f_root, domain), PairBuilder::raw(g_root, domain),
                    f_lo / g_hi, f_hi / g_lo, PairKind::BoxBounded,
                    Box{f_lo, f_hi, g_lo, g_hi}};
  PairBuilder::check(pair.f);
  PairBuilder::check(pair.g);
  for (int i = 0; i <= kCertifyGrid; ++i) {
    const double t = domain.lo + domain.width() * i / kCertifyGrid;
    const double fv = pair.f(t);
    const double gv = pair.g(t);
    if (!(fv >= f_lo - kCertifySlack && fv <= f_hi + kCertifySlack && gv >= g_lo - kCertifySlack &&
          gv <= g_hi + kCertifySlack)) {
      throw std::logic_error("generated pair leaves its boxes at t=" + std::to_string(t));
    }
  }
  return pair;
}

}  // namespace genfrac
