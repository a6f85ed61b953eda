#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "genfrac/errors.hpp"
#include "genfrac/operator.hpp"

using namespace genfrac;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kE = std::exp(1.0);

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

OperatorParams make(double alpha, double beta, double rho, double eta, double kappa,
                    double a = 0.0) {
  OperatorParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.rho = rho;
  p.eta = eta;
  p.kappa = kappa;
  p.lower = a;
  return p;
}

ValidationCode code_of(const OperatorParams& p) {
  try {
    validate(p);
  } catch (const ValidationError& e) {
    return e.code();
  }
  FAIL("expected ValidationError");
  return ValidationCode::NonFinite;
}

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(make(0.5, 0.5, 1, 0, 0)));
  CHECK(code_of(make(-1, 0.5, 1, 0, 0)) == ValidationCode::AlphaNotPositive);
  CHECK(code_of(make(0.5, 0.5, 0, 0, 0)) == ValidationCode::RhoNotPositive);
  CHECK(code_of(make(0.5, 0.5, 1, -1, 0)) == ValidationCode::LowerEndpointDivergent);
  CHECK(code_of(make(0.5, 0.5, 1, 0, 0, -1)) == ValidationCode::LowerOutOfRange);
  CHECK(code_of(make(0.5, std::nan(""), 1, 0, 0)) == ValidationCode::NonFinite);
  // a > 0 lifts the endpoint condition
  CHECK_NOTHROW(validate(make(0.5, 0.5, 1, -3, 0, 0.5)));

  try {
    validate(make(-1, 0.5, 1, 0, 0));
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "alpha must be positive");
  }
  try {
    validate(make(0.5, 0.5, 1, -1, 0));
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "rho(eta+1) must be positive when a=0");
  }
}

TEST_CASE("reduce_to_classical") {
  CHECK(reduce_to_classical(make(0.7, 0.7, 1, 0, 0)) == ClassicalKind::RiemannLiouville);
  // beta does not matter at rho = 1
  CHECK(reduce_to_classical(make(0.7, 3.0, 1, 0, 0, 0.5)) == ClassicalKind::RiemannLiouville);
  CHECK(reduce_to_classical(make(0.5, 0, 2, 0.3, -2 * 0.8)) == ClassicalKind::ErdelyiKober);
  CHECK(reduce_to_classical(make(0.5, 0.5, 2.5, 0, 0)) == ClassicalKind::Katugampola);
  CHECK(reduce_to_classical(make(0.5, 0.5, 1, 0, 0, -kInf)) == ClassicalKind::Weyl);
  CHECK(reduce_to_classical(make(0.5, 0.5, 2, 0, 0, -kInf)) == ClassicalKind::Generalized);
  CHECK(reduce_to_classical(make(0.7, 0.3, 1.5, 0.2, 0.5)) == ClassicalKind::Generalized);
  CHECK(reduce_to_classical(make(0.5, 0.5, 1 + 1e-6, 0, 0)) == ClassicalKind::Katugampola);
  CHECK(reduce_to_classical(make(0.5, 0.5, 1 + 1e-6, 0, 0), 1e-5) ==
        ClassicalKind::RiemannLiouville);
}

TEST_CASE("classify notes") {
  const auto rl = classify(make(0.5, 0.5, 1, 0, 0));
  REQUIRE(rl.notes.size() == 1);
  CHECK(rl.notes[0].find("liouville") != std::string::npos);
  const auto had = classify(make(0.5, 0.5, 1e-3, 0, 0, 1.0));
  CHECK(had.kind == ClassicalKind::Katugampola);
  REQUIRE(had.notes.size() == 1);
  CHECK(had.notes[0].find("hadamard") != std::string::npos);
  CHECK(classify(make(0.5, 0.5, 0.5, 0, 0, 1.0)).notes.empty());
  for (ClassicalKind k : {ClassicalKind::RiemannLiouville, ClassicalKind::Hadamard,
                          ClassicalKind::ErdelyiKober, ClassicalKind::Katugampola,
                          ClassicalKind::Weyl, ClassicalKind::Liouville,
                          ClassicalKind::Generalized}) {
    CHECK(classical_kind_from_string(to_string(k)) == k);
  }
}

TEST_CASE("evaluate examples") {
  CHECK(rel(evaluate(make(1, 1, 1, 0, 0), TestFunction::constant(1, {0, 2}), 2.0).value, 2.0) <
        1e-12);
  CHECK(rel(evaluate(make(0.5, 0.5, 1, 0, 0), TestFunction::constant(1), 1.0).value,
            1.1283791670955125739) < 1e-12);
  CHECK(rel(evaluate(make(2, 0.3, 2, 0.5, 1), TestFunction::monomial(2), 1.0).value,
            0.092828845297855489013) < 1e-12);
}

TEST_CASE("evaluate against the mpmath oracle") {
  auto f = TestFunction::exp_polynomial({0.2, 0.5, -0.3}, {0.5, 2});
  CHECK(rel(evaluate(make(0.4, 0.7, 1.5, -0.3, 0.8, 0.5), f, 2.0).value, 2.1541343218765792333) <
        1e-10);
  auto s = TestFunction::sin_squared(3, 0.2, 0.5, 1.5, {0, 1.5});
  CHECK(rel(evaluate(make(1.3, 0.1, 0.7, -0.4, -0.2), s, 1.5).value, 1.6934635792061374422) <
        1e-10);
  OperatorParams right = make(0.6, 0.2, 1.3, 0.4, -0.5);
  right.side = Side::Right;
  right.upper = 2.0;
  auto s2 = TestFunction::sin_squared(3, 0.2, 0.5, 1.5, {0, 2});
  CHECK(rel(evaluate(right, s2, 0.8).value, 1.0261586159344746407) < 1e-10);
}

TEST_CASE("evaluate rejects points and domains it cannot use") {
  CHECK_THROWS_AS(evaluate(make(0.5, 0.5, 1, 0, 0, 1.0), TestFunction::constant(1, {0, 2}), 0.5),
                  DomainError);
  CHECK_THROWS_AS(evaluate(make(0.5, 0.5, 1, 0, 0), TestFunction::constant(1, {0, 1}), 2.0),
                  DomainError);
  CHECK_THROWS_AS(evaluate(make(-0.5, 0.5, 1, 0, 0), TestFunction::constant(1), 1.0),
                  ValidationError);
}

TEST_CASE("evaluate_classical examples") {
  auto one3 = TestFunction::constant(1, {0, 3});
  CHECK(rel(evaluate_classical({ClassicalKind::RiemannLiouville, 1.0, 0.0}, one3, 3.0).value,
            3.0) < 1e-12);
  CHECK(rel(evaluate_classical({ClassicalKind::RiemannLiouville, 0.5, 0.0}, one3, 1.0).value,
            1.1283791670955125739) < 1e-12);
  auto one_e = TestFunction::constant(1, {1, kE});
  CHECK(rel(evaluate_classical({ClassicalKind::Hadamard, 2.0, 1.0}, one_e, kE).value, 0.5) <
        1e-12);
  auto ex = TestFunction::exp_polynomial({0, 0.5}, {1, kE});
  CHECK(rel(evaluate_classical({ClassicalKind::Hadamard, 0.5, 1.0}, ex, kE).value,
            3.2276031691332207131) < 1e-10);
  auto kat = TestFunction::exp_polynomial({0, 1}, {0.25, 1.5});
  CHECK(rel(evaluate_classical({ClassicalKind::Katugampola, 0.5, 0.25, 2.0}, kat, 1.5).value,
            4.0637523572780762013) < 1e-10);
  auto ek = TestFunction::sin_squared(2, 0.3, 1, 2, {0, 1.5});
  CHECK(rel(evaluate_classical({ClassicalKind::ErdelyiKober, 0.5, 0.0, 2.0, 0.5}, ek, 1.5).value,
            1.0531921998449666152) < 1e-10);
  CHECK_THROWS_AS(evaluate_classical({ClassicalKind::Hadamard, 0.5, 0.0}, one3, 1.0), DomainError);
  CHECK_THROWS_AS(evaluate_classical({ClassicalKind::Generalized, 0.5}, one3, 1.0), DomainError);
}

TEST_CASE("Weyl and Liouville on a truncated half-line") {
  auto f = TestFunction::exp_polynomial({0.5, 2, -0.3}, {-kInf, 0.5});
  auto r = evaluate_classical({ClassicalKind::Weyl, 0.5}, f, 0.5);
  CHECK(std::abs(r.value - 3.006760964067653935) <= r.error_estimate);
  auto g = TestFunction::exp_polynomial({0, 1}, {-kInf, 0.5});
  auto rl = evaluate_classical({ClassicalKind::Liouville, 1.5}, g, 0.5);
  CHECK(std::abs(rl.value - 1.6487212707001281468) <= rl.error_estimate);

  const auto cut = weyl_truncation(0.5, f, 0.5, 1e-12);
  CHECK(cut.cut < 0.5);
  CHECK(cut.tail_bound <= 1e-12);
  // no decay toward -inf
  auto flat = TestFunction::constant(1.0, {-kInf, 1.0});
  CHECK_THROWS_AS(evaluate_classical({ClassicalKind::Weyl, 0.5}, flat, 1.0), DomainError);
  CHECK_THROWS_AS(evaluate_classical({ClassicalKind::Weyl, 0.5}, TestFunction::constant(1), 1.0),
                  DomainError);
}

TEST_CASE("generalized matches the direct classical definitions") {
  struct Case {
    OperatorParams params;
    ClassicalSpec spec;
  };
  const Case cases[] = {
      {make(0.5, 0.5, 1, 0, 0), {ClassicalKind::RiemannLiouville, 0.5, 0.0}},
      {make(1.7, 0.2, 1, 0, 0, 0.4), {ClassicalKind::RiemannLiouville, 1.7, 0.4}},
      {make(0.5, 0.5, 2, 0, 0), {ClassicalKind::Katugampola, 0.5, 0.0, 2.0}},
      {make(1.5, 1.5, 0.5, 0, 0, 0.25), {ClassicalKind::Katugampola, 1.5, 0.25, 0.5}},
      {make(0.5, 0, 2, 0.5, -2), {ClassicalKind::ErdelyiKober, 0.5, 0.0, 2.0, 0.5}},
      {make(1.2, 0, 1.5, -0.4, -1.5 * 0.8, 0.3), {ClassicalKind::ErdelyiKober, 1.2, 0.3, 1.5, -0.4}},
  };
  for (const auto& c : cases) {
    CHECK(reduce_to_classical(c.params) == c.spec.kind);
    const Interval dom{c.params.lower, 1.5};
    for (const auto& f : {TestFunction::monomial(1.5, dom), TestFunction::exp_polynomial({0.1, -0.4, 0.2}, dom),
                          TestFunction::sin_squared(4, 0.1, 0.5, 2, dom)}) {
      CAPTURE(f.to_string());
      CAPTURE(to_string(c.spec.kind));
      const double gen = evaluate(c.params, f, 1.5).value;
      const double direct = evaluate_classical(c.spec, f, 1.5).value;
      CHECK(rel(gen, direct) <= 1e-8);
    }
  }
}

TEST_CASE("Hadamard limit") {
  auto f = TestFunction::exp_polynomial({0, 0.5}, {1, kE});
  const double target = evaluate_classical({ClassicalKind::Hadamard, 0.5, 1.0}, f, kE).value;
  double previous = kInf;
  for (double rho : {1e-2, 1e-3, 1e-4}) {
    const double d = std::abs(evaluate(make(0.5, 0.5, rho, 0, 0, 1.0), f, kE).value - target);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous / target <= 1e-3);
}

TEST_CASE("rho = 1 makes beta irrelevant") {
  auto f = TestFunction::sin_squared(2, 0.4, 1, 3, {0, 1.3});
  const double base = evaluate(make(0.8, 0.0, 1, 0.3, 0.4), f, 1.3).value;
  for (double beta : {-2.0, 0.5, 1.0, 7.25}) {
    CHECK(evaluate(make(0.8, beta, 1, 0.3, 0.4), f, 1.3).value == base);
  }
}

TEST_CASE("kappa scales by x^kappa") {
  auto f = TestFunction::exp_polynomial({0.3, -0.2}, {0, 1.7});
  const double x = 1.7;
  const double plain = evaluate(make(0.6, 0.4, 1.4, 0.1, 0.0), f, x).value;
  for (double kappa : {-1.0, 0.5, 2.0}) {
    const double scaled = evaluate(make(0.6, 0.4, 1.4, 0.1, kappa), f, x).value;
    CHECK(rel(scaled, plain * std::pow(x, kappa)) < 1e-14);
  }
}

TEST_CASE("FractionalOperator wraps both routes") {
  auto gen = FractionalOperator::generalized(make(0.5, 0.5, 1, 0, 0));
  auto direct = FractionalOperator::classical({ClassicalKind::RiemannLiouville, 0.5, 0.0});
  auto f = [](double t) { return 1.0 + t; };
  CHECK(rel(gen.apply(f, 1.2).value, direct.apply(f, 1.2).value) < 1e-10);
  CHECK(gen.lower() == 0.0);
  CHECK(direct.describe().find("riemann-liouville") != std::string::npos);
  CHECK_THROWS_AS(FractionalOperator::classical({ClassicalKind::Weyl, 0.5}), DomainError);
  CHECK_THROWS_AS(FractionalOperator::generalized(make(0, 0, 1, 0, 0)), ValidationError);
}
