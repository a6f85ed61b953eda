#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "genfrac/errors.hpp"
#include "genfrac/special_functions.hpp"

using namespace genfrac;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("gamma at known points") {
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK(gamma_fn(5.0) == 24.0);
  CHECK(rel(gamma_fn(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
  CHECK(rel(gamma_fn(1.5), 0.5 * std::sqrt(std::numbers::pi)) < 1e-15);
  // mpmath, 50 digits (tests/oracles/compute_frozen.py)
  CHECK(rel(gamma_fn(0.3), 2.9915689876875907446) < 1e-14);
  CHECK(rel(gamma_fn(1.7), 0.90863873285329044156) < 1e-14);
  CHECK(rel(gamma_fn(33.25), 6.2887359653748807734e+35) < 1e-13);
  CHECK(rel(gamma_fn(170.5), 5.5620924145599996107e+305) < 1e-13);
}

TEST_CASE("gamma overflow and domain") {
  CHECK(std::isinf(gamma_fn(172.0)));
  CHECK(std::isfinite(gamma_fn(171.6)));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
  CHECK_THROWS_AS(gamma_fn(std::nan("")), DomainError);
}

TEST_CASE("gamma recurrence and agreement with the C library") {
  for (double x = 0.05; x < 160.0; x *= 1.37) {
    CAPTURE(x);
    CHECK(rel(gamma_fn(x + 1.0), x * gamma_fn(x)) < 2e-13);
    CHECK(rel(gamma_fn(x), std::tgamma(x)) < 1e-12);
  }
}

TEST_CASE("log gamma") {
  CHECK(rel(log_gamma_fn(1000.5), 5908.6741758486774887) < 1e-15);
  CHECK(rel(log_gamma_fn(1e-5), 11.512919692895825707) < 1e-14);
  CHECK(std::abs(log_gamma_fn(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma_fn(2.0)) < 1e-15);
  CHECK(std::isfinite(log_gamma_fn(1e300)));
  for (double x = 0.07; x < 150.0; x *= 1.61) {
    CAPTURE(x);
    CHECK(std::abs(log_gamma_fn(x) - std::lgamma(x)) < 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK_THROWS_AS(log_gamma_fn(-2.0), DomainError);
}

TEST_CASE("beta") {
  CHECK(rel(beta_fn(2.5, 2.0), 0.11428571428571428571) < 1e-15);
  CHECK(rel(beta_fn(1.0, 0.5), 2.0) < 1e-15);
  CHECK(rel(beta_fn(300.0, 400.0), 4.7201161088312107181e-209) < 1e-12);
  CHECK(rel(beta_fn(0.3, 0.9), beta_fn(0.9, 0.3)) < 1e-15);
  CHECK(rel(std::exp(log_beta_fn(3.5, 1.25)), beta_fn(3.5, 1.25)) < 1e-14);
  CHECK_THROWS_AS(beta_fn(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(log_beta_fn(1.0, -1.0), DomainError);
}
