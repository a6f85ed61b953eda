#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "genfrac/cli.hpp"

using namespace genfrac;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "genfrac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double first_value(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  double v = std::nan("");
  in >> key >> v;
  REQUIRE(key == "value");
  return v;
}

}  // namespace

TEST_CASE("eval") {
  auto r = run({"eval", "--alpha", "1", "--beta", "1", "--rho", "1", "--eta", "0", "--kappa", "0",
                "--a", "0", "--x", "2", "--fn", "const:1"});
  CHECK(r.code == 0);
  CHECK(first_value(r.out) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.out.find("error_estimate") != std::string::npos);
  CHECK(r.out.find("evaluations") != std::string::npos);

  r = run({"eval", "--alpha", "0.5", "--beta", "0.5", "--rho", "1", "--eta", "0", "--kappa", "0",
           "--a", "0", "--x", "1", "--fn", "const:1"});
  CHECK(r.code == 0);
  CHECK(std::abs(first_value(r.out) - 1.1283791671) < 1e-10);

  r = run({"eval", "--alpha", "2", "--beta", "0.3", "--rho", "2", "--eta", "0.5", "--kappa", "1",
           "--x", "1", "--fn", "mono:sigma=2", "--json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.092828845297855489013).epsilon(1e-12));
  CHECK(j["fn"] == "mono:sigma=2");

  r = run({"eval", "--alpha", "0.6", "--beta", "0.2", "--rho", "1.3", "--eta", "0.4", "--kappa",
           "-0.5", "--side", "right", "--b", "2", "--x", "0.8", "--fn", "sinpos:3,0.2,0.5,1.5"});
  CHECK(r.code == 0);
  CHECK(first_value(r.out) == doctest::Approx(1.0261586159344746407).epsilon(1e-10));

  r = run({"eval", "--alpha", "0.5", "--a=-inf", "--x", "0.5", "--fn", "expoly:0.5,2,-0.3"});
  CHECK(r.code == 0);
  CHECK(std::abs(first_value(r.out) - 3.006760964067653935) < 1e-10);
}

TEST_CASE("eval errors") {
  auto r = run({"eval", "--alpha", "-1", "--x", "1", "--fn", "const:1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("alpha must be positive") != std::string::npos);

  r = run({"eval", "--alpha", "0.5", "--eta", "-1", "--x", "1", "--fn", "const:1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("rho(eta+1) must be positive when a=0") != std::string::npos);

  r = run({"eval", "--alpha", "0.5", "--x", "1", "--fn", "cosine:1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cosine") != std::string::npos);

  r = run({"eval", "--alpha", "0.5", "--a", "2", "--x", "1", "--fn", "const:1"});
  CHECK(r.code == 2);

  r = run({"eval", "--alpha", "0.5", "--x", "1"});
  CHECK(r.code == 2);

  r = run({"eval", "--alpha", "0.5", "--rho", "2", "--a=-inf", "--x", "0.5", "--fn", "expoly:0,1"});
  CHECK(r.code == 2);
  r = run({"eval", "--alpha", "0.5", "--a=-inf", "--x", "0.5", "--fn", "const:1"});
  CHECK(r.code == 2);

  // a tolerance the subdivision budget cannot reach
  r = run({"eval", "--alpha", "1.5", "--x", "1", "--fn", "sinpos:300,0,1,2", "--rel-tol", "1e-15",
           "--abs-tol", "1e-300", "--max-subdivisions", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("best estimate") != std::string::npos);
}

TEST_CASE("reduce") {
  auto r = run({"reduce", "--alpha", "0.5", "--beta", "0.5", "--rho", "1", "--eta", "0", "--kappa",
                "0"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("riemann-liouville\n", 0) == 0);

  r = run({"reduce", "--alpha", "0.5", "--beta", "0", "--rho", "2", "--eta", "0.3", "--kappa",
           "-1.6"});
  CHECK(r.out.rfind("erdelyi-kober\n", 0) == 0);

  r = run({"reduce", "--alpha", "0.5", "--beta", "0.5", "--rho", "2.5"});
  CHECK(r.out.rfind("katugampola\n", 0) == 0);

  r = run({"reduce", "--alpha", "0.7", "--beta", "0.3", "--rho", "1.5", "--eta", "0.2", "--kappa",
           "0.5"});
  CHECK(r.out == "generalized\n");

  r = run({"reduce", "--alpha", "0.5", "--a=-inf"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("weyl\n", 0) == 0);

  r = run({"reduce", "--alpha", "0.5", "--beta", "0.5", "--rho", "0.001", "--a", "1"});
  CHECK(r.out.find("hadamard limit") != std::string::npos);

  CHECK(run({"reduce", "--alpha", "0"}).code == 2);
  CHECK(run({"reduce", "--alpha", "1", "--rho", "-1"}).code == 2);
}

TEST_CASE("oracle") {
  auto r = run({"oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("points 540") != std::string::npos);
  CHECK(r.out.find("pass") != std::string::npos);
}

TEST_CASE("verify exit codes and reports") {
  auto r = run({"verify", "--theorem", "8", "--trials", "100", "--seed", "1", "--p", "2", "--m",
                "0.5", "--M", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("T8: trials 100, passes 100") != std::string::npos);

  r = run({"verify", "--theorem", "all", "--trials", "10", "--seed", "1", "--p", "2", "--m", "1",
           "--M", "1", "--json", "-"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summaries"].size() == 8);
  for (const auto& [name, s] : j["summaries"].items()) {
    CAPTURE(name);
    CHECK(s["failures"] == 0);
    CHECK(s["passes"] == 10);
    CHECK(std::abs(s["min_margin"].get<double>()) <= 1e-10);
  }
  CHECK(j["metadata"]["master_seed"] == 1);
  CHECK(j["failures"].empty());

  CHECK(run({"verify", "--theorem", "8", "--trials", "5", "--M", "2"}).code == 2);
  CHECK(run({"verify", "--theorem", "16", "--m", "0.5", "--M", "2"}).code == 2);
  CHECK(run({"verify", "--m", "2", "--M", "1"}).code == 2);
  CHECK(run({"verify", "--m", "0.5", "--M", "2", "--theorem", "12", "--c", "0.7"}).code == 2);
}

TEST_CASE("verify with p = 1 skips the conjugate-exponent theorems") {
  auto r = run({"verify", "--trials", "4", "--p", "1", "--m", "0.5", "--M", "2", "--json", "-"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["skipped"].size() == 2);
  CHECK(j["summaries"].size() == 6);
}

TEST_CASE("verify writes CSV rows") {
  const std::string path = "test_cli_rows.csv";
  auto r = run({"verify", "--theorem", "9,T14", "--trials", "6", "--m", "0.5", "--M", "2", "--csv",
                path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 2 * 6);
  std::remove(path.c_str());
}

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code == 2);
}
