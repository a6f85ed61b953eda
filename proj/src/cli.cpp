#include "genfrac/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "genfrac/errors.hpp"
#include "genfrac/function_model.hpp"
#include "genfrac/inequalities.hpp"
#include "genfrac/operator.hpp"
#include "genfrac/suite.hpp"

namespace genfrac {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16g", v);
  return buf;
}

// Accepts "inf", "-inf" as well as ordinary numbers.
double parse_bound(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || std::isnan(v)) {
    throw DomainError("not a number: '" + text + "'");
  }
  return v;
}

Side parse_side(const std::string& text) {
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  throw DomainError("side must be left or right");
}

struct ParamFlags {
  double alpha = 1.0;
  double beta = 1.0;
  double rho = 1.0;
  double eta = 0.0;
  double kappa = 0.0;
  std::string a = "0";
  std::string side = "left";

  void add(CLI::App& cmd, bool alpha_required) {
    auto* opt = cmd.add_option("--alpha", alpha, "order alpha > 0");
    if (alpha_required) opt->required();
    cmd.add_option("--beta", beta, "exponent beta in rho^(1-beta)")->capture_default_str();
    cmd.add_option("--rho", rho, "rho > 0")->capture_default_str();
    cmd.add_option("--eta", eta, "eta")->capture_default_str();
    cmd.add_option("--kappa", kappa, "kappa")->capture_default_str();
    cmd.add_option("--a", a, "lower bound a (write --a=-inf for -inf)")->capture_default_str();
    cmd.add_option("--side", side, "left or right")
        ->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
  }

  OperatorParams params() const {
    OperatorParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.rho = rho;
    p.eta = eta;
    p.kappa = kappa;
    p.lower = parse_bound(a);
    p.side = parse_side(side);
    return p;
  }
};

struct QuadFlags {
  QuadratureConfig cfg;

  void add(CLI::App& cmd) {
    cmd.add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->capture_default_str();
    cmd.add_option("--abs-tol", cfg.abs_tol, "absolute tolerance")->capture_default_str();
    cmd.add_option("--max-subdivisions", cfg.max_subdivisions, "subdivision limit")
        ->capture_default_str();
  }
};

nlohmann::json params_json(const OperatorParams& p) {
  nlohmann::json j = {{"alpha", p.alpha}, {"beta", p.beta},   {"rho", p.rho},
                      {"eta", p.eta},     {"kappa", p.kappa}, {"side", to_string(p.side)}};
  j["a"] = std::isfinite(p.lower) ? nlohmann::json(p.lower) : nlohmann::json(num(p.lower));
  if (p.side == Side::Right) j["b"] = p.upper;
  return j;
}

int cmd_eval(const ParamFlags& flags, const QuadFlags& quad, double x, double b,
             const std::string& fn, bool json, std::ostream& out, std::ostream& err) {
  OperatorParams p = flags.params();
  p.upper = b;
  quad.cfg.validate();
  // a = -inf is only meaningful in the Weyl form, evaluated by truncation
  const bool weyl = p.lower == -std::numeric_limits<double>::infinity();
  if (weyl) {
    OperatorParams check = p;
    check.lower = 1.0;
    validate(check);
    if (p.side != Side::Left || classify(p).kind != ClassicalKind::Weyl) {
      throw DomainError("a=-inf needs the left-sided Weyl form (rho=1, eta=0, kappa=0)");
    }
  } else if (!std::isfinite(p.lower)) {
    throw DomainError("lower bound a must be finite or -inf");
  }
  if (p.side == Side::Right && !std::isfinite(b)) throw DomainError("right side needs --b");
  const Interval domain = p.side == Side::Left ? Interval{p.lower, x} : Interval{x, b};
  if (!(domain.lo <= domain.hi)) {
    throw DomainError(p.side == Side::Left ? "evaluation point x must satisfy x >= a"
                                           : "evaluation point x must satisfy x <= b");
  }
  if (!weyl) validate(p);
  const TestFunction f = parse_function(fn, domain);
  try {
    const IntegralResult r = weyl ? evaluate_classical({ClassicalKind::Weyl, p.alpha}, f, x, quad.cfg)
                                  : evaluate(p, f, x, quad.cfg);
    if (json) {
      out << nlohmann::json{{"value", r.value},
                            {"error_estimate", r.error_estimate},
                            {"evaluations", r.evaluations},
                            {"x", x},
                            {"fn", f.to_string()},
                            {"params", params_json(p)}}
                 .dump(2)
          << '\n';
    } else {
      out << "value " << num(r.value) << '\n'
          << "error_estimate " << num(r.error_estimate) << '\n'
          << "evaluations " << r.evaluations << '\n';
    }
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best estimate " << num(e.best().value) << " +- "
        << num(e.best().error_estimate) << ")\n";
    return kExitInconclusive;
  }
}

int cmd_reduce(const ParamFlags& flags, double tol, double tol_limit, std::ostream& out) {
  OperatorParams p = flags.params();
  // -inf is a legal lower limit here (Weyl); everything else is validated.
  OperatorParams check = p;
  if (p.lower == -std::numeric_limits<double>::infinity()) check.lower = 1.0;
  validate(check);
  if (!(tol >= 0.0) || !(tol_limit >= 0.0)) throw DomainError("tolerances must be >= 0");
  const Classification c = classify(p, tol, tol_limit);
  out << to_string(c.kind) << '\n';
  for (const auto& note : c.notes) out << "note: " << note << '\n';
  return kExitOk;
}

int cmd_oracle(double x, const QuadFlags& quad, double threshold, std::ostream& out) {
  quad.cfg.validate();
  if (!(x > 0.0)) throw DomainError("x must be positive");
  const OracleSweep sweep = run_oracle_sweep(x, quad.cfg);
  const auto& w = sweep.worst.params;
  out << "points " << sweep.points << '\n'
      << "max_rel_error " << num(sweep.max_rel_error) << '\n'
      << "max_error_over_estimate " << num(sweep.max_error_ratio) << '\n'
      << "worst alpha=" << w.alpha << " beta=" << w.beta << " rho=" << w.rho << " eta=" << w.eta
      << " kappa=" << w.kappa << " sigma=" << sweep.worst.sigma << '\n'
      << "evaluations " << sweep.evaluations << '\n'
      << (sweep.max_rel_error <= threshold ? "pass" : "fail") << '\n';
  return sweep.max_rel_error <= threshold ? kExitOk : kExitFailure;
}

std::vector<TheoremId> parse_theorems(const std::string& text) {
  static const TheoremId all[] = {TheoremId::T8,  TheoremId::T9,  TheoremId::T10, TheoremId::T11,
                                  TheoremId::T12, TheoremId::T13, TheoremId::T14, TheoremId::T15};
  if (text == "all") return {std::begin(all), std::end(all)};
  std::vector<TheoremId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty() && (tok[0] == 'T' || tok[0] == 't')) tok.erase(0, 1);
    char* end = nullptr;
    const long n = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || *end != '\0' || n < 8 || n > 15) {
      throw DomainError("--theorem takes 8..15, a comma list of them, or all");
    }
    out.push_back(all[n - 8]);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_summary(const SuiteReport& report, std::ostream& os) {
  for (const auto& s : report.summaries) {
    os << to_string(s.theorem) << ": trials " << s.trials << ", passes " << s.passes
       << ", failures " << s.failures << ", inconclusive " << s.inconclusive << ", min margin "
       << num(s.min_margin) << '\n';
  }
  for (const auto& s : report.skipped) os << to_string(s.theorem) << ": skipped, " << s.reason << '\n';
  for (const auto& r : report.records) {
    if (r.check.verdict != Verdict::Fail) continue;
    os << "FAIL " << to_string(r.theorem) << " trial " << r.trial << " grid " << r.cell
       << " seed " << report.config.seed << ": lhs " << num(r.check.lhs) << " rhs "
       << num(r.check.rhs) << " f=" << r.f_spec << " g=" << r.g_spec << '\n';
  }
  os << "result: "
     << (report.exit_code() == 0 ? "pass" : report.exit_code() == 1 ? "fail" : "inconclusive")
     << '\n';
}

bool write_to(const std::string& path, const std::string& text, std::ostream& out,
              std::ostream& err) {
  if (path == "-") {
    out << text;
    return true;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return false;
  }
  file << text;
  return static_cast<bool>(file);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized fractional integrals and reverse Minkowski-type inequality checks",
               "genfrac"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate the generalized operator at x");
  ParamFlags eval_params;
  QuadFlags eval_quad;
  double eval_x = 0.0;
  double eval_b = std::numeric_limits<double>::infinity();
  std::string eval_fn;
  bool eval_json = false;
  eval_params.add(*eval, true);
  eval_quad.add(*eval);
  eval->add_option("--x", eval_x, "evaluation point")->required();
  eval->add_option("--b", eval_b, "upper bound b (right side)");
  eval->add_option("--fn", eval_fn, "function spec, e.g. const:1 or mono:sigma=2")->required();
  eval->add_flag("--json", eval_json, "print JSON");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "name the classical integral the parameters reduce to");
  ParamFlags reduce_params;
  double reduce_tol = 1e-9;
  double reduce_tol_limit = 1e-2;
  reduce_params.add(*reduce, true);
  reduce->add_option("--tol", reduce_tol, "parameter match tolerance")->capture_default_str();
  reduce->add_option("--tol-limit", reduce_tol_limit, "rho below which the Hadamard limit is flagged")
      ->capture_default_str();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "closed-form monomial sweep over the oracle grid");
  QuadFlags oracle_quad;
  double oracle_x = 1.5;
  double oracle_threshold = 1e-8;
  oracle_quad.add(*oracle);
  oracle->add_option("--x", oracle_x, "evaluation point")->capture_default_str();
  oracle->add_option("--threshold", oracle_threshold, "pass threshold on max relative error")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run the inequality suite");
  SuiteConfig suite;
  std::string theorem = "all";
  std::string json_path;
  std::string csv_path;
  verify->add_option("--theorem", theorem, "8..15, comma list, or all")->capture_default_str();
  verify->add_option("--trials", suite.trials, "trials per theorem")->capture_default_str();
  verify->add_option("--seed", suite.seed, "master seed")->capture_default_str();
  verify->add_option("--p", suite.p, "exponent p >= 1")->capture_default_str();
  verify->add_option("--m", suite.m, "lower ratio bound m")->required();
  verify->add_option("--M", suite.M, "upper ratio bound M")->required();
  verify->add_option("--c", suite.c, "T12 parameter, 0 < c < m (default m/2)");
  verify->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
  verify->add_option("--csv", csv_path, "write one CSV row per trial to PATH ('-' for stdout)");
  verify->add_flag("--paper-statement-constants", suite.paper_statement_constants,
                   "use 2^(p-1) in c4 as printed in the theorem statement");
  verify->add_option("--slack-factor", suite.slack_factor, "slack multiplier on error estimates")
      ->capture_default_str();
  verify->add_option("--threads", suite.threads, "worker threads (0 = all cores)")
      ->capture_default_str();
  verify->add_option("--complexity", suite.complexity, "random pair complexity 1..4")
      ->capture_default_str();
  verify->add_option("--rel-tol", suite.quad.rel_tol, "quadrature relative tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitBadArguments;
  }

  try {
    if (*eval) {
      return cmd_eval(eval_params, eval_quad, eval_x, eval_b, eval_fn, eval_json, out, err);
    }
    if (*reduce) return cmd_reduce(reduce_params, reduce_tol, reduce_tol_limit, out);
    if (*oracle) return cmd_oracle(oracle_x, oracle_quad, oracle_threshold, out);
    if (*verify) {
      suite.theorems = parse_theorems(theorem);
      const SuiteReport report = run_suite(suite);
      const bool json_to_stdout = json_path == "-" || csv_path == "-";
      if (!json_path.empty() && !write_to(json_path, to_json(report).dump(2) + "\n", out, err)) {
        return kExitBadArguments;
      }
      if (!csv_path.empty()) {
        std::ostringstream csv;
        write_csv(report, csv);
        if (!write_to(csv_path, csv.str(), out, err)) return kExitBadArguments;
      }
      print_summary(report, json_to_stdout ? err : out);
      return report.exit_code();
    }
  } catch (const std::invalid_argument& e) {  // validation, parse and bounds errors
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconclusive;
  }
  return kExitBadArguments;
}

}  // namespace genfrac
