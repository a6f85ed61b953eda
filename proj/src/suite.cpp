#include "genfrac/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <ostream>
#include <thread>

#include "genfrac/errors.hpp"

namespace genfrac {

namespace {

OperatorParams left_params(double alpha, double beta, double rho, double eta, double kappa,
                           double a) {
  OperatorParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.rho = rho;
  p.eta = eta;
  p.kappa = kappa;
  p.lower = a;
  return p;
}

GridCell generalized_cell(std::string name, const OperatorParams& p, double x) {
  return {std::move(name), FractionalOperator::generalized(p), x};
}

bool needs_p_above_one(TheoremId id) { return id == TheoremId::T10 || id == TheoremId::T11; }

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

PositivePair make_pair(const SuiteConfig& cfg, const GridCell& cell, int trial, TheoremId id) {
  const Interval domain{cell.op.lower(), cell.x};
  const auto t = static_cast<std::uint64_t>(trial);
  if (id == TheoremId::T13) {
    RandomStream rng(derive_seed(cfg.seed, t, 1));
    const double k1 = rng.uniform(0.5, 2.0);
    const double k2 = rng.uniform(0.5, 2.0);
    return generate_box_pair(derive_seed(cfg.seed, t, 2), k1 * cfg.m, k1 * cfg.M, k2,
                             k2 * cfg.M / cfg.m, domain);
  }
  return generate_ratio_pair(derive_seed(cfg.seed, t, 0), cfg.m, cfg.M, domain, cfg.complexity);
}

std::uint64_t pair_seed(const SuiteConfig& cfg, int trial, TheoremId id) {
  return derive_seed(cfg.seed, static_cast<std::uint64_t>(trial), id == TheoremId::T13 ? 2 : 0);
}

nlohmann::json record_json(const SuiteReport& report, const TrialRecord& r) {
  const auto& c = r.check;
  nlohmann::json j = {
      {"theorem", to_string(r.theorem)},
      {"trial", r.trial},
      {"grid_index", r.cell},
      {"operator", report.grid.at(static_cast<std::size_t>(r.cell))},
      {"master_seed", report.config.seed},
      {"pair_seed", r.pair_seed},
      {"f", r.f_spec},
      {"g", r.g_spec},
      {"m", r.m},
      {"M", r.M},
      {"p", report.config.p},
      {"verdict", to_string(c.verdict)},
      {"lhs", c.lhs},
      {"rhs", c.rhs},
      {"lhs_err", c.lhs_err},
      {"rhs_err", c.rhs_err},
      {"slack", c.slack},
      {"constant", c.constant},
      {"margin", c.margin},
  };
  if (r.theorem == TheoremId::T12) {
    j["c"] = std::isnan(report.config.c) ? 0.5 * report.config.m : report.config.c;
  }
  if (c.lower) {
    j["lower"] = *c.lower;
    j["lower_err"] = c.lower_err;
  }
  if (c.alternate_rhs) j["alternate_rhs"] = *c.alternate_rhs;
  if (r.box) j["box"] = {r.box->f_lo, r.box->f_hi, r.box->g_lo, r.box->g_hi};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

std::vector<GridCell> default_grid() {
  std::vector<GridCell> grid;
  grid.push_back(generalized_cell("riemann-liouville", left_params(0.5, 0.5, 1, 0, 0, 0), 1.5));
  grid.push_back(generalized_cell("riemann-liouville", left_params(1, 1, 1, 0, 0, 0), 1.5));
  grid.push_back(generalized_cell("riemann-liouville", left_params(2, 2, 1, 0, 0, 0), 1.5));
  grid.push_back(generalized_cell("katugampola", left_params(0.5, 0.5, 2, 0, 0, 0), 1.5));
  grid.push_back(generalized_cell("katugampola", left_params(1.5, 1.5, 2, 0, 0, 0.25), 1.5));
  // kappa = -rho (alpha + eta)
  grid.push_back(generalized_cell("erdelyi-kober", left_params(0.5, 0, 2, 0.5, -2, 0), 1.5));
  grid.push_back(generalized_cell("generalized", left_params(0.7, 0.3, 1.5, 0.2, 0.5, 0.5), 2.0));
  grid.push_back({"hadamard",
                  FractionalOperator::classical({ClassicalKind::Hadamard, 0.5, 1.0, 1.0, 0.0}),
                  std::exp(1.0)});
  return grid;
}

void SuiteConfig::validate() const {
  if (!(m > 0.0) || !std::isfinite(m) || !std::isfinite(M)) {
    throw InvalidBounds("ratio bounds need 0 < m");
  }
  if (m > M) throw InvalidBounds("ratio bounds need m <= M");
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must be >= 1");
  if (!std::isnan(c) && !(c > 0.0 && c < m)) throw DomainError("T12 needs 0 < c < m");
  if (!(slack_factor >= 0.0)) throw DomainError("slack_factor must be >= 0");
  if (!(inconclusive_threshold >= 0.0)) throw DomainError("inconclusive threshold must be >= 0");
  quad.validate();
}

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& s : summaries) n += s.failures;
  return n;
}

bool SuiteReport::inconclusive_exceeded() const {
  return std::any_of(summaries.begin(), summaries.end(), [&](const TheoremSummary& s) {
    return s.inconclusive > config.inconclusive_threshold * s.trials;
  });
}

int SuiteReport::exit_code() const {
  if (failures() > 0) return 1;
  if (inconclusive_exceeded()) return 3;
  return 0;
}

int resolve_threads(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("GENFRAC_THREADS")) {
    const int v = std::atoi(cap);
    if (v >= 1) n = std::min(n, v);
  }
  return n;
}

PositivePair replay_pair(const SuiteConfig& cfg, int trial, TheoremId theorem) {
  const auto grid = default_grid();
  const auto& cell = grid[static_cast<std::size_t>(trial) % grid.size()];
  return make_pair(cfg, cell, trial, theorem);
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  SuiteReport report;
  report.config = cfg;
  report.timestamp = iso_timestamp();

  const auto grid = default_grid();
  for (const auto& cell : grid) report.grid.push_back(cell.op.describe() + " at x=" + std::to_string(cell.x));

  std::vector<TheoremId> active;
  for (TheoremId id : cfg.theorems) {
    if (needs_p_above_one(id) && !(cfg.p > 1.0)) {
      report.skipped.push_back({id, "needs p > 1 (conjugate q finite)"});
    } else {
      active.push_back(id);
    }
  }

  CheckConfig check_cfg;
  check_cfg.p = cfg.p;
  check_cfg.c = cfg.c;
  check_cfg.slack_factor = cfg.slack_factor;
  check_cfg.paper_statement_constants = cfg.paper_statement_constants;
  check_cfg.quad = cfg.quad;

  const std::size_t n_tasks = active.size() * static_cast<std::size_t>(cfg.trials);
  report.records.resize(n_tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t task = next++; task < n_tasks; task = next++) {
      const TheoremId id = active[task / static_cast<std::size_t>(cfg.trials)];
      const int trial = static_cast<int>(task % static_cast<std::size_t>(cfg.trials));
      const int cell_index = trial % static_cast<int>(grid.size());
      const GridCell& cell = grid[static_cast<std::size_t>(cell_index)];
      TrialRecord& rec = report.records[task];
      rec.theorem = id;
      rec.trial = trial;
      rec.cell = cell_index;
      rec.pair_seed = pair_seed(cfg, trial, id);
      rec.m = cfg.m;
      rec.M = cfg.M;
      try {
        const PositivePair pair = make_pair(cfg, cell, trial, id);
        rec.f_spec = pair.f.to_string();
        rec.g_spec = pair.g.to_string();
        rec.m = pair.m;
        rec.M = pair.M;
        rec.box = pair.box;
        rec.check = run_check(id, pair, cell.op, cell.x, check_cfg);
      } catch (const std::exception& e) {
        rec.check = InequalityCheck{};
        rec.check.theorem = id;
        rec.check.verdict = Verdict::Inconclusive;
        rec.check.note = std::string("error: ") + e.what();
      }
    }
  };

  const int n_threads = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(std::max<std::size_t>(n_tasks, 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Tasks were laid out theorem-major, trial-minor, so records are already sorted.
  for (TheoremId id : active) {
    TheoremSummary s{id};
    for (const auto& r : report.records) {
      if (r.theorem != id) continue;
      ++s.trials;
      switch (r.check.verdict) {
        case Verdict::Pass: ++s.passes; break;
        case Verdict::Fail: ++s.failures; break;
        case Verdict::Inconclusive: ++s.inconclusive; break;
      }
      if (r.check.verdict != Verdict::Inconclusive) s.min_margin = std::min(s.min_margin, r.check.margin);
    }
    report.summaries.push_back(s);
  }
  return report;
}

nlohmann::json to_json(const SuiteReport& report) {
  const auto& cfg = report.config;
  nlohmann::json theorems = nlohmann::json::array();
  for (TheoremId id : cfg.theorems) theorems.push_back(to_string(id));

  nlohmann::json summaries = nlohmann::json::object();
  for (const auto& s : report.summaries) {
    summaries[to_string(s.theorem)] = {
        {"trials", s.trials},
        {"passes", s.passes},
        {"failures", s.failures},
        {"inconclusive", s.inconclusive},
        {"min_margin", std::isfinite(s.min_margin) ? nlohmann::json(s.min_margin) : nlohmann::json()},
    };
  }

  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json inconclusive = nlohmann::json::array();
  for (const auto& r : report.records) {
    if (r.check.verdict == Verdict::Fail) failures.push_back(record_json(report, r));
    if (r.check.verdict == Verdict::Inconclusive) inconclusive.push_back(record_json(report, r));
  }
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : report.skipped) {
    skipped.push_back({{"theorem", to_string(s.theorem)}, {"reason", s.reason}});
  }
  nlohmann::json grid = nlohmann::json::array();
  for (std::size_t i = 0; i < report.grid.size(); ++i) {
    grid.push_back({{"index", i}, {"operator", report.grid[i]}});
  }

  return {
      {"metadata",
       {{"tool", "genfrac"},
        {"version", kVersion},
        {"master_seed", cfg.seed},
        {"timestamp", report.timestamp}}},
      {"config",
       {{"theorems", theorems},
        {"trials", cfg.trials},
        {"p", cfg.p},
        {"q", cfg.p > 1.0 ? nlohmann::json(conjugate(cfg.p)) : nlohmann::json("inf")},
        {"m", cfg.m},
        {"M", cfg.M},
        {"c", std::isnan(cfg.c) ? 0.5 * cfg.m : cfg.c},
        {"slack_factor", cfg.slack_factor},
        {"paper_statement_constants", cfg.paper_statement_constants},
        {"rel_tol", cfg.quad.rel_tol},
        {"abs_tol", cfg.quad.abs_tol},
        {"max_subdivisions", cfg.quad.max_subdivisions},
        {"complexity", cfg.complexity},
        {"inconclusive_threshold", cfg.inconclusive_threshold}}},
      {"grid", grid},
      {"summaries", summaries},
      {"failures", failures},
      {"inconclusive", inconclusive},
      {"skipped", skipped},
      {"exit_code", report.exit_code()},
  };
}

void write_csv(const SuiteReport& report, std::ostream& out) {
  auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "theorem,trial,grid_index,pair_seed,m,M,p,verdict,lhs,rhs,lower,lhs_err,rhs_err,slack,"
         "constant,margin,f,g\n";
  for (const auto& r : report.records) {
    const auto& c = r.check;
    out << to_string(r.theorem) << ',' << r.trial << ',' << r.cell << ',' << r.pair_seed << ','
        << num(r.m) << ',' << num(r.M) << ',' << num(report.config.p) << ','
        << to_string(c.verdict) << ',' << num(c.lhs) << ',' << num(c.rhs) << ','
        << (c.lower ? num(*c.lower) : std::string()) << ',' << num(c.lhs_err) << ','
        << num(c.rhs_err) << ',' << num(c.slack) << ',' << num(c.constant) << ','
        << num(c.margin) << ',' << quoted(r.f_spec) << ',' << quoted(r.g_spec) << '\n';
  }
}

}  // namespace genfrac
