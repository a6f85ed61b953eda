#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "genfrac/function_model.hpp"
#include "genfrac/inequalities.hpp"
#include "genfrac/operator.hpp"

namespace genfrac {

inline constexpr const char* kVersion = "0.1.0";

/// One operator configuration of the trial grid. Pairs live on [a, x].
struct GridCell {
  std::string name;
  FractionalOperator op;
  double x;
};

/// RL (alpha 0.5, 1, 2), Katugampola (rho 2), Erdelyi-Kober, one generic
/// parameter set and direct Hadamard. Trial i runs on cell i mod size.
std::vector<GridCell> default_grid();

struct SuiteConfig {
  std::vector<TheoremId> theorems{TheoremId::T8,  TheoremId::T9,  TheoremId::T10,
                                  TheoremId::T11, TheoremId::T12, TheoremId::T13,
                                  TheoremId::T14, TheoremId::T15};
  int trials = 1000;
  std::uint64_t seed = 1;
  double p = 2.0;
  double m = 0.5;
  double M = 2.0;
  double c = std::numeric_limits<double>::quiet_NaN();  // T12; NaN means m/2
  double slack_factor = 2.0;
  bool paper_statement_constants = false;
  QuadratureConfig quad{};
  int complexity = 2;
  /// 0 = hardware concurrency; GENFRAC_THREADS caps either way.
  int threads = 0;
  /// Inconclusive share per theorem above which the suite fails.
  double inconclusive_threshold = 0.01;

  /// Throws InvalidBounds / DomainError on bad values.
  void validate() const;
};

struct TrialRecord {
  TheoremId theorem;
  int trial;
  int cell;
  std::uint64_t pair_seed;
  std::string f_spec;
  std::string g_spec;
  double m;
  double M;
  std::optional<Box> box;
  InequalityCheck check;
};

struct TheoremSummary {
  TheoremId theorem;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  int inconclusive = 0;
  double min_margin = std::numeric_limits<double>::infinity();
};

struct SkippedTheorem {
  TheoremId theorem;
  std::string reason;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<std::string> grid;  // cell descriptions
  std::vector<TheoremSummary> summaries;
  std::vector<SkippedTheorem> skipped;
  std::vector<TrialRecord> records;  // sorted by (theorem, trial)
  std::string timestamp;

  int failures() const;
  /// Some theorem's inconclusive share is above the threshold.
  bool inconclusive_exceeded() const;
  /// 0 all pass, 1 any failure, 3 too many inconclusive.
  int exit_code() const;
};

/// Threads used for a requested count: hardware concurrency when 0, capped
/// by the GENFRAC_THREADS environment variable.
int resolve_threads(int requested);

/// Runs every selected theorem over `trials` seeded pairs. The pair of trial i
/// depends only on (seed, i), so the report does not depend on thread count.
SuiteReport run_suite(const SuiteConfig& cfg);

/// Canonical report. Keys are sorted; failures and inconclusive trials carry
/// everything needed to replay them.
nlohmann::json to_json(const SuiteReport& report);

/// One row per trial.
void write_csv(const SuiteReport& report, std::ostream& out);

/// Rebuilds the pair of a record (used to replay a failure).
PositivePair replay_pair(const SuiteConfig& cfg, int trial, TheoremId theorem);

}  // namespace genfrac
