#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmc/config.hpp"
#include "rmc/de.hpp"
#include "rmc/objectives.hpp"
#include "rmc/optimizer.hpp"

namespace rmc {

enum class Algorithm { RMC, DE };

const char* to_string(Algorithm algorithm);
/// Accepts rmc or de (case-insensitive). Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct ExperimentSpec {
  ObjectiveSpec objective;
  Algorithm algorithm = Algorithm::RMC;
  std::variant<RmcConfig<double>, DeConfig<double>> config;
  std::size_t replicates = 200;
  std::uint64_t base_seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  unsigned threads = 1;

  /// Defaults for `algorithm` on `objective`: 200 replicates for RMC, 1000 for
  /// DE; DE targets the known best value.
  static ExperimentSpec defaults(const ObjectiveSpec& objective, Algorithm algorithm);
};

/// One replicate: the run, or the error that prevented it.
struct ReplicateResult {
  std::uint64_t seed = 0;
  std::optional<RunResult<double>> result;
  std::string error;

  bool ok() const { return result.has_value(); }
};

/// Single run with the given seed, as run_experiment performs it.
RunResult<double> run_single(const ExperimentSpec& spec, std::uint64_t seed);

/// Replicate k uses seed base_seed + k; output is ordered by k and independent
/// of the thread count. Failing runs are recorded, never rethrown.
std::vector<ReplicateResult> run_experiment(const ExperimentSpec& spec);

struct Table2Row {
  ObjectiveId function_id = ObjectiveId::F1;
  double rms = 0.0;
  double trm = 0.0;
  double tc = 0.0;
  Point<double> best_point;
  double bp = 0.0;
  /// Noiseless part of bp; differs from bp only for F4.
  double bp_noiseless = 0.0;
  double sd = 0.0;
  std::size_t runs = 0;
  std::size_t failed_runs = 0;
};

/// Means over successful runs, best run by (noiseless) best fitness, and the
/// population standard deviation of (noiseless) best fitness minus the known
/// best value. Throws DomainError when no run succeeded.
Table2Row summarize_table2(const std::vector<ReplicateResult>& results, const ExperimentSpec& spec);

/// Same, for plain RunResults.
Table2Row summarize_table2(const std::vector<RunResult<double>>& results, const ExperimentSpec& spec);

/// reference / rmc. Throws DomainError unless both are > 0.
double compute_png(double reference_generations, double rmc_generations);

/// Truncation toward zero to `decimals` places.
double truncate_decimals(double value, int decimals);

enum class RowSource { Measured, LiteratureConstant };

struct Table3Row {
  std::string algorithm_label;
  std::array<double, 5> generations{};
  RowSource source = RowSource::LiteratureConstant;
};

/// Published average generation counts (F1..F5) for the six compared algorithms.
std::vector<Table3Row> literature_table3();

/// The published RMC row counters: TRM and TC per function, step 0.1.
struct LiteratureTable2Entry {
  ObjectiveId function_id;
  double rms;
  std::uint64_t trm;
  std::uint64_t tc;
};
std::vector<LiteratureTable2Entry> literature_table2();

/// PNG = DE / RMCGA per function from the literature rows, truncated to 3 decimals.
std::array<double, 5> literature_png();

/// Mean generations (TRM + TC) over successful runs.
double mean_generations(const std::vector<ReplicateResult>& results);

}  // namespace rmc
