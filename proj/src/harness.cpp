#include "rmc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <thread>

namespace rmc {

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::RMC ? "rmc" : "de";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "rmc") return Algorithm::RMC;
  if (lower == "de") return Algorithm::DE;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected rmc or de)");
}

ExperimentSpec ExperimentSpec::defaults(const ObjectiveSpec& objective, Algorithm algorithm) {
  ExperimentSpec spec;
  spec.objective = objective;
  spec.algorithm = algorithm;
  if (algorithm == Algorithm::RMC) {
    spec.config = RmcConfig<double>::defaults(objective.dimension);
    spec.replicates = 200;
  } else {
    DeConfig<double> de;
    de.target_value = objective.known_best_value;
    spec.config = de;
    spec.replicates = 1000;
  }
  return spec;
}

RunResult<double> run_single(const ExperimentSpec& spec, std::uint64_t seed) {
  auto objective = make_objective(spec.objective, seed);
  const auto& box = spec.objective.box;
  if (spec.algorithm == Algorithm::RMC) {
    auto config = std::get<RmcConfig<double>>(spec.config);
    config.seed = seed;
    return rmc_optimize(objective, box, spec.objective.goal, config);
  }
  auto config = std::get<DeConfig<double>>(spec.config);
  config.seed = seed;
  if (spec.objective.stochastic && !config.target_measure) {
    const ObjectiveSpec objective_spec = spec.objective;
    config.target_measure = [objective_spec](const Vector<double>& x) {
      return noiseless_value(objective_spec, x);
    };
  }
  return de_optimize(objective, box, spec.objective.goal, config);
}

std::vector<ReplicateResult> run_experiment(const ExperimentSpec& spec) {
  if (spec.replicates < 1) throw ConfigError("replicates must be >= 1");
  const bool rmc = spec.algorithm == Algorithm::RMC;
  if (rmc != std::holds_alternative<RmcConfig<double>>(spec.config)) {
    throw ConfigError("algorithm_config does not match algorithm");
  }

  std::vector<ReplicateResult> out(spec.replicates);
  auto run_one = [&](std::size_t k) {
    ReplicateResult& slot = out[k];
    slot.seed = spec.base_seed + k;
    try {
      slot.result = run_single(spec, slot.seed);
    } catch (const std::exception& e) {
      slot.error = e.what();
    }
  };

  unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.replicates));
  if (threads <= 1) {
    for (std::size_t k = 0; k < spec.replicates; ++k) run_one(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < spec.replicates; k = next++) run_one(k);
    });
  }
  pool.clear();
  return out;
}

namespace {

double rms_of(const ExperimentSpec& spec) {
  if (const auto* rmc = std::get_if<RmcConfig<double>>(&spec.config)) return rmc->alpha_ladder.front();
  return 0.0;
}

}  // namespace

Table2Row summarize_table2(const std::vector<RunResult<double>>& results, const ExperimentSpec& spec) {
  if (results.empty()) throw DomainError("summarize_table2: no successful runs");
  const auto& objective = spec.objective;
  const double known = objective.known_best_value.value_or(0.0);

  Table2Row row;
  row.function_id = objective.id;
  row.rms = rms_of(spec);
  row.runs = results.size();

  std::vector<double> errors;
  errors.reserve(results.size());
  std::size_t best = 0;
  double best_noiseless = 0.0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    row.trm += static_cast<double>(r.counters.trm);
    row.tc += static_cast<double>(r.counters.tc);
    const double noiseless = objective.stochastic ? noiseless_value(objective, r.best_point.coords)
                                                  : r.best_fitness;
    errors.push_back(noiseless - known);
    if (k == 0 || is_better(noiseless, best_noiseless, objective.goal)) {
      best = k;
      best_noiseless = noiseless;
    }
  }
  const double count = static_cast<double>(results.size());
  row.trm /= count;
  row.tc /= count;
  row.best_point = results[best].best_point;
  row.bp = results[best].best_fitness;
  row.bp_noiseless = best_noiseless;

  double mean = 0.0;
  for (const double e : errors) mean += e;
  mean /= count;
  double var = 0.0;
  for (const double e : errors) var += (e - mean) * (e - mean);
  row.sd = std::sqrt(var / count);
  return row;
}

Table2Row summarize_table2(const std::vector<ReplicateResult>& results, const ExperimentSpec& spec) {
  std::vector<RunResult<double>> ok;
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.ok()) {
      ok.push_back(*r.result);
    } else {
      ++failed;
    }
  }
  Table2Row row = summarize_table2(ok, spec);
  row.failed_runs = failed;
  return row;
}

double compute_png(double reference_generations, double rmc_generations) {
  if (!(reference_generations > 0.0) || !(rmc_generations > 0.0)) {
    throw DomainError("compute_png: generation counts must be > 0");
  }
  return reference_generations / rmc_generations;
}

double truncate_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::trunc(value * scale) / scale;
}

std::vector<Table3Row> literature_table3() {
  using S = RowSource;
  return {
      {"PGA (lambda=4)", {1170, 1235, 3481, 3194, 1256}, S::LiteratureConstant},
      {"PGA (lambda=8)", {1526, 1671, 3634, 5243, 2076}, S::LiteratureConstant},
      {"Grefensstette", {2210, 14229, 2259, 3070, 4334}, S::LiteratureConstant},
      {"Eshelman", {1538, 9477, 1740, 4137, 3004}, S::LiteratureConstant},
      {"DE", {260, 670, 125, 2300, 1200}, S::LiteratureConstant},
      {"RMCGA", {157, 35, 5, 36, 1010}, S::LiteratureConstant},
  };
}

std::vector<LiteratureTable2Entry> literature_table2() {
  return {
      {ObjectiveId::F1, 0.1, 55, 102},
      {ObjectiveId::F2, 0.1, 15, 20},
      {ObjectiveId::F3, 0.1, 4, 1},
      {ObjectiveId::F4, 0.1, 15, 21},
      {ObjectiveId::F5, 0.1, 340, 670},
  };
}

std::array<double, 5> literature_png() {
  const auto rows = literature_table3();
  const auto find = [&](const std::string& label) -> const Table3Row& {
    for (const auto& r : rows) {
      if (r.algorithm_label == label) return r;
    }
    throw DomainError("literature_png: missing row " + label);
  };
  const auto& de = find("DE");
  const auto& rmc = find("RMCGA");
  std::array<double, 5> png{};
  for (std::size_t i = 0; i < png.size(); ++i) {
    png[i] = truncate_decimals(compute_png(de.generations[i], rmc.generations[i]), 3);
  }
  return png;
}

double mean_generations(const std::vector<ReplicateResult>& results) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : results) {
    if (!r.ok()) continue;
    sum += static_cast<double>(r.result->counters.generations());
    ++count;
  }
  if (count == 0) throw DomainError("mean_generations: no successful runs");
  return sum / static_cast<double>(count);
}

}  // namespace rmc
