#include "rmc/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmc/harness.hpp"
#include "rmc/objectives.hpp"
#include "rmc/serialize.hpp"

namespace rmc::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string function;
  std::string algorithm = "rmc";
  std::vector<double> alpha_ladder;
  std::vector<double> beta_ladder;
  std::optional<std::size_t> direction_budget;
  std::optional<std::size_t> vertex_budget;
  std::optional<std::uint64_t> max_generations;
  std::optional<std::size_t> replicates;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string trace;
  std::size_t resolution = 201;
  unsigned threads = 1;
  bool literature_only = false;
};

/// Everything resolved before any computation starts.
struct Plan {
  std::vector<ObjectiveSpec> objectives;
  Algorithm algorithm = Algorithm::RMC;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RmcConfig<double> rmc_config(const Options& o, Index n) {
  auto config = RmcConfig<double>::defaults(n);
  if (!o.alpha_ladder.empty()) config.alpha_ladder = o.alpha_ladder;
  if (!o.beta_ladder.empty()) config.beta_ladder = o.beta_ladder;
  if (o.direction_budget) config.direction_budget = *o.direction_budget;
  if (o.vertex_budget) config.vertex_budget = *o.vertex_budget;
  if (o.max_generations) config.max_generations = *o.max_generations;
  config.seed = o.seed;
  config.validate();
  return config;
}

ExperimentSpec experiment(const Options& o, const ObjectiveSpec& objective, Algorithm algorithm) {
  auto spec = ExperimentSpec::defaults(objective, algorithm);
  if (algorithm == Algorithm::RMC) {
    spec.config = rmc_config(o, objective.dimension);
  } else {
    auto& de = std::get<DeConfig<double>>(spec.config);
    if (o.max_generations) de.max_generations = *o.max_generations;
    de.validate(objective.dimension);
  }
  if (o.replicates) spec.replicates = *o.replicates;
  spec.base_seed = o.seed;
  spec.threads = o.threads;
  return spec;
}

Plan resolve(const Options& o, const std::string& command) {
  Plan plan;
  if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
  if (o.replicates && *o.replicates < 1) throw UsageError("--replicates must be >= 1");
  plan.algorithm = parse_algorithm(o.algorithm);
  if (!o.function.empty()) {
    plan.objectives.push_back(objective_spec(parse_objective_id(o.function)));
  } else if (command == "table2" || command == "table3") {
    for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::F4, ObjectiveId::F5}) {
      plan.objectives.push_back(objective_spec(id));
    }
  } else {
    throw UsageError("--function is required for " + command);
  }
  if (command == "table3" && !o.function.empty()) throw UsageError("table3 always covers f1..f5");
  // Surface configuration errors now rather than mid-batch.
  for (const auto& objective : plan.objectives) {
    experiment(o, objective, Algorithm::RMC);
    experiment(o, objective, Algorithm::DE);
  }
  return plan;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + o.output + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing output file '" + o.output + "'");
}

std::string run_optimize(const Options& o, const Plan& plan) {
  const auto& objective = plan.objectives.front();
  const auto result = run_single(experiment(o, objective, plan.algorithm), o.seed);
  if (!o.trace.empty()) emit_trace(result, o.trace);
  std::ostringstream s;
  if (o.format == "csv") {
    write_run_csv(s, result);
  } else {
    json j = to_json(result);
    j["function"] = to_string(objective.id);
    j["algorithm"] = to_string(plan.algorithm);
    j["seed"] = o.seed;
    s << j.dump(2) << '\n';
  }
  return s.str();
}

std::string run_benchmark(const Options& o, const Plan& plan) {
  const auto& objective = plan.objectives.front();
  const auto spec = experiment(o, objective, plan.algorithm);
  const auto results = run_experiment(spec);
  const auto row = summarize_table2(results, spec);
  std::ostringstream s;
  if (o.format == "csv") {
    s << "seed,best_fitness,trm,tc,generations,evaluations,termination_reason,error\n";
    for (const auto& r : results) {
      s << r.seed << ',';
      if (r.ok()) {
        const auto& x = *r.result;
        s << format_shortest(x.best_fitness) << ',' << x.counters.trm << ',' << x.counters.tc << ','
          << x.counters.generations() << ',' << x.evaluations << ',' << to_string(x.reason) << ",\n";
      } else {
        s << ",,,,,,\"" << r.error << "\"\n";
      }
    }
  } else {
    json runs = json::array();
    for (const auto& r : results) {
      json entry = {{"seed", r.seed}};
      if (r.ok()) {
        entry["best_fitness"] = r.result->best_fitness;
        entry["best_point"] = to_json(*r.result)["best_point"];
        entry["trm"] = r.result->counters.trm;
        entry["tc"] = r.result->counters.tc;
        entry["generations"] = r.result->counters.generations();
        entry["termination_reason"] = to_string(r.result->reason);
      } else {
        entry["error"] = r.error;
      }
      runs.push_back(std::move(entry));
    }
    json j = {
        {"objective", to_json(objective)},
        {"algorithm", to_string(plan.algorithm)},
        {"replicates", spec.replicates},
        {"base_seed", spec.base_seed},
        {"mean_generations", mean_generations(results)},
        {"summary", to_json(row)},
        {"runs", std::move(runs)},
    };
    s << j.dump(2) << '\n';
  }
  return s.str();
}

std::string run_table2(const Options& o, const Plan& plan) {
  std::vector<Table2Row> rows;
  for (const auto& objective : plan.objectives) {
    const auto spec = experiment(o, objective, Algorithm::RMC);
    rows.push_back(summarize_table2(run_experiment(spec), spec));
  }
  std::ostringstream s;
  if (o.format == "csv") {
    write_table2_csv(s, rows);
  } else {
    json j = json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    s << j.dump(2) << '\n';
  }
  return s.str();
}

std::string run_table3(const Options& o, const Plan& plan) {
  auto rows = literature_table3();
  const auto png = literature_png();
  std::vector<double> png_row(png.begin(), png.end());
  std::optional<Table3Row> measured_png;
  if (!o.literature_only) {
    Table3Row rmc{"RMC (measured)", {}, RowSource::Measured};
    Table3Row de{"DE (measured)", {}, RowSource::Measured};
    Table3Row ratio{"PNG (measured)", {}, RowSource::Measured};
    for (std::size_t i = 0; i < plan.objectives.size(); ++i) {
      const auto& objective = plan.objectives[i];
      rmc.generations[i] = mean_generations(run_experiment(experiment(o, objective, Algorithm::RMC)));
      de.generations[i] = mean_generations(run_experiment(experiment(o, objective, Algorithm::DE)));
      ratio.generations[i] = truncate_decimals(compute_png(de.generations[i], rmc.generations[i]), 3);
    }
    rows.push_back(rmc);
    rows.push_back(de);
    measured_png = ratio;
  }
  std::ostringstream s;
  if (o.format == "csv") {
    write_table3_csv(s, rows, png_row);
    if (measured_png) write_table3_csv(s, {*measured_png}, {});
  } else {
    json j = {{"rows", json::array()}, {"png", png_row}};
    for (const auto& r : rows) j["rows"].push_back(to_json(r));
    if (measured_png) j["png_measured"] = measured_png->generations;
    s << j.dump(2) << '\n';
  }
  return s.str();
}

std::string run_oracle(const Options& o, const Plan& plan) {
  const auto& objective = plan.objectives.front();
  const auto best = grid_oracle(objective, o.resolution);
  std::ostringstream s;
  if (o.format == "csv") {
    s << "function,resolution,best_value";
    for (Index i = 0; i < best.best_point.size(); ++i) s << ",x_" << i;
    s << '\n' << to_string(objective.id) << ',' << o.resolution << ',' << format_shortest(best.best_value);
    for (Index i = 0; i < best.best_point.size(); ++i) s << ',' << format_shortest(best.best_point[i]);
    s << '\n';
  } else {
    std::vector<double> point(best.best_point.data(), best.best_point.data() + best.best_point.size());
    json j = {{"function", to_string(objective.id)},
              {"resolution", o.resolution},
              {"best_point", point},
              {"best_value", best.best_value}};
    s << j.dump(2) << '\n';
  }
  return s.str();
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rotational mutation and crossover optimizer with benchmark harness", "rmc_cli"};
  app.set_config("--config", "", "Flat key=value file; keys are long flag names");
  app.option_defaults()->always_capture_default();

  app.add_option("--function", o.function, "f1|f2|f3|f4|f5|gp|e");
  app.add_option("--algorithm", o.algorithm, "rmc|de");
  app.add_option("--alpha-ladder", o.alpha_ladder, "Comma-separated mutation steps")->delimiter(',');
  app.add_option("--beta-ladder", o.beta_ladder, "Comma-separated redirect steps")->delimiter(',');
  app.add_option("--direction-budget", o.direction_budget, "Max sign vectors per phase");
  app.add_option("--vertex-budget", o.vertex_budget, "Max vertices in elitism");
  app.add_option("--max-generations", o.max_generations, "Generation cap");
  app.add_option("--replicates", o.replicates, "Runs per experiment");
  app.add_option("--seed", o.seed, "Base seed");
  app.add_option("--format", o.format, "json|csv");
  app.add_option("--output", o.output, "Write the report here instead of stdout");
  app.add_option("--trace", o.trace, "Trajectory CSV path (optimize)");
  app.add_option("--resolution", o.resolution, "Grid points per axis (oracle)");
  app.add_option("--threads", o.threads, "Replicate worker threads (0 = all cores)");
  app.add_flag("--literature-only", o.literature_only, "table3: skip live measurement");

  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_subcommand("optimize", "One run; prints the RunResult");
  app.add_subcommand("benchmark", "Replicated runs of one function and algorithm");
  app.add_subcommand("table2", "RMC summary rows for f1..f5");
  app.add_subcommand("table3", "Average generations per algorithm, with PNG");
  app.add_subcommand("oracle", "Exhaustive grid minimum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Plan plan;
  try {
    plan = resolve(o, command);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::string text;
    if (command == "optimize") {
      text = run_optimize(o, plan);
    } else if (command == "benchmark") {
      text = run_benchmark(o, plan);
    } else if (command == "table2") {
      text = run_table2(o, plan);
    } else if (command == "table3") {
      text = run_table3(o, plan);
    } else {
      text = run_oracle(o, plan);
    }
    emit(o, out, text);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace rmc::cli
