#include "rmc/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace rmc {

using nlohmann::json;

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_17g(double value) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

const char* to_string(RowSource source) {
  return source == RowSource::Measured ? "measured" : "literature";
}

TerminationReason parse_termination_reason(std::string_view name) {
  for (const auto r : {TerminationReason::LeftSearchSpace, TerminationReason::BoxCollapsed,
                       TerminationReason::GenerationCap, TerminationReason::TargetReached,
                       TerminationReason::PopulationConverged}) {
    if (name == to_string(r)) return r;
  }
  throw DomainError("unknown termination reason '" + std::string(name) + "'");
}

TraceEvent parse_trace_event(std::string_view name) {
  for (const auto e : {TraceEvent::Elitism, TraceEvent::Mutation, TraceEvent::Redirect,
                       TraceEvent::Crossover}) {
    if (name == to_string(e)) return e;
  }
  throw DomainError("unknown trace event '" + std::string(name) + "'");
}

namespace {

json vec_json(const Vector<double>& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector<double> vec_from(const json& j) {
  Vector<double> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
  return v;
}

std::string join_coords(const Vector<double>& v, const char* sep) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += format_shortest(v[i]);
  }
  return out;
}

}  // namespace

json to_json(const RunResult<double>& result) {
  json trajectory = json::array();
  for (const auto& rec : result.trajectory) {
    trajectory.push_back({{"generation", rec.generation},
                          {"event", to_string(rec.event)},
                          {"point", vec_json(rec.point)},
                          {"fitness", rec.fitness}});
  }
  return {
      {"best_point", vec_json(result.best_point.coords)},
      {"best_fitness", result.best_fitness},
      {"counters",
       {{"trm", result.counters.trm},
        {"tc", result.counters.tc},
        {"generations", result.counters.generations()}}},
      {"termination_reason", to_string(result.reason)},
      {"evaluations", result.evaluations},
      {"trajectory", std::move(trajectory)},
  };
}

RunResult<double> run_result_from_json(const json& j) {
  try {
    RunResult<double> r;
    r.best_fitness = j.at("best_fitness").get<double>();
    r.best_point = Point<double>{vec_from(j.at("best_point")), r.best_fitness};
    r.counters.trm = j.at("counters").at("trm").get<std::uint64_t>();
    r.counters.tc = j.at("counters").at("tc").get<std::uint64_t>();
    r.reason = parse_termination_reason(j.at("termination_reason").get<std::string>());
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    for (const auto& rec : j.at("trajectory")) {
      r.trajectory.push_back({rec.at("generation").get<std::uint64_t>(),
                              parse_trace_event(rec.at("event").get<std::string>()),
                              vec_from(rec.at("point")), rec.at("fitness").get<double>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw DomainError(std::string("run_result_from_json: ") + e.what());
  }
}

json to_json(const ObjectiveSpec& spec) {
  json j = {
      {"id", to_string(spec.id)},
      {"dimension", spec.dimension},
      {"lower", vec_json(spec.box.lower())},
      {"upper", vec_json(spec.box.upper())},
      {"goal", to_string(spec.goal)},
      {"stochastic", spec.stochastic},
  };
  j["known_best_point"] = spec.known_best_point ? vec_json(spec.known_best_point->coords) : json(nullptr);
  j["known_best_value"] = spec.known_best_value ? json(*spec.known_best_value) : json(nullptr);
  j["initial_population"] = spec.initial_population ? json(*spec.initial_population) : json(nullptr);
  return j;
}

ObjectiveSpec objective_spec_from_json(const json& j) {
  try {
    ObjectiveSpec spec;
    spec.id = parse_objective_id(j.at("id").get<std::string>());
    spec.dimension = j.at("dimension").get<Index>();
    spec.box = SearchBox<double>(vec_from(j.at("lower")), vec_from(j.at("upper")));
    if (spec.box.dimension() != spec.dimension) throw DomainError("objective spec: dimension mismatch");
    const auto goal = j.at("goal").get<std::string>();
    if (goal == "minimize") {
      spec.goal = Goal::Minimize;
    } else if (goal == "maximize") {
      spec.goal = Goal::Maximize;
    } else {
      throw DomainError("objective spec: unknown goal '" + goal + "'");
    }
    spec.stochastic = j.at("stochastic").get<bool>();
    if (j.contains("known_best_value") && !j["known_best_value"].is_null()) {
      spec.known_best_value = j["known_best_value"].get<double>();
    }
    if (j.contains("known_best_point") && !j["known_best_point"].is_null()) {
      spec.known_best_point = Point<double>{vec_from(j["known_best_point"]), spec.known_best_value};
    }
    if (j.contains("initial_population") && !j["initial_population"].is_null()) {
      spec.initial_population = j["initial_population"].get<int>();
    }
    return spec;
  } catch (const json::exception& e) {
    throw DomainError(std::string("objective_spec_from_json: ") + e.what());
  }
}

json to_json(const Table2Row& row) {
  return {
      {"function", to_string(row.function_id)},
      {"rms", row.rms},
      {"trm", row.trm},
      {"tc", row.tc},
      {"best_point", vec_json(row.best_point.coords)},
      {"bp", row.bp},
      {"bp_noiseless", row.bp_noiseless},
      {"sd", row.sd},
      {"runs", row.runs},
      {"failed_runs", row.failed_runs},
  };
}

json to_json(const Table3Row& row) {
  return {
      {"algorithm", row.algorithm_label},
      {"generations", row.generations},
      {"source", to_string(row.source)},
  };
}

void write_run_csv(std::ostream& out, const RunResult<double>& result) {
  const Index n = result.best_point.dimension();
  out << "best_fitness,trm,tc,generations,evaluations,termination_reason";
  for (Index i = 0; i < n; ++i) out << ",x_" << i;
  out << '\n';
  out << format_shortest(result.best_fitness) << ',' << result.counters.trm << ','
      << result.counters.tc << ',' << result.counters.generations() << ',' << result.evaluations
      << ',' << to_string(result.reason);
  for (Index i = 0; i < n; ++i) out << ',' << format_shortest(result.best_point.coords[i]);
  out << '\n';
}

void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows) {
  out << "function,rms,trm,tc,best_point,bp,bp_noiseless,sd,runs,failed_runs\n";
  for (const auto& r : rows) {
    out << to_string(r.function_id) << ',' << format_shortest(r.rms) << ','
        << format_shortest(r.trm) << ',' << format_shortest(r.tc) << ",\""
        << join_coords(r.best_point.coords, " ") << "\"," << format_shortest(r.bp) << ','
        << format_shortest(r.bp_noiseless) << ',' << format_shortest(r.sd) << ',' << r.runs << ','
        << r.failed_runs << '\n';
  }
}

void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows,
                      const std::vector<double>& png) {
  out << "algorithm,F1,F2,F3,F4,F5\n";
  for (const auto& r : rows) {
    out << r.algorithm_label;
    for (const double g : r.generations) out << ',' << format_shortest(g);
    out << '\n';
  }
  if (!png.empty()) {
    out << "PNG";
    for (const double p : png) out << ',' << format_shortest(p);
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const RunResult<double>& result) {
  Index n = result.best_point.dimension();
  if (!result.trajectory.empty()) n = result.trajectory.front().point.size();
  out << "generation,event";
  for (Index i = 0; i < n; ++i) out << ",x_" << i;
  out << ",fitness\n";
  for (const auto& rec : result.trajectory) {
    out << rec.generation << ',' << to_string(rec.event);
    for (Index i = 0; i < rec.point.size(); ++i) out << ',' << format_17g(rec.point[i]);
    out << ',' << format_17g(rec.fitness) << '\n';
  }
}

void emit_trace(const RunResult<double>& result, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open trace file '" + path + "' for writing");
  write_trace_csv(file, result);
  file.flush();
  if (!file) throw IoError("failed writing trace file '" + path + "'");
}

}  // namespace rmc
