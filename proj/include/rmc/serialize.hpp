#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmc/harness.hpp"
#include "rmc/objectives.hpp"
#include "rmc/optimizer.hpp"

namespace rmc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the same double.
std::string format_shortest(double value);
/// printf "%.17g".
std::string format_17g(double value);

const char* to_string(RowSource source);
TerminationReason parse_termination_reason(std::string_view name);
TraceEvent parse_trace_event(std::string_view name);

nlohmann::json to_json(const RunResult<double>& result);
RunResult<double> run_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ObjectiveSpec& spec);
ObjectiveSpec objective_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Table2Row& row);
nlohmann::json to_json(const Table3Row& row);

/// Header plus one row; coordinates as x_0..x_{n-1}.
void write_run_csv(std::ostream& out, const RunResult<double>& result);
void write_table2_csv(std::ostream& out, const std::vector<Table2Row>& rows);
/// algorithm,F1,...,F5 rows followed by a PNG row when `png` is non-empty.
void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows,
                      const std::vector<double>& png);

/// generation,event,x_0..x_{n-1},fitness with 17 significant digits and LF endings.
void write_trace_csv(std::ostream& out, const RunResult<double>& result);
/// write_trace_csv to a file. Throws IoError when the path cannot be written.
void emit_trace(const RunResult<double>& result, const std::string& path);

}  // namespace rmc
