#pragma once

// Scenario files: JSON configs naming a model kind and its parameters,
// dispatched to the model modules and rendered as a trajectory table
// (trajectory.csv) plus a machine-readable report (report.json).

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace econodyn::scenario {

using Json = nlohmann::ordered_json;

enum class Status : int {
  ok = 0,
  usage = 1,
  schema = 2,
  missing_file = 3,
  solver = 4,
  io = 5,
};

class Failure : public std::runtime_error {
 public:
  Failure(Status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

struct Overrides {
  std::optional<long long> grid;
  std::optional<std::string> out;
  std::optional<std::string> variants;  // path to a variants JSON file
};

struct Artifacts {
  std::string csv;  // empty when the run failed before producing a trajectory
  Json report;
  Status status = Status::ok;
  std::string message;  // set when status != ok
};

/// Reads a JSON file. Throws Failure(missing_file) or Failure(schema).
Json load_json(const std::string& path);

/// Validates the config and runs it. Schema problems throw Failure(schema)
/// naming the field path; solver failures come back in Artifacts with
/// status solver and an "error" entry in the report.
Artifacts run(const Json& config, const Overrides& overrides = {});

/// Health report of the coefficient matrix of any balance-type config.
Artifacts diagnose(const Json& config, const Overrides& overrides = {});

/// Output directory: --out, else the config's "output" field.
std::string output_dir(const Json& config, const Overrides& overrides);

/// 17 significant digits in scientific notation; non-finite values print
/// as inf, -inf or nan.
std::string format_double(double value);

/// Two-space indented JSON with floats in format_double form (non-finite
/// floats become null) and keys in insertion order.
std::string dump_report(const Json& report);

/// Writes trajectory.csv (when non-empty) and report.json into dir,
/// creating it. Throws Failure(io).
void write_artifacts(const Artifacts& artifacts, const std::string& dir);

enum class Command { run, diagnose };

/// Whole pipeline behind the command line; returns the process exit status
/// and prints diagnostics to `err`.
int execute(Command command, const std::string& config_path, const Overrides& overrides,
            std::ostream& out, std::ostream& err);

}  // namespace econodyn::scenario
