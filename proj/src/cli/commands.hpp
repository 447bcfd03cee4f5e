#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sobtrace/functionals.hpp"

namespace sobtrace::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInputError = 2 };

struct RunConfig {
  std::string command;
  std::string input;
  int m = 2;
  bool m_given = false;
  double p = 2.0;
  std::string mode = "lmp";
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::string out;
  double tol = 1e-9;
  std::size_t instances = 10;
  bool negative_control = false;
};

/// "inf"/"infinity" or a number > 1; nullopt otherwise.
std::optional<double> parse_exponent(const std::string& text);

/// SOBTRACE_TOL if set; throws InputError on an unparsable or nonpositive value.
std::optional<double> tolerance_from_env();

/// Checks the RunConfig invariants; throws InputError.
void validate_config(const RunConfig& config);

nlohmann::ordered_json report_to_json(const TraceReport& report);

int cmd_analyze(const RunConfig& config, std::ostream& out);
int cmd_extend(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_euler(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command, writing to config.out (or `out` when
/// empty). Input problems go to `err` and give exit code 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sobtrace::cli
