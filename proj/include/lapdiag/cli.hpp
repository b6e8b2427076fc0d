#pragma once

#include "lapdiag/baselines.hpp"
#include "lapdiag/centrality.hpp"
#include "lapdiag/diag.hpp"
#include "lapdiag/metrics.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lapdiag {

/// Process exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_input = 2, exit_solver = 3 };

const char *version_string();

nlohmann::json to_json(const PhaseTimings &t);
nlohmann::json to_json(const DiagEstimate &est);
nlohmann::json to_json(const ErrorReport &report);
nlohmann::json to_json(const Scores &scores);

/// The estimate vector of a run record: payload.diag, else payload.values.
std::vector<double> record_vector(const nlohmann::json &record);

/**
 * Entry point of the `lapdiag` tool; args excludes the program name.
 * Subcommands: diag, exact, bekas, centrality, compare, bench, generate, convert, rerun.
 * JSON results go to --out or to `out`; diagnostics go to `err`.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace lapdiag
