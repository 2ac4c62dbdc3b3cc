#pragma once

/**
 * @file commands.hpp
 * @brief Subcommands of the heunstokes tool.
 *
 * Each command returns a structured report (JSON, stable key order, top-level
 * "schema": 1) and an equivalent CSV table. Exit codes: 0 all checks passed,
 * 1 a check failed, 2 usage error, 3 the computation raised an error.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace heunstokes::cli {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
    bool ok = true;
    Json report = Json::object(); ///< command-specific fields
    Table table;
};

CommandResult cmd_stokes(const RunConfig& cfg);
CommandResult cmd_series(const RunConfig& cfg);
CommandResult cmd_borel(const RunConfig& cfg);
CommandResult cmd_unfold(const RunConfig& cfg);
CommandResult cmd_converge(const RunConfig& cfg);
CommandResult cmd_classify(const RunConfig& cfg);
CommandResult cmd_oracle_check(const RunConfig& cfg);
CommandResult cmd_monodromy(const RunConfig& cfg);

/// Dispatch by subcommand name; throws UsageError for unknown names.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

/// Full JSON document or CSV text of a result.
std::string render(const std::string& name, const CommandResult& result, const RunConfig& cfg);

/// Parse arguments, run, write output; returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace heunstokes::cli
