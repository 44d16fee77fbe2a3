#ifndef WALKLAB_CLI_COMMANDS_HPP_
#define WALKLAB_CLI_COMMANDS_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "run_config.hpp"

namespace walklab::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalidInput = 2,
  kExitBudgetPartial = 3,
  kExitUndefinedDrift = 4,
  kExitOptimizationFailed = 5,
};

// One run's record. `outputs` depends only on the canonical config; the
// remaining fields describe the run itself.
struct ResultRecord {
  std::string command;
  nlohmann::json config;
  std::string config_hash;
  std::string version;
  // "ok", "budget_partial" or "error".
  std::string status = "ok";
  nlohmann::json outputs = nlohmann::json::object();
  nlohmann::json error;  // {kind, message} when status != "ok"
  double wall_clock_seconds = 0.0;
  bool cache_hit = false;
  int exit_code = kExitOk;

  nlohmann::json to_json() const;
  static ResultRecord from_json(const nlohmann::json& j);
};

// Runs one command. Library errors become records with status "error" (or
// "budget_partial" with whatever was finished) and the matching exit code.
ResultRecord run(const RunConfig& config);

// Consults the cache unless config.no_cache, runs on a miss, stores
// deterministic records.
ResultRecord run_cached(const RunConfig& config);

// Plot-ready CSV of the record's sequences (entropy, growth, optimize trace,
// compare ranking). Returns false when the command has nothing tabular.
bool write_csv(const ResultRecord& record, const std::string& path);

}  // namespace walklab::cli

#endif  // WALKLAB_CLI_COMMANDS_HPP_
