#ifndef WALKLAB_CLI_RUN_CONFIG_HPP_
#define WALKLAB_CLI_RUN_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace walklab::cli {

enum class Command { growth, drift, entropy, report, optimize, compare, lln };

const char* to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name);

struct SystemSource {
  std::string name;
  std::string text;
};

// Everything that determines a run's outputs, plus a few execution knobs
// (workers, output paths, caching) that do not.
struct RunConfig {
  Command command = Command::report;
  std::string group;
  // "uniform", or the contents of a measure file.
  std::string measure = "uniform";
  std::string measure_text;
  std::uint64_t seed = 1;

  std::optional<int> max_n;
  std::optional<int> steps;
  std::optional<int> trials;
  std::optional<double> eps;
  std::optional<double> l_ref;
  std::optional<int> restarts;
  std::optional<std::size_t> cap;
  std::optional<std::size_t> budget;

  std::vector<SystemSource> systems;
  bool include_standard = false;
  std::string policy = "uniform";

  int workers = 1;
  std::string out;
  std::string csv;
  bool no_cache = false;

  // Fills every unset budget with the command's default.
  void resolve_defaults();

  // Outcome-relevant fields only, with resolved defaults; keys sorted.
  nlohmann::json canonical() const;
  // FNV-1a 64 of canonical().dump(), as 16 hex digits.
  std::string hash() const;
};

}  // namespace walklab::cli

#endif  // WALKLAB_CLI_RUN_CONFIG_HPP_
