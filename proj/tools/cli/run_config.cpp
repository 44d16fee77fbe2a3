#include "run_config.hpp"

#include <array>
#include <cstdio>

namespace walklab::cli {

namespace {

constexpr std::array<std::pair<Command, const char*>, 7> kCommands{{
    {Command::growth, "growth"},
    {Command::drift, "drift"},
    {Command::entropy, "entropy"},
    {Command::report, "report"},
    {Command::optimize, "optimize"},
    {Command::compare, "compare"},
    {Command::lln, "lln"},
}};

template <class T>
void set_default(std::optional<T>& slot, T value) {
  if (!slot) {
    slot = value;
  }
}

}  // namespace

const char* to_string(Command c) noexcept {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) {
      return name;
    }
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, text] : kCommands) {
    if (name == text) {
      return cmd;
    }
  }
  return std::nullopt;
}

void RunConfig::resolve_defaults() {
  switch (command) {
    case Command::growth:
      set_default(max_n, 8);
      set_default<std::size_t>(cap, 10'000'000);
      break;
    case Command::drift:
      set_default(steps, 10'000);
      set_default(trials, 200);
      break;
    case Command::entropy:
      set_default(max_n, 10);
      set_default<std::size_t>(budget, 10'000'000);
      break;
    case Command::optimize:
      set_default(restarts, 5);
      [[fallthrough]];
    case Command::report:
      set_default(max_n, 10);
      set_default(steps, 10'000);
      set_default(trials, 200);
      set_default<std::size_t>(budget, 10'000'000);
      set_default<std::size_t>(cap, 10'000'000);
      break;
    case Command::compare:
      set_default(max_n, 10);
      set_default(steps, 0);
      set_default(trials, 4000);
      set_default(restarts, 3);
      set_default<std::size_t>(budget, 2'000'000);
      set_default<std::size_t>(cap, 2'000'000);
      break;
    case Command::lln:
      set_default(steps, 400);
      set_default(eps, 0.2);
      set_default(trials, 10'000);
      set_default<std::size_t>(budget, 2'000'000);
      break;
  }
}

nlohmann::json RunConfig::canonical() const {
  RunConfig r = *this;
  r.resolve_defaults();
  nlohmann::json j;
  j["command"] = to_string(r.command);
  j["group"] = r.group;
  j["seed"] = r.seed;
  if (r.command != Command::growth) {
    j["measure"] = r.measure;
    if (r.measure != "uniform") {
      j["measure_text"] = r.measure_text;
    }
  }
  auto put = [&j](const char* key, const auto& slot) {
    if (slot) {
      j[key] = *slot;
    }
  };
  put("max_n", r.max_n);
  put("steps", r.steps);
  put("trials", r.trials);
  put("eps", r.eps);
  put("l_ref", r.l_ref);
  put("restarts", r.restarts);
  put("cap", r.cap);
  put("budget", r.budget);
  if (r.command == Command::compare) {
    nlohmann::json systems = nlohmann::json::array();
    for (const auto& s : r.systems) {
      systems.push_back({{"name", s.name}, {"text", s.text}});
    }
    j["systems"] = systems;
    j["include_standard"] = r.include_standard;
    j["policy"] = r.policy;
  }
  return j;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : canonical().dump()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace walklab::cli
