#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "walklab/error.hpp"
#include "walklab/version.hpp"

namespace {

using walklab::cli::Command;
using walklab::cli::RunConfig;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw walklab::Error(walklab::ErrorKind::invalid_input,
                         "cannot read " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Flags {
  std::string group;
  std::string measure = "uniform";
  std::uint64_t seed = 1;
  int max_n = 0;
  int steps = 0;
  int trials = 0;
  double eps = 0.0;
  double l_ref = 0.0;
  int restarts = 0;
  std::size_t cap = 0;
  std::size_t budget = 0;
  std::vector<std::string> systems;
  bool standard = false;
  std::string policy = "uniform";
  int workers = 1;
  std::string out;
  std::string csv;
  bool no_cache = false;

  CLI::Option* max_n_opt = nullptr;
  CLI::Option* steps_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* l_ref_opt = nullptr;
  CLI::Option* restarts_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
  CLI::Option* budget_opt = nullptr;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--group", f.group,
                  "free:k, abelian:k, lfgroup:k or lfsemigroup:k")
      ->required();
  sub->add_option("--measure", f.measure, "uniform, or a measure file");
  sub->add_option("--seed", f.seed, "master seed");
  f.max_n_opt = sub->add_option("--max-n", f.max_n,
                                "depth: BFS radius or convolution steps");
  f.steps_opt = sub->add_option("--steps", f.steps, "walk length in steps");
  f.trials_opt = sub->add_option("--trials", f.trials, "Monte Carlo trials");
  f.eps_opt = sub->add_option("--eps", f.eps, "relative band half-width");
  f.l_ref_opt =
      sub->add_option("--l-ref", f.l_ref, "reference drift (letters/step)");
  f.restarts_opt = sub->add_option("--restarts", f.restarts,
                                   "optimizer restarts");
  f.cap_opt = sub->add_option("--cap", f.cap, "element cap for BFS tables");
  f.budget_opt = sub->add_option("--budget", f.budget,
                                 "entry budget for exact convolutions");
  sub->add_option("--systems,--system", f.systems,
                  "generating-system files (one word per line)");
  sub->add_flag("--standard", f.standard,
                "include the standard generating system");
  sub->add_option("--policy", f.policy, "uniform or optimize (compare)");
  sub->add_option("--workers", f.workers, "worker threads")
      ->check(CLI::Range(1, 256));
  sub->add_option("--out", f.out, "append the record to this file");
  sub->add_option("--csv", f.csv, "write plot-ready sequences here");
  sub->add_flag("--no-cache", f.no_cache, "bypass the result cache");
}

RunConfig to_config(Command command, const Flags& f) {
  RunConfig c;
  c.command = command;
  c.group = f.group;
  c.seed = f.seed;
  if (f.measure != "uniform") {
    c.measure = "file";
    c.measure_text = read_file(f.measure);
  }
  if (f.max_n_opt->count() > 0) c.max_n = f.max_n;
  if (f.steps_opt->count() > 0) c.steps = f.steps;
  if (f.trials_opt->count() > 0) c.trials = f.trials;
  if (f.eps_opt->count() > 0) c.eps = f.eps;
  if (f.l_ref_opt->count() > 0) c.l_ref = f.l_ref;
  if (f.restarts_opt->count() > 0) c.restarts = f.restarts;
  if (f.cap_opt->count() > 0) c.cap = f.cap;
  if (f.budget_opt->count() > 0) c.budget = f.budget;
  for (const auto& path : f.systems) {
    c.systems.push_back(
        {std::filesystem::path(path).stem().string(), read_file(path)});
  }
  c.include_standard = f.standard;
  c.policy = f.policy;
  c.workers = f.workers;
  c.out = f.out;
  c.csv = f.csv;
  c.no_cache = f.no_cache;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth, drift and entropy of random walks on groups"};
  app.set_version_flag("--version", walklab::kVersion);
  app.require_subcommand(1);

  const std::vector<std::pair<Command, const char*>> commands{
      {Command::growth, "sphere and ball sizes, logarithmic volume"},
      {Command::drift, "Monte Carlo drift E l(X_n)/n"},
      {Command::entropy, "exact entropies H(mu^{*n}) and the entropy rate"},
      {Command::report, "v, l, h, q and the extremality verdict"},
      {Command::optimize, "search for the measure maximising h/(l v)"},
      {Command::compare, "rank generating systems by q"},
      {Command::lln, "mass of the band |l(X_n)/(l n) - 1| <= eps"},
  };
  Flags flags;
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(walklab::cli::to_string(cmd), help);
    subs.emplace_back(cmd, sub);
  }
  for (auto& [cmd, sub] : subs) {
    add_common(sub, flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : walklab::cli::kExitInvalidInput;
  }

  Command command = Command::report;
  for (auto& [cmd, sub] : subs) {
    if (sub->parsed()) {
      command = cmd;
      flags.max_n_opt = sub->get_option("--max-n");
      flags.steps_opt = sub->get_option("--steps");
      flags.trials_opt = sub->get_option("--trials");
      flags.eps_opt = sub->get_option("--eps");
      flags.l_ref_opt = sub->get_option("--l-ref");
      flags.restarts_opt = sub->get_option("--restarts");
      flags.cap_opt = sub->get_option("--cap");
      flags.budget_opt = sub->get_option("--budget");
    }
  }

  try {
    const RunConfig config = to_config(command, flags);
    const auto record = walklab::cli::run_cached(config);
    const std::string line = record.to_json().dump();
    if (config.out.empty()) {
      std::cout << line << '\n';
    } else {
      std::ofstream out(config.out, std::ios::app);
      if (!out) {
        std::cerr << "walklab: cannot write " << config.out << '\n';
        return walklab::cli::kExitInvalidInput;
      }
      out << line << '\n';
    }
    if (!record.error.is_null()) {
      std::cerr << "walklab: " << record.error.value("kind", "")
                << ": " << record.error.value("message", "") << '\n';
    }
    if (!config.csv.empty() &&
        !walklab::cli::write_csv(record, config.csv)) {
      std::cerr << "walklab: " << walklab::cli::to_string(command)
                << " has no tabular output; --csv ignored\n";
    }
    return record.exit_code;
  } catch (const walklab::Error& e) {
    std::cerr << "walklab: " << e.what() << '\n';
    return walklab::cli::kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "walklab: internal error: " << e.what() << '\n';
    return walklab::cli::kExitInternal;
  }
}
