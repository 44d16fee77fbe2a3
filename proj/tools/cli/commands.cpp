#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "cache.hpp"
#include "walklab/enumeration.hpp"
#include "walklab/error.hpp"
#include "walklab/inequality.hpp"
#include "walklab/measure.hpp"
#include "walklab/parallel.hpp"
#include "walklab/systems.hpp"
#include "walklab/version.hpp"
#include "walklab/walks.hpp"

namespace walklab::cli {

namespace {

using nlohmann::json;

constexpr int kBfsDepth = 7;

json number_or_null(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

json quantity(double value, const char* unit) {
  return {{"value", number_or_null(value)}, {"unit", unit}};
}

json estimate_json(const EstimateCI& e, const char* unit) {
  return {{"value", number_or_null(e.value)},
          {"standard_error", number_or_null(e.standard_error)},
          {"ci95", {number_or_null(e.lower()), number_or_null(e.upper())}},
          {"samples", e.samples},
          {"method", e.method},
          {"unit", unit}};
}

json volume_json(const VolumeEstimate& v) {
  json j = {{"value", v.value},
            {"unit", "bits/step"},
            {"method", to_string(v.method)},
            {"spread", v.spread}};
  if (v.method == VolumeMethod::sphere_ratio_fit) {
    j["window"] = {v.window_first, v.window_last};
  }
  return j;
}

json drift_json(const DriftEstimate& d) {
  return {{"drift", estimate_json(d.drift, "letters/step")},
          {"mean_length", estimate_json(d.mean_length, "letters")},
          {"growth_exponent", number_or_null(d.growth_exponent)},
          {"zero_drift", d.zero_drift},
          {"steps", d.steps}};
}

json entropy_json(const EntropyRateEstimate& e) {
  return {{"estimate", estimate_json(e.estimate, "bits/step")},
          {"entropies_bits", e.entropies},
          {"cesaro_bits_per_step", e.cesaro},
          {"increments_bits", e.increments},
          {"fitted_bits_per_step", e.fitted},
          {"mean_lengths_letters", e.mean_lengths},
          {"identity_mass", e.identity_mass},
          {"support_sizes", e.support_sizes},
          {"max_exact_n", e.max_exact_n},
          {"budget_limited", e.budget_limited},
          {"last_increment_bits", e.last_increment},
          {"periodic", e.periodic}};
}

json q_json(const std::optional<QRatio>& q) {
  if (!q) {
    return nullptr;
  }
  return {{"value", q->value}, {"sigma", q->sigma}, {"unit", "dimensionless"}};
}

json report_json(const ConstantsReport& r) {
  return {{"presentation", r.presentation},
          {"v", volume_json(r.volume)},
          {"l", drift_json(r.drift)},
          {"h", entropy_json(r.entropy)},
          {"q", q_json(r.q)},
          {"verdict", to_string(r.verdict)},
          {"bound_lv", quantity(r.bound, "bits/step")},
          {"combined_sigma", quantity(r.combined_sigma, "bits/step")},
          {"inequality_holds", r.inequality_holds},
          {"zero_entropy_consistent", r.zero_entropy_consistent}};
}

SymmetricMeasure load_measure(const RunConfig& c, const Presentation& p,
                              json& outputs) {
  if (c.measure == "uniform") {
    outputs["measure"] = {{"source", "uniform"}};
    return SymmetricMeasure::uniform(p);
  }
  auto parsed = parse_measure(c.measure_text, p);
  outputs["measure"] = {{"source", "file"},
                        {"normalization", parsed.normalization},
                        {"letter_weights", parsed.measure.weights()}};
  return std::move(parsed.measure);
}

ReportOptions report_options(const RunConfig& c) {
  ReportOptions o;
  o.entropy.max_n = *c.max_n;
  o.entropy.budget = *c.budget;
  o.drift.steps = *c.steps;
  o.drift.trials = *c.trials;
  o.drift.master_seed = c.seed;
  o.drift.workers = c.workers;
  o.bfs_depth = kBfsDepth;
  o.element_cap = *c.cap;
  return o;
}

void cmd_growth(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  auto& out = r.outputs;
  out["presentation"] = p.spec();
  out["depth_requested"] = *c.max_n;
  EnumerationOptions opts;
  opts.element_cap = *c.cap;
  opts.workers = c.workers;
  SphereCounts counts;
  try {
    counts = enumerate_ball(p, *c.max_n, opts).counts;
  } catch (const BudgetExceeded& e) {
    counts = SphereCounts{p.spec(), e.partial()};
    r.status = "budget_partial";
    r.exit_code = kExitBudgetPartial;
    r.error = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  }
  out["depth_completed"] = counts.depth();
  out["spheres"] = counts.spheres;
  out["balls"] = counts.balls();
  if (counts.spheres.size() >= 3) {
    out["sphere_fit"] = volume_json(volume_from_spheres(counts));
  }
  switch (p.kind()) {
    case PresentationKind::free:
    case PresentationKind::free_abelian:
      out["volume"] = volume_json(volume_closed_form(p));
      break;
    case PresentationKind::locally_free_semigroup: {
      const auto m = moebius_polynomial(p.rank());
      const auto rec = semigroup_spheres_from_moebius(m, *c.max_n);
      out["volume"] = volume_json(volume_from_moebius(m));
      out["moebius"] = {{"coefficients", m.coefficients},
                        {"spheres", rec.spheres}};
      bool agree = true;
      for (std::size_t n = 0; n < counts.spheres.size(); ++n) {
        agree = agree && counts.spheres[n] == rec.spheres[n];
      }
      out["moebius"]["agrees_with_bfs"] = agree;
      break;
    }
    case PresentationKind::locally_free_group:
      if (out.contains("sphere_fit")) {
        out["volume"] = out["sphere_fit"];
      }
      break;
  }
}

void cmd_drift(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  const auto mu = load_measure(c, p, r.outputs);
  DriftOptions o;
  o.steps = *c.steps;
  o.trials = *c.trials;
  o.master_seed = c.seed;
  o.workers = c.workers;
  r.outputs["presentation"] = p.spec();
  r.outputs["trials"] = o.trials;
  r.outputs.update(drift_json(drift(p, mu, o)));
}

void cmd_entropy(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  const auto mu = load_measure(c, p, r.outputs);
  EntropyRateOptions o;
  o.max_n = *c.max_n;
  o.budget = *c.budget;
  const auto e = entropy_rate(p, mu, o);
  r.outputs["presentation"] = p.spec();
  r.outputs.update(entropy_json(e));
  if (e.max_exact_n < o.max_n) {
    r.status = "budget_partial";
    r.exit_code = kExitBudgetPartial;
    r.error = {{"kind", to_string(ErrorKind::budget_exceeded)},
               {"message", "convolution budget reached at n = " +
                               std::to_string(e.max_exact_n)}};
  }
}

void cmd_report(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  const auto mu = load_measure(c, p, r.outputs);
  r.outputs.update(report_json(fundamental_report(p, mu, report_options(c))));
}

void cmd_optimize(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  OptimizeOptions o;
  o.search.restarts = *c.restarts;
  o.search.master_seed = c.seed;
  o.search.workers = c.workers;
  o.full = report_options(c);
  const auto res = optimize_measure(p, o);
  json trace = json::array();
  for (const auto& t : res.trace) {
    trace.push_back({{"restart", t.restart},
                     {"evaluation", t.evaluation},
                     {"pair_weights", t.pair_weights},
                     {"objective", number_or_null(t.objective)},
                     {"best_so_far", number_or_null(t.best_so_far)}});
  }
  auto& out = r.outputs;
  out["presentation"] = p.spec();
  out["best_pair_weights"] = res.best.pair_weights();
  out["best_letter_weights"] = res.best.weights();
  out["tv_from_uniform"] =
      total_variation(res.best, SymmetricMeasure::uniform(p));
  out["q"] = q_json(res.report.q);
  out["inner_objective"] = res.inner_objective;
  out["report"] = report_json(res.report);
  out["trace"] = trace;
}

void cmd_compare(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  std::vector<GeneratingSystemSpec> specs;
  if (c.include_standard) {
    specs.push_back(standard_system(p));
  }
  for (const auto& s : c.systems) {
    specs.push_back(parse_system(s.text, p, s.name));
  }
  if (specs.empty()) {
    throw Error(ErrorKind::invalid_input,
                "compare needs --systems FILE... or --standard");
  }
  CompareOptions o;
  if (c.policy == "optimize") {
    o.policy = MeasurePolicy::optimize;
  } else if (c.policy != "uniform") {
    throw Error(ErrorKind::invalid_input,
                "policy must be 'uniform' or 'optimize'");
  }
  o.radius = *c.max_n;
  o.convolution_depth = *c.max_n;
  o.element_cap = *c.cap;
  o.convolution_budget = *c.budget;
  o.walk_steps = *c.steps;
  o.trials = *c.trials;
  o.master_seed = c.seed;
  o.restarts = *c.restarts;
  o.workers = c.workers;
  const auto cmp = compare_systems(p, specs, o);
  json ranking = json::array();
  for (const auto& s : cmp.ranking) {
    ranking.push_back({{"name", s.name},
                       {"letters", s.letters},
                       {"pair_weights", s.pair_weights},
                       {"v", volume_json(s.volume)},
                       {"l", estimate_json(s.drift, "letters/step")},
                       {"l_monte_carlo",
                        estimate_json(s.drift_monte_carlo, "letters/step")},
                       {"h", estimate_json(s.entropy, "bits/step")},
                       {"q", q_json(s.q)},
                       {"verdict", to_string(s.verdict)},
                       {"radius_steps", s.radius},
                       {"table_size", s.table_size},
                       {"discarded_trials", s.discarded},
                       {"convolution_depth", s.convolution_depth}});
  }
  r.outputs["presentation"] = p.spec();
  r.outputs["ranking"] = ranking;
  r.outputs["note"] = cmp.note;
}

void cmd_lln(const RunConfig& c, const Presentation& p, ResultRecord& r) {
  const auto mu = load_measure(c, p, r.outputs);
  json ref;
  double l_ref = 0.0;
  if (c.l_ref) {
    l_ref = *c.l_ref;
    ref = {{"value", l_ref}, {"unit", "letters/step"}, {"source", "given"}};
  } else {
    DriftOptions o;
    o.master_seed = derive_seed(c.seed, 0x6c6c6eULL);
    o.workers = c.workers;
    const auto d = drift(p, mu, o);
    if (d.zero_drift) {
      throw Error(ErrorKind::undefined_drift,
                  p.spec() + " has zero drift; the band l n is empty");
    }
    l_ref = d.drift.value;
    ref = estimate_json(d.drift, "letters/step");
    ref["source"] = "estimated";
  }
  LlnOptions o;
  o.exact_budget = *c.budget;
  o.trials = *c.trials;
  o.master_seed = c.seed;
  o.workers = c.workers;
  const auto res = lln_check(p, mu, *c.steps, *c.eps, l_ref, o);
  r.outputs["presentation"] = p.spec();
  r.outputs["n_steps"] = *c.steps;
  r.outputs["eps"] = *c.eps;
  r.outputs["l_ref"] = ref;
  r.outputs["fraction"] = res.fraction;
  r.outputs["method"] = res.method;
  r.outputs["samples"] = res.samples;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::usage:
    case ErrorKind::unsupported_operation:
      return kExitInvalidInput;
    case ErrorKind::budget_exceeded:
    case ErrorKind::insufficient_depth:
      return kExitBudgetPartial;
    case ErrorKind::undefined_drift:
      return kExitUndefinedDrift;
    case ErrorKind::optimization_failed:
      return kExitOptimizationFailed;
    case ErrorKind::degenerate_growth:
    case ErrorKind::unreliable_comparison:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

json ResultRecord::to_json() const {
  json j = {{"tool", "walklab"},
            {"version", version},
            {"command", command},
            {"config", config},
            {"config_hash", config_hash},
            {"status", status},
            {"outputs", outputs},
            {"wall_clock_seconds", wall_clock_seconds},
            {"cache_hit", cache_hit},
            {"exit_code", exit_code}};
  if (!error.is_null()) {
    j["error"] = error;
  }
  return j;
}

ResultRecord ResultRecord::from_json(const json& j) {
  ResultRecord r;
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.config_hash = j.at("config_hash").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.outputs = j.at("outputs");
  if (j.contains("error")) {
    r.error = j.at("error");
  }
  r.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
  r.exit_code = j.value("exit_code", 0);
  return r;
}

ResultRecord run(const RunConfig& config) {
  RunConfig c = config;
  c.resolve_defaults();
  ResultRecord r;
  r.command = to_string(c.command);
  r.config = c.canonical();
  r.config_hash = c.hash();
  r.version = kVersion;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto p = Presentation::parse(c.group);
    switch (c.command) {
      case Command::growth:
        cmd_growth(c, p, r);
        break;
      case Command::drift:
        cmd_drift(c, p, r);
        break;
      case Command::entropy:
        cmd_entropy(c, p, r);
        break;
      case Command::report:
        cmd_report(c, p, r);
        break;
      case Command::optimize:
        cmd_optimize(c, p, r);
        break;
      case Command::compare:
        cmd_compare(c, p, r);
        break;
      case Command::lln:
        cmd_lln(c, p, r);
        break;
    }
  } catch (const BudgetExceeded& e) {
    r.status = "budget_partial";
    r.exit_code = kExitBudgetPartial;
    r.error = {{"kind", to_string(e.kind())},
               {"message", e.what()},
               {"completed", e.completed()},
               {"partial", e.partial()}};
  } catch (const Error& e) {
    r.status = "error";
    r.exit_code = exit_code_for(e.kind());
    r.error = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  }
  r.wall_clock_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return r;
}

ResultRecord run_cached(const RunConfig& config) {
  if (config.no_cache) {
    return run(config);
  }
  const ResultCache cache(ResultCache::default_dir());
  const auto hash = config.hash();
  if (auto stored = cache.load(hash, kVersion)) {
    auto r = ResultRecord::from_json(*stored);
    r.cache_hit = true;
    return r;
  }
  auto r = run(config);
  if (r.status != "error") {
    cache.store(hash, r.to_json());
  }
  return r;
}

bool write_csv(const ResultRecord& record, const std::string& path) {
  const auto& out = record.outputs;
  const bool tabular =
      (record.command == "entropy" && out.contains("entropies_bits")) ||
      (record.command == "growth" && out.contains("spheres")) ||
      (record.command == "optimize" && out.contains("trace")) ||
      (record.command == "compare" && out.contains("ranking"));
  if (!tabular) {
    return false;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) {
    throw Error(ErrorKind::invalid_input, "cannot write " + path);
  }
  f.precision(17);
  auto cell = [](const json& v) -> std::string {
    return v.is_null() ? std::string() : v.dump();
  };
  if (record.command == "entropy" && out.contains("entropies_bits")) {
    f << "n,entropy_bits,cesaro_bits_per_step,increment_bits,"
         "fitted_bits_per_step,mean_length_letters,identity_mass,support\n";
    const auto& h = out["entropies_bits"];
    for (std::size_t i = 0; i < h.size(); ++i) {
      f << i + 1 << ',' << cell(h[i]) << ','
        << cell(out["cesaro_bits_per_step"][i]) << ','
        << cell(out["increments_bits"][i]) << ','
        << (i >= 2 ? cell(out["fitted_bits_per_step"][i - 2]) : "") << ','
        << cell(out["mean_lengths_letters"][i]) << ','
        << cell(out["identity_mass"][i]) << ',' << cell(out["support_sizes"][i])
        << '\n';
    }
    return true;
  }
  if (record.command == "growth" && out.contains("spheres")) {
    f << "n,sphere,ball\n";
    for (std::size_t i = 0; i < out["spheres"].size(); ++i) {
      f << i << ',' << cell(out["spheres"][i]) << ',' << cell(out["balls"][i])
        << '\n';
    }
    return true;
  }
  if (record.command == "optimize" && out.contains("trace")) {
    f << "restart,evaluation,objective,best_so_far,pair_weights\n";
    for (const auto& t : out["trace"]) {
      std::string weights;
      for (const auto& w : t["pair_weights"]) {
        weights += (weights.empty() ? "" : ";") + w.dump();
      }
      f << cell(t["restart"]) << ',' << cell(t["evaluation"]) << ','
        << cell(t["objective"]) << ',' << cell(t["best_so_far"]) << ','
        << weights << '\n';
    }
    return true;
  }
  if (record.command == "compare" && out.contains("ranking")) {
    f << "rank,name,q,q_sigma,v_bits_per_step,l_letters_per_step,"
         "h_bits_per_step,verdict\n";
    std::size_t rank = 1;
    for (const auto& s : out["ranking"]) {
      const bool has_q = !s["q"].is_null();
      f << rank++ << ',' << s["name"].dump() << ','
        << (has_q ? cell(s["q"]["value"]) : "") << ','
        << (has_q ? cell(s["q"]["sigma"]) : "") << ',' << cell(s["v"]["value"])
        << ',' << cell(s["l"]["value"]) << ',' << cell(s["h"]["value"]) << ','
        << s["verdict"].get<std::string>() << '\n';
    }
    return true;
  }
  return false;
}

}  // namespace walklab::cli
