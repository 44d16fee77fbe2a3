#include <cmath>
#include <limits>
#include <random>

#include "walklab/error.hpp"
#include "walklab/inequality.hpp"
#include "walklab/nelder_mead.hpp"
#include "walklab/parallel.hpp"

namespace walklab {

namespace {

constexpr double kUndefinedPenalty = 1e9;

// Logits for pairs 0..m-2; the last pair's logit is pinned at 0.
std::vector<double> weights_from_logits(const std::vector<double>& x,
                                        std::size_t pairs, double w_min) {
  std::vector<double> w(pairs);
  double top = 0.0;
  for (const double v : x) {
    top = std::max(top, v);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    w[i] = std::exp((i + 1 < pairs ? x[i] : 0.0) - top);
    sum += w[i];
  }
  const double free_mass = 1.0 - static_cast<double>(pairs) * w_min;
  for (auto& v : w) {
    v = w_min + free_mass * v / sum;
  }
  return w;
}

}  // namespace

SearchResult search_pair_weights(
    std::size_t pairs,
    const std::function<std::optional<double>(std::span<const double>)>&
        objective,
    const SearchOptions& options) {
  if (pairs == 0) {
    throw Error(ErrorKind::invalid_input, "no generator pairs to weight");
  }
  if (options.restarts < 1) {
    throw Error(ErrorKind::invalid_input, "need at least one restart");
  }
  if (!(options.w_min >= 0.0) ||
      options.w_min * static_cast<double>(pairs) >= 1.0) {
    throw Error(ErrorKind::invalid_input, "w_min leaves no free mass");
  }

  const auto restarts = static_cast<std::size_t>(options.restarts);
  std::vector<std::vector<TraceEntry>> local(restarts);
  parallel_for(restarts, options.workers, [&](std::size_t r) {
    std::vector<double> start(pairs - 1, 0.0);
    if (r > 0) {
      std::mt19937_64 rng(derive_seed(options.master_seed, r));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& x : start) {
        x = normal(rng);
      }
    }
    auto f = [&](const std::vector<double>& x) {
      TraceEntry e;
      e.restart = static_cast<int>(r);
      e.evaluation = static_cast<int>(local[r].size());
      e.pair_weights = weights_from_logits(x, pairs, options.w_min);
      const auto value = objective(e.pair_weights);
      e.objective = value ? *value : std::numeric_limits<double>::quiet_NaN();
      local[r].push_back(e);
      return value ? -*value : kUndefinedPenalty;
    };
    NelderMeadOptions nm;
    nm.max_evaluations = options.max_evaluations;
    nelder_mead_minimize(f, start, nm);
  });

  SearchResult out;
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (auto& entries : local) {
    for (auto& e : entries) {
      if (!std::isnan(e.objective) && e.objective > best) {
        best = e.objective;
        out.best_pair_weights = e.pair_weights;
        any = true;
      }
      e.best_so_far = any ? best : std::numeric_limits<double>::quiet_NaN();
      out.trace.push_back(std::move(e));
    }
  }
  if (!any) {
    throw Error(ErrorKind::optimization_failed,
                "objective undefined at every evaluated measure");
  }
  out.best_objective = best;
  return out;
}

OptimizationResult optimize_measure(const Presentation& p,
                                    const OptimizeOptions& options) {
  // The objective is h / (l v); it is undefined for zero-drift walks.
  {
    DriftOptions probe = options.full.drift;
    probe.steps = std::min(probe.steps, 4000);
    probe.trials = std::min(probe.trials, 100);
    if (drift(p, SymmetricMeasure::uniform(p), probe).zero_drift) {
      throw Error(ErrorKind::optimization_failed,
                  "uniform walk on " + p.spec() +
                      " has zero drift; normalised entropy is undefined");
    }
  }
  const VolumeEstimate v = estimate_volume(p, options.full.bfs_depth,
                                           options.full.element_cap);
  if (!(v.value > 0.0)) {
    throw Error(ErrorKind::optimization_failed,
                "logarithmic volume of " + p.spec() + " is 0");
  }

  auto objective = [&](std::span<const double> w) -> std::optional<double> {
    const auto mu = SymmetricMeasure::from_pair_weights(p, w);
    EntropyRateOptions inner;
    inner.max_n = options.inner_depth;
    inner.budget = options.inner_budget;
    const auto rate = entropy_rate(p, mu, inner);
    const auto& lengths = rate.mean_lengths;
    if (lengths.size() < 3) {
      return std::nullopt;
    }
    // Two-step difference sidesteps the parity wobble of bipartite walks.
    const double l =
        0.5 * (lengths.back() - lengths[lengths.size() - 3]);
    if (!(l > 0.0)) {
      return std::nullopt;
    }
    return rate.estimate.value / (l * v.value);
  };

  auto search = search_pair_weights(static_cast<std::size_t>(p.rank()),
                                    objective, options.search);
  auto best = SymmetricMeasure::from_pair_weights(p, search.best_pair_weights);
  auto report = fundamental_report(p, best, options.full);
  if (!report.q) {
    throw Error(ErrorKind::optimization_failed,
                "best measure has undefined drift at full budget");
  }
  const double q = report.q->value;
  return OptimizationResult{std::move(best), std::move(report), q,
                            search.best_objective, std::move(search.trace)};
}

}  // namespace walklab
