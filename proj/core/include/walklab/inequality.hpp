#ifndef WALKLAB_INEQUALITY_HPP_
#define WALKLAB_INEQUALITY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "walklab/enumeration.hpp"
#include "walklab/measure.hpp"
#include "walklab/walks.hpp"

namespace walklab {

enum class Verdict {
  consistent_with_equality,
  strictly_below,
  // Neither band applies: |1 - q| is too large for equality but q + 2 sigma
  // does not clear 0.95.
  inconclusive,
  undefined_drift,
};

const char* to_string(Verdict v) noexcept;

// Bands for the extremality verdict.
inline constexpr double kEqualityBand = 0.05;
inline constexpr double kStrictCeiling = 0.95;
// Entropy (bits/step) below which a zero-drift walk counts as having h = 0.
inline constexpr double kZeroEntropyTolerance = 0.05;

// q = h / (l v) with first-order uncertainty from h and l.
struct QRatio {
  double value = 0.0;
  double sigma = 0.0;
};

// Throws Error(undefined_drift) when l's 95% interval reaches 0 and
// Error(degenerate_growth) when v <= 0. Throws std::logic_error when q
// exceeds 1 by more than max(0.05, 3 sigma), which would contradict h <= l v.
QRatio q_ratio(const EstimateCI& h, const EstimateCI& l,
               const VolumeEstimate& v);

Verdict classify(const QRatio& q);

struct ReportOptions {
  EntropyRateOptions entropy;
  DriftOptions drift;
  // BFS depth and cap for the sphere-ratio volume fit (lfgroup).
  int bfs_depth = 7;
  std::size_t element_cap = kDefaultElementCap;
};

// v by the best available route: closed form (free, abelian), Moebius root
// (lfsemigroup), BFS sphere-ratio fit otherwise.
VolumeEstimate estimate_volume(const Presentation& p, int bfs_depth = 7,
                               std::size_t element_cap = kDefaultElementCap);

struct ConstantsReport {
  std::string presentation;
  VolumeEstimate volume;
  DriftEstimate drift;
  EntropyRateEstimate entropy;
  std::optional<QRatio> q;
  Verdict verdict = Verdict::undefined_drift;
  // l v and sqrt(sigma_h^2 + (v sigma_l)^2 + (l sigma_v)^2).
  double bound = 0.0;
  double combined_sigma = 0.0;
  // h <= l v + 3 sigma.
  bool inequality_holds = true;
  // Zero-drift path only: h <= kZeroEntropyTolerance.
  bool zero_entropy_consistent = true;

  const EstimateCI& h() const noexcept { return entropy.estimate; }
  const EstimateCI& l() const noexcept { return drift.drift; }
};

ConstantsReport fundamental_report(const Presentation& p,
                                   const SymmetricMeasure& mu,
                                   const ReportOptions& options = {});

// One objective evaluation during a measure search.
struct TraceEntry {
  int restart = 0;
  int evaluation = 0;
  std::vector<double> pair_weights;
  // NaN when the objective was undefined (zero drift).
  double objective = 0.0;
  // Best objective over all earlier entries (restart order), non-decreasing.
  double best_so_far = 0.0;
};

struct SearchOptions {
  int restarts = 5;
  std::uint64_t master_seed = 1;
  double w_min = 1e-4;
  int max_evaluations = 40;
  int workers = 1;
};

struct SearchResult {
  std::vector<double> best_pair_weights;
  double best_objective = 0.0;
  std::vector<TraceEntry> trace;
};

// Maximises objective(pair weights) over {w_i >= w_min, sum w_i = 1} by
// Nelder-Mead on softmax logits. Restart 0 starts from uniform weights, the
// others from seeded random logits. The objective returns nullopt where it is
// undefined; throws Error(optimization_failed) when every evaluation was.
SearchResult search_pair_weights(
    std::size_t pairs,
    const std::function<std::optional<double>(std::span<const double>)>&
        objective,
    const SearchOptions& options);

struct OptimizeOptions {
  SearchOptions search;
  // Reduced budgets for the inner objective.
  int inner_depth = 8;
  std::size_t inner_budget = 2'000'000;
  // Full budgets for re-certifying the winner.
  ReportOptions full;
};

struct OptimizationResult {
  SymmetricMeasure best;
  // Full-budget report of `best`; its q is the q(S) estimate.
  ConstantsReport report;
  double q = 0.0;
  double inner_objective = 0.0;
  std::vector<TraceEntry> trace;
};

// Searches symmetric measures on p's standard system for maximal
// normalised entropy. Inner objective: q from the log-corrected entropy
// increment and the exact mean-length increment at inner_depth.
OptimizationResult optimize_measure(const Presentation& p,
                                    const OptimizeOptions& options = {});

}  // namespace walklab

#endif  // WALKLAB_INEQUALITY_HPP_
