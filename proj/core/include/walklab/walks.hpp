#ifndef WALKLAB_WALKS_HPP_
#define WALKLAB_WALKS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "walklab/distribution.hpp"
#include "walklab/measure.hpp"
#include "walklab/presentation.hpp"

namespace walklab {

// A numerical estimate with its uncertainty. For Monte Carlo estimates
// `standard_error` is statistical; for exact sequences it is a truncation
// spread (see `method`).
struct EstimateCI {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::string method;

  double half_width() const noexcept { return 1.96 * standard_error; }
  double lower() const noexcept { return value - half_width(); }
  double upper() const noexcept { return value + half_width(); }
};

struct EntropyRateOptions {
  int max_n = 10;
  std::size_t budget = kDefaultConvolutionBudget;
};

struct EntropyRateEstimate {
  // Point estimate of h in bits per step.
  EstimateCI estimate;
  // Index i holds the value at n = i + 1.
  std::vector<double> entropies;      // H(mu^{*n})
  std::vector<double> cesaro;         // H(mu^{*n}) / n
  std::vector<double> increments;     // H(mu^{*n}) - H(mu^{*(n-1)}), H_0 = 0
  std::vector<double> fitted;         // log-corrected increment at each n >= 3
  std::vector<double> mean_lengths;   // E l(X_n)
  std::vector<double> identity_mass;  // mu^{*n}(e)
  std::vector<std::size_t> support_sizes;
  int max_exact_n = 0;
  bool budget_limited = false;
  // Last raw increment, kept for comparison with the point estimate.
  double last_increment = 0.0;
  // Walks whose mass at e vanishes on odd n (bipartite Cayley graphs).
  bool periodic = false;
};

// Log-corrected increment at n: the h of the exact solution of
// H_m = h m + a log2(m) + b through m = n-2, n-1, n.
double log_corrected_increment(const std::vector<double>& entropies,
                               std::size_t n);

// Point estimate from an exact sequence H(mu^{*1}), ..., H(mu^{*N}): the
// log-corrected increment at N (the raw increment when N = 2), capped above
// by min_n H(mu^{*n})/n and below by 0, with the spread of the last three
// corrected increments as its uncertainty. Needs N >= 2.
EstimateCI entropy_rate_from_sequence(const std::vector<double>& entropies);

// Exact H(mu^{*n}) for n <= max_n (or until the budget stops the
// convolution). The point estimate is the log-corrected increment at the
// largest n, capped above by min_n H(mu^{*n})/n and below by 0; its
// uncertainty is the spread of the last three corrected increments.
// Throws Error(insufficient_depth) when fewer than 2 steps fit the budget.
EntropyRateEstimate entropy_rate(const Presentation& p,
                                 const SymmetricMeasure& mu,
                                 const EntropyRateOptions& options = {});

struct WalkTrajectory {
  std::uint64_t seed = 0;
  // lengths[t] = l(X_{t+1}).
  std::vector<std::uint32_t> lengths;
};

WalkTrajectory sample_walk(const Presentation& p, const SymmetricMeasure& mu,
                           int steps, std::uint64_t seed);

struct DriftOptions {
  int steps = 10'000;
  int trials = 200;
  std::uint64_t master_seed = 1;
  int workers = 1;
};

struct DriftEstimate {
  // Mean of l(X_n)/n across trials.
  EstimateCI drift;
  // Mean of l(X_n) itself.
  EstimateCI mean_length;
  // log(E l(X_n) / E l(X_{n/4})) / log 4: ~1 for linear escape, ~1/2 for
  // diffusive walks.
  double growth_exponent = 0.0;
  // Set when the growth exponent is below 3/4 or the CI reaches 0.
  bool zero_drift = false;
  int steps = 0;
};

DriftEstimate drift(const Presentation& p, const SymmetricMeasure& mu,
                    const DriftOptions& options = {});

struct LlnOptions {
  std::size_t exact_budget = 2'000'000;
  int trials = 10'000;
  std::uint64_t master_seed = 1;
  int workers = 1;
};

struct LlnResult {
  double fraction = 0.0;
  std::string method;  // "exact_convolution" or "monte_carlo"
  std::size_t samples = 0;
};

// mu^{*n}-mass of {g : |l(g)/(l_ref n) - 1| <= eps}. Exact when the
// convolution fits exact_budget, Monte Carlo otherwise. Throws
// Error(undefined_drift) when l_ref <= 0.
LlnResult lln_check(const Presentation& p, const SymmetricMeasure& mu, int n,
                    double eps, double l_ref, const LlnOptions& options = {});

}  // namespace walklab

#endif  // WALKLAB_WALKS_HPP_
