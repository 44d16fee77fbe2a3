#include "walklab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "walklab/error.hpp"
#include "walklab/parallel.hpp"

namespace walklab {

namespace {

// Samples i.i.d. letters from mu and keeps the running product canonical.
class Walker {
 public:
  Walker(const Presentation& p, const SymmetricMeasure& mu, std::uint64_t seed)
      : p_(p), rng_(seed) {
    if (mu.tag() != p.tag()) {
      throw Error(ErrorKind::usage, "measure belongs to " + mu.presentation() +
                                        ", not " + p.spec());
    }
    std::vector<double> weights;
    for (const auto& [g, w] : mu.support()) {
      codes_.push_back(g.code());
      weights.push_back(w);
    }
    pick_ = std::discrete_distribution<std::size_t>(weights.begin(),
                                                    weights.end());
  }

  std::size_t step() {
    p_.append(position_, codes_[pick_(rng_)]);
    return position_.size();
  }

 private:
  const Presentation& p_;
  std::mt19937_64 rng_;
  std::vector<std::uint8_t> codes_;
  std::discrete_distribution<std::size_t> pick_;
  ElementKey position_;
};

EstimateCI mean_and_error(const std::vector<double>& xs, std::string method) {
  EstimateCI out;
  out.samples = xs.size();
  out.method = std::move(method);
  if (xs.empty()) {
    return out;
  }
  long double sum = 0.0L;
  for (const double x : xs) {
    sum += x;
  }
  const long double mean = sum / static_cast<long double>(xs.size());
  long double ss = 0.0L;
  for (const double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  out.value = static_cast<double>(mean);
  if (xs.size() > 1) {
    const long double var = ss / static_cast<long double>(xs.size() - 1);
    out.standard_error =
        static_cast<double>(std::sqrt(var / static_cast<long double>(xs.size())));
  }
  return out;
}

}  // namespace

double log_corrected_increment(const std::vector<double>& entropies,
                               std::size_t n) {
  if (n < 3 || n > entropies.size()) {
    throw Error(ErrorKind::insufficient_depth,
                "log-corrected increment needs three consecutive n >= 1");
  }
  const double h2 = entropies[n - 3];
  const double h1 = entropies[n - 2];
  const double h0 = entropies[n - 1];
  const auto m = static_cast<double>(n);
  const double d_prev = std::log2((m - 1.0) / (m - 2.0));
  const double d_last = std::log2(m / (m - 1.0));
  const double inc_prev = h1 - h2;
  const double inc_last = h0 - h1;
  const double a = (inc_last - inc_prev) / (d_last - d_prev);
  return inc_last - a * d_last;
}

EstimateCI entropy_rate_from_sequence(const std::vector<double>& entropies) {
  const std::size_t n_max = entropies.size();
  if (n_max < 2) {
    throw Error(ErrorKind::insufficient_depth,
                "entropy rate needs at least two exact steps");
  }
  double envelope = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= n_max; ++n) {
    envelope = std::min(envelope, entropies[n - 1] / static_cast<double>(n));
  }
  EstimateCI est;
  est.samples = n_max;
  std::vector<double> tail;
  if (n_max < 3) {
    est.method = "exact_increment_spread";
    est.value = entropies[1] - entropies[0];
    tail = {entropies[0], est.value};
  } else {
    est.method = "log_corrected_increment_spread";
    for (std::size_t n = std::max<std::size_t>(3, n_max - 2); n <= n_max; ++n) {
      tail.push_back(log_corrected_increment(entropies, n));
    }
    est.value = tail.back();
  }
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  est.standard_error = *hi - *lo;
  est.value = std::clamp(est.value, 0.0, envelope);
  return est;
}

EntropyRateEstimate entropy_rate(const Presentation& p,
                                 const SymmetricMeasure& mu,
                                 const EntropyRateOptions& options) {
  if (options.max_n < 2) {
    throw Error(ErrorKind::invalid_input, "entropy rate needs max_n >= 2");
  }
  EntropyRateEstimate out;
  Convolver conv(p, mu, options.budget);
  const std::string identity;
  for (;;) {
    const auto& d = conv.current();
    const double h = entropy(d);
    const int n = d.steps();
    out.entropies.push_back(h);
    out.cesaro.push_back(h / n);
    out.increments.push_back(n == 1 ? h : h - out.entropies[n - 2]);
    out.mean_lengths.push_back(d.mean_length());
    const auto e = d.table().find(identity);
    out.identity_mass.push_back(e == d.table().end() ? 0.0 : e->second);
    out.support_sizes.push_back(d.size());
    if (n >= 3) {
      out.fitted.push_back(log_corrected_increment(out.entropies, n));
    }
    if (n >= options.max_n) {
      break;
    }
    try {
      conv.step();
    } catch (const BudgetExceeded&) {
      out.budget_limited = true;
      break;
    }
  }
  out.max_exact_n = static_cast<int>(out.entropies.size());
  if (out.max_exact_n < 2) {
    throw Error(ErrorKind::insufficient_depth,
                "budget allows only " + std::to_string(out.max_exact_n) +
                    " exact convolution step(s)");
  }
  out.last_increment = out.increments.back();

  bool odd_zero = true;
  for (std::size_t i = 0; i < out.identity_mass.size(); i += 2) {
    odd_zero = odd_zero && out.identity_mass[i] == 0.0;
  }
  out.periodic = odd_zero;
  out.estimate = entropy_rate_from_sequence(out.entropies);
  return out;
}

WalkTrajectory sample_walk(const Presentation& p, const SymmetricMeasure& mu,
                           int steps, std::uint64_t seed) {
  if (steps < 1) {
    throw Error(ErrorKind::invalid_input, "walk needs at least one step");
  }
  WalkTrajectory out;
  out.seed = seed;
  out.lengths.reserve(static_cast<std::size_t>(steps));
  Walker walker(p, mu, seed);
  for (int t = 0; t < steps; ++t) {
    out.lengths.push_back(static_cast<std::uint32_t>(walker.step()));
  }
  return out;
}

DriftEstimate drift(const Presentation& p, const SymmetricMeasure& mu,
                    const DriftOptions& options) {
  if (options.trials < 2) {
    throw Error(ErrorKind::invalid_input, "drift needs at least 2 trials");
  }
  if (options.steps < 1) {
    throw Error(ErrorKind::invalid_input, "drift needs at least one step");
  }
  const auto trials = static_cast<std::size_t>(options.trials);
  const int quarter = std::max(1, options.steps / 4);
  std::vector<double> final_lengths(trials);
  std::vector<double> quarter_lengths(trials);
  parallel_for(trials, options.workers, [&](std::size_t i) {
    Walker walker(p, mu, derive_seed(options.master_seed, i));
    std::size_t len = 0;
    for (int t = 1; t <= options.steps; ++t) {
      len = walker.step();
      if (t == quarter) {
        quarter_lengths[i] = static_cast<double>(len);
      }
    }
    final_lengths[i] = static_cast<double>(len);
  });

  DriftEstimate out;
  out.steps = options.steps;
  out.mean_length = mean_and_error(final_lengths, "monte_carlo_mean");
  std::vector<double> ratios(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    ratios[i] = final_lengths[i] / options.steps;
  }
  out.drift = mean_and_error(ratios, "monte_carlo_mean");

  long double q_sum = 0.0L;
  for (const double x : quarter_lengths) {
    q_sum += x;
  }
  const double q_mean = static_cast<double>(q_sum / trials);
  if (q_mean > 0.0 && out.mean_length.value > 0.0 && quarter < options.steps) {
    out.growth_exponent = std::log(out.mean_length.value / q_mean) /
                          std::log(static_cast<double>(options.steps) / quarter);
  }
  out.zero_drift = out.drift.lower() <= 0.0 ||
                   (quarter < options.steps && out.growth_exponent < 0.75);
  return out;
}

LlnResult lln_check(const Presentation& p, const SymmetricMeasure& mu, int n,
                    double eps, double l_ref, const LlnOptions& options) {
  if (!(l_ref > 0.0)) {
    throw Error(ErrorKind::undefined_drift,
                "law-of-large-numbers check needs a positive reference drift");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::invalid_input, "eps must be positive");
  }
  if (n < 1) {
    throw Error(ErrorKind::invalid_input, "n must be at least 1");
  }
  const double target = l_ref * n;
  auto in_band = [&](std::size_t len) {
    return std::abs(static_cast<double>(len) / target - 1.0) <= eps;
  };

  LlnResult out;
  try {
    Convolver conv(p, mu, options.exact_budget);
    while (conv.steps() < n) {
      conv.step();
    }
    long double mass = 0.0L;
    for (const auto& [g, w] : conv.current().table()) {
      if (in_band(g.size())) {
        mass += w;
      }
    }
    out.fraction = static_cast<double>(mass);
    out.method = "exact_convolution";
    out.samples = conv.current().size();
    return out;
  } catch (const BudgetExceeded&) {
  }

  if (options.trials < 1) {
    throw Error(ErrorKind::invalid_input, "Monte Carlo needs trials >= 1");
  }
  const auto trials = static_cast<std::size_t>(options.trials);
  std::vector<unsigned char> hits(trials, 0);
  parallel_for(trials, options.workers, [&](std::size_t i) {
    Walker walker(p, mu, derive_seed(options.master_seed, i));
    std::size_t len = 0;
    for (int t = 0; t < n; ++t) {
      len = walker.step();
    }
    hits[i] = in_band(len) ? 1 : 0;
  });
  std::size_t count = 0;
  for (const auto h : hits) {
    count += h;
  }
  out.fraction = static_cast<double>(count) / static_cast<double>(trials);
  out.method = "monte_carlo";
  out.samples = trials;
  return out;
}

}  // namespace walklab
