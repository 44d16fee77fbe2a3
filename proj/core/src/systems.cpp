#include "walklab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>

#include "walklab/error.hpp"
#include "walklab/parallel.hpp"

namespace walklab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// S' as a sorted list of element keys grouped into inverse pairs.
struct LetterSet {
  std::vector<ElementKey> keys;
  std::vector<std::size_t> pair_of;
  std::size_t pairs = 0;
  std::string canonical;
};

LetterSet build_letters(const Presentation& p, const GeneratingSystemSpec& spec) {
  std::vector<ElementKey> keys;
  for (const auto& w : spec.words) {
    if (w.tag() != p.tag()) {
      throw Error(ErrorKind::usage, "system word belongs to another presentation");
    }
    if (w.is_identity()) {
      throw Error(ErrorKind::invalid_input,
                  "system '" + spec.name + "' contains the identity");
    }
    keys.push_back(w.key());
    if (p.symmetric()) {
      keys.push_back(p.invert(w).key());
    }
  }
  if (keys.empty()) {
    throw Error(ErrorKind::invalid_input,
                "system '" + spec.name + "' has no words");
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  LetterSet out;
  out.keys = keys;
  out.pair_of.assign(keys.size(), keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (out.pair_of[i] != keys.size()) {
      continue;
    }
    out.pair_of[i] = out.pairs;
    if (p.symmetric()) {
      const auto inv = p.invert(p.adopt(keys[i])).key();
      const auto j = static_cast<std::size_t>(
          std::lower_bound(keys.begin(), keys.end(), inv) - keys.begin());
      out.pair_of[j] = out.pairs;
    }
    ++out.pairs;
  }
  for (const auto& k : keys) {
    out.canonical += std::to_string(k.size());
    out.canonical += ':';
    out.canonical += k;
  }
  return out;
}

// S'-word length of base elements up to a completed radius.
struct DistanceTable {
  std::unordered_map<ElementKey, std::uint32_t> dist;
  SphereCounts counts;
  int radius = 0;

  std::optional<std::uint32_t> find(const ElementKey& k) const {
    const auto it = dist.find(k);
    if (it == dist.end()) {
      return std::nullopt;
    }
    return it->second;
  }
};

DistanceTable build_table(const Presentation& p, const LetterSet& letters,
                          int radius, std::size_t cap) {
  DistanceTable t;
  t.counts.presentation = p.spec();
  t.dist.emplace(ElementKey{}, 0);
  t.counts.spheres.push_back(1);
  std::vector<ElementKey> frontier{ElementKey{}};
  for (int n = 1; n <= radius; ++n) {
    std::vector<ElementKey> next;
    bool full = false;
    for (const auto& g : frontier) {
      for (const auto& s : letters.keys) {
        ElementKey h = g;
        p.append(h, s);
        if (t.dist.count(h) != 0) {
          continue;
        }
        if (t.dist.size() >= cap) {
          full = true;
          break;
        }
        t.dist.emplace(h, static_cast<std::uint32_t>(n));
        next.push_back(std::move(h));
      }
      if (full) {
        break;
      }
    }
    if (full) {
      for (const auto& h : next) {
        t.dist.erase(h);
      }
      break;
    }
    t.counts.spheres.push_back(next.size());
    t.radius = n;
    frontier = std::move(next);
  }
  return t;
}

struct ExactWalk {
  std::vector<double> entropies;
  std::vector<double> mean_lengths;
};

// Exact convolution powers of a measure on S' for n = 1..depth, stopping
// early when the next step is projected to exceed the budget.
ExactWalk exact_walk(const Presentation& p, const LetterSet& letters,
                     const std::vector<double>& letter_weights,
                     const DistanceTable& table, int depth,
                     std::size_t budget) {
  ExactWalk out;
  std::unordered_map<ElementKey, double> current{{ElementKey{}, 1.0}};
  std::size_t previous_size = 1;
  for (int n = 1; n <= depth; ++n) {
    if (n > 1) {
      const double growth = static_cast<double>(current.size()) /
                            static_cast<double>(previous_size);
      if (static_cast<double>(current.size()) * growth >
          static_cast<double>(budget)) {
        break;
      }
    }
    std::unordered_map<ElementKey, double> next;
    next.reserve(current.size() * 2);
    for (const auto& [g, pg] : current) {
      for (std::size_t i = 0; i < letters.keys.size(); ++i) {
        if (letter_weights[i] <= 0.0) {
          continue;
        }
        ElementKey h = g;
        p.append(h, letters.keys[i]);
        next[std::move(h)] += pg * letter_weights[i];
      }
    }
    if (next.size() > budget) {
      break;
    }
    previous_size = current.size();
    current = std::move(next);

    long double ent = 0.0L;
    long double mean = 0.0L;
    long double mass = 0.0L;
    for (const auto& [g, w] : current) {
      if (w > 0.0) {
        ent -= w * std::log2(static_cast<long double>(w));
      }
      const auto d = table.find(g);
      if (!d) {
        throw std::logic_error("convolution left the distance table");
      }
      mean += w * *d;
      mass += w;
    }
    if (std::abs(static_cast<double>(mass) - 1.0) > 1e-9) {
      throw std::logic_error("convolution lost mass");
    }
    out.entropies.push_back(static_cast<double>(ent));
    out.mean_lengths.push_back(static_cast<double>(mean));
  }
  return out;
}

std::vector<double> letter_weights_from_pairs(const LetterSet& letters,
                                              std::span<const double> pairs) {
  std::vector<std::size_t> members(letters.pairs, 0);
  for (const auto j : letters.pair_of) {
    ++members[j];
  }
  std::vector<double> w(letters.keys.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto j = letters.pair_of[i];
    w[i] = pairs[j] / static_cast<double>(members[j]);
  }
  return w;
}

struct McDrift {
  EstimateCI drift;
  std::size_t discarded = 0;
};

// Increment estimator (L_n - L_m)/(n - m) with m ~ n/2 of the same parity.
McDrift monte_carlo_drift(const Presentation& p, const LetterSet& letters,
                          const std::vector<double>& letter_weights,
                          const DistanceTable& table, int steps, int trials,
                          std::uint64_t seed, int workers) {
  int half = steps / 2;
  if ((steps - half) % 2 != 0 && half > 0) {
    --half;
  }
  const auto count = static_cast<std::size_t>(trials);
  std::vector<double> increments(count, 0.0);
  std::vector<unsigned char> kept(count, 0);
  parallel_for(count, workers, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::discrete_distribution<std::size_t> pick(letter_weights.begin(),
                                                 letter_weights.end());
    ElementKey x;
    std::uint32_t at_half = 0;
    for (int t = 1; t <= steps; ++t) {
      p.append(x, letters.keys[pick(rng)]);
      if (t == half || t == steps) {
        const auto d = table.find(x);
        if (!d) {
          return;
        }
        if (t == half) {
          at_half = *d;
        } else {
          increments[i] = (static_cast<double>(*d) - at_half) / (steps - half);
          kept[i] = 1;
        }
      }
    }
  });
  McDrift out;
  std::vector<double> xs;
  for (std::size_t i = 0; i < count; ++i) {
    if (kept[i] != 0) {
      xs.push_back(increments[i]);
    } else {
      ++out.discarded;
    }
  }
  out.drift.method = "monte_carlo_increment";
  out.drift.samples = xs.size();
  if (xs.empty()) {
    return out;
  }
  long double sum = 0.0L;
  for (const double x : xs) {
    sum += x;
  }
  const long double mean = sum / xs.size();
  long double ss = 0.0L;
  for (const double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  out.drift.value = static_cast<double>(mean);
  if (xs.size() > 1) {
    out.drift.standard_error =
        static_cast<double>(std::sqrt(ss / (xs.size() - 1) / xs.size()));
  }
  return out;
}

// Aitken extrapolation of the two-step increments d_m = (E l_m - E l_{m-2})/2
// at m = n-4, n-2, n. Returns nullopt unless the differences contract.
std::optional<double> aitken_increment(const std::vector<double>& mean_lengths,
                                       std::size_t n) {
  if (n < 7 || n > mean_lengths.size()) {
    return std::nullopt;
  }
  auto inc = [&](std::size_t m) {
    return 0.5 * (mean_lengths[m - 1] - mean_lengths[m - 3]);
  };
  const double x0 = inc(n - 4);
  const double x1 = inc(n - 2);
  const double x2 = inc(n);
  const double d1 = x1 - x0;
  const double d2 = x2 - x1;
  const double ratio = d2 / d1;
  if (!(std::abs(d1) > 1e-12) || !(ratio > 0.0 && ratio < 0.9)) {
    return std::nullopt;
  }
  return x2 - d2 * d2 / (d2 - d1);
}

// Drift from exact mean lengths: the Aitken-extrapolated two-step increment
// when the increments contract geometrically, the last two-step increment
// otherwise. The uncertainty is the change since n - 2.
EstimateCI exact_increment(const std::vector<double>& mean_lengths) {
  EstimateCI e;
  const std::size_t n = mean_lengths.size();
  if (n < 4) {
    return e;
  }
  auto inc = [&](std::size_t m) {
    return 0.5 * (mean_lengths[m - 1] - mean_lengths[m - 3]);
  };
  e.samples = n;
  const auto now = aitken_increment(mean_lengths, n);
  const auto before = aitken_increment(mean_lengths, n - 2);
  if (now && before) {
    e.value = *now;
    e.standard_error = std::abs(*now - *before);
    e.method = "exact_increment_aitken";
    return e;
  }
  e.value = inc(n);
  e.standard_error = std::abs(inc(n) - inc(n - 1));
  if (n >= 5) {
    e.standard_error = std::max(e.standard_error, std::abs(inc(n) - inc(n - 2)));
  }
  e.method = "exact_two_step_increment";
  return e;
}

bool exact_zero_drift(const std::vector<double>& mean_lengths) {
  const std::size_t n = mean_lengths.size();
  if (n < 2) {
    return false;
  }
  const std::size_t m = n / 2;
  const double a = mean_lengths[m - 1];
  const double b = mean_lengths[n - 1];
  if (!(a > 0.0) || !(b > 0.0)) {
    return true;
  }
  const double exponent = std::log(b / a) / std::log(static_cast<double>(n) / m);
  return exponent < 0.75;
}

SystemReport evaluate_system(const Presentation& p,
                             const GeneratingSystemSpec& spec,
                             const CompareOptions& options) {
  const LetterSet letters = build_letters(p, spec);
  const std::uint64_t seed = derive_seed(options.master_seed, fnv1a(letters.canonical));

  SystemReport r;
  r.name = spec.name;
  for (const auto& k : letters.keys) {
    r.letters.push_back(p.format(p.adopt(k)));
  }

  const DistanceTable table =
      build_table(p, letters, options.radius, options.element_cap);
  r.radius = table.radius;
  r.table_size = table.dist.size();
  for (const auto& g : p.alphabet()) {
    const auto d = table.find(p.element(g).key());
    if (!d || static_cast<int>(*d) > options.generation_depth) {
      throw Error(ErrorKind::invalid_input,
                  "system '" + spec.name + "' does not reach " +
                      to_string(g, p.letter_prefix()) + " within " +
                      std::to_string(options.generation_depth) + " steps");
    }
  }
  if (table.radius < 2) {
    throw Error(ErrorKind::insufficient_depth,
                "distance table for '" + spec.name +
                    "' is complete only to radius " +
                    std::to_string(table.radius));
  }
  r.volume = volume_from_spheres(table.counts);

  const int depth = std::min(options.convolution_depth, table.radius);
  auto pair_weights =
      std::vector<double>(letters.pairs, 1.0 / static_cast<double>(letters.pairs));

  if (options.policy == MeasurePolicy::optimize && letters.pairs > 1) {
    const int inner = std::min(options.inner_depth, depth);
    auto objective = [&](std::span<const double> w) -> std::optional<double> {
      const auto lw = letter_weights_from_pairs(letters, w);
      const auto walk = exact_walk(p, letters, lw, table, inner,
                                   options.convolution_budget);
      const auto& lengths = walk.mean_lengths;
      if (lengths.size() < 3 || !(r.volume.value > 0.0)) {
        return std::nullopt;
      }
      const double l = 0.5 * (lengths.back() - lengths[lengths.size() - 3]);
      if (!(l > 0.0) || exact_zero_drift(lengths)) {
        return std::nullopt;
      }
      const double h = entropy_rate_from_sequence(walk.entropies).value;
      return h / (l * r.volume.value);
    };
    SearchOptions search;
    search.restarts = options.restarts;
    search.master_seed = seed;
    search.w_min = options.w_min;
    search.max_evaluations = options.max_evaluations;
    search.workers = 1;
    try {
      pair_weights = search_pair_weights(letters.pairs, objective, search)
                         .best_pair_weights;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::optimization_failed) {
        throw;
      }
    }
  }
  r.pair_weights = pair_weights;
  const auto lw = letter_weights_from_pairs(letters, pair_weights);

  const auto walk = exact_walk(p, letters, lw, table, depth,
                               options.convolution_budget);
  r.convolution_depth = static_cast<int>(walk.entropies.size());
  if (walk.entropies.size() < 2) {
    throw Error(ErrorKind::insufficient_depth,
                "budget allows fewer than two exact steps for '" + spec.name + "'");
  }
  r.entropy = entropy_rate_from_sequence(walk.entropies);

  const int steps = options.walk_steps > 0 ? options.walk_steps : table.radius;
  const auto mc = monte_carlo_drift(p, letters, lw, table, steps,
                                    options.trials, derive_seed(seed, 1),
                                    options.workers);
  r.discarded = mc.discarded;
  if (static_cast<double>(mc.discarded) >
      options.max_discard_fraction * options.trials) {
    throw Error(ErrorKind::unreliable_comparison,
                std::to_string(mc.discarded) + " of " +
                    std::to_string(options.trials) + " walks for '" +
                    spec.name + "' left the distance table");
  }
  r.drift_monte_carlo = mc.drift;
  r.drift = exact_increment(walk.mean_lengths);
  if (r.drift.samples == 0) {
    r.drift = mc.drift;
  }

  if (exact_zero_drift(walk.mean_lengths) || mc.drift.lower() <= 0.0) {
    r.verdict = Verdict::undefined_drift;
    return r;
  }
  try {
    r.q = q_ratio(r.entropy, r.drift, r.volume);
    r.verdict = classify(*r.q);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::undefined_drift &&
        e.kind() != ErrorKind::degenerate_growth) {
      throw;
    }
    r.verdict = Verdict::undefined_drift;
  }
  return r;
}

}  // namespace

GeneratingSystemSpec parse_system(std::string_view text, const Presentation& p,
                                  std::string name) {
  GeneratingSystemSpec spec;
  spec.name = std::move(name);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string word = trim(line);
    if (word.empty()) {
      continue;
    }
    try {
      spec.words.push_back(p.parse_element(word));
    } catch (const Error& e) {
      throw Error(ErrorKind::invalid_input,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (spec.words.empty()) {
    throw Error(ErrorKind::invalid_input, "generating system has no words");
  }
  if (spec.name.empty()) {
    std::vector<std::string> parts;
    for (const auto& w : spec.words) {
      parts.push_back(p.format(w));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      spec.name += (i == 0 ? "" : ", ") + parts[i];
    }
    spec.name = "{" + spec.name + "}";
  }
  return spec;
}

GeneratingSystemSpec standard_system(const Presentation& p) {
  GeneratingSystemSpec spec;
  spec.name = "standard";
  for (int i = 1; i <= p.rank(); ++i) {
    spec.words.push_back(p.element(Generator{i, Sign::positive}));
  }
  return spec;
}

Comparison compare_systems(const Presentation& p,
                           const std::vector<GeneratingSystemSpec>& specs,
                           const CompareOptions& options) {
  if (specs.empty()) {
    throw Error(ErrorKind::invalid_input, "no generating systems to compare");
  }
  if (options.trials < 2) {
    throw Error(ErrorKind::invalid_input, "compare needs at least 2 trials");
  }
  std::vector<std::optional<SystemReport>> reports(specs.size());
  parallel_for(specs.size(), options.workers, [&](std::size_t i) {
    CompareOptions local = options;
    local.workers = 1;
    reports[i] = evaluate_system(p, specs[i], local);
  });

  Comparison out;
  for (auto& r : reports) {
    out.ranking.push_back(std::move(*r));
  }
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [](const SystemReport& a, const SystemReport& b) {
                     if (a.q.has_value() != b.q.has_value()) {
                       return a.q.has_value();
                     }
                     if (a.q && a.q->value != b.q->value) {
                       return a.q->value > b.q->value;
                     }
                     if (a.name != b.name) {
                       return a.name < b.name;
                     }
                     return a.letters < b.letters;
                   });
  out.note =
      "q is ranked over the listed systems only; the supremum over all "
      "generating systems is not computed";
  return out;
}

}  // namespace walklab
