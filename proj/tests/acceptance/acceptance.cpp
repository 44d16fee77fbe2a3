#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "oracle.hpp"
#include "walklab/distribution.hpp"
#include "walklab/enumeration.hpp"
#include "walklab/inequality.hpp"
#include "walklab/parallel.hpp"
#include "walklab/walks.hpp"

namespace {

using walklab::Presentation;
using walklab::PresentationKind;
using walklab::SymmetricMeasure;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome free_growth() {
  Outcome o;
  Stopwatch clock;
  for (int k = 2; k <= 3; ++k) {
    const Presentation p(PresentationKind::free, k);
    const auto counts = walklab::enumerate_ball(p, 8).counts;
    std::uint64_t expected = 2 * k;
    for (int n = 1; n <= 8; ++n) {
      o.require(counts.spheres[n] == expected,
                p.spec() + " |W_" + std::to_string(n) + "|");
      expected *= 2 * k - 1;
    }
    const double v = walklab::volume_from_spheres(counts).value;
    const double exact = std::log2(2.0 * k - 1.0);
    o.detail << p.spec() << " v=" << v << " (|dv|=" << std::abs(v - exact) << ") ";
    o.require(std::abs(v - exact) <= 1e-9, "v to 1e-9");
  }
  o.detail << "time=" << clock.seconds() << "s";
  o.require(clock.seconds() < 30.0, "runtime < 30 s");
  return o;
}

Outcome free_drift() {
  Outcome o;
  Stopwatch clock;
  for (int k = 2; k <= 3; ++k) {
    const Presentation p(PresentationKind::free, k);
    walklab::DriftOptions opts;
    opts.steps = 10'000;
    opts.trials = 200;
    const auto d = walklab::drift(p, SymmetricMeasure::uniform(p), opts);
    const double exact = (k - 1.0) / k;
    o.detail << p.spec() << " l=" << d.drift.value << " +- "
             << d.drift.standard_error << " ";
    o.require(std::abs(d.drift.value - exact) <= 0.01, p.spec() + " |l - (k-1)/k|");
  }
  o.detail << "time=" << clock.seconds() << "s";
  o.require(clock.seconds() < 60.0, "runtime < 60 s");
  return o;
}

Outcome free_entropy() {
  Outcome o;
  Stopwatch clock;
  const auto p = Presentation::parse("free:2");
  walklab::EntropyRateOptions opts;
  opts.max_n = 10;
  opts.budget = 10'000'000;
  const auto e = walklab::entropy_rate(p, SymmetricMeasure::uniform(p), opts);
  const double target = 0.5 * std::log2(3.0);
  o.detail << "n=" << e.max_exact_n << " h=" << e.estimate.value << " +- "
           << e.estimate.standard_error << " (" << e.estimate.method
           << ", raw increment " << e.last_increment << ", target " << target
           << ") time=" << clock.seconds() << "s";
  o.require(e.max_exact_n == 10, "exact to n = 10");
  o.require(std::abs(e.estimate.value - target) <= 0.05, "within 0.05 of l v");
  o.require(clock.seconds() < 300.0, "runtime < 5 min");
  return o;
}

std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = g(rng);
    sum += x;
  }
  for (auto& x : w) {
    x /= sum;
  }
  return w;
}

Outcome inequality_sweep() {
  Outcome o;
  Stopwatch clock;
  std::mt19937_64 rng(20240601);
  walklab::ReportOptions opts;
  opts.entropy.max_n = 9;
  opts.drift.steps = 3'000;
  opts.drift.trials = 100;
  int violations = 0;
  int cases = 0;
  int undefined = 0;
  double worst = -1e300;
  for (const char* spec : {"free:2", "free:3", "lfgroup:4", "lfsemigroup:4"}) {
    const auto p = Presentation::parse(spec);
    for (int i = 0; i < 20; ++i) {
      const auto mu = SymmetricMeasure::from_pair_weights(
          p, dirichlet(static_cast<std::size_t>(p.rank()), rng));
      opts.drift.master_seed = walklab::derive_seed(7, static_cast<std::uint64_t>(cases));
      const auto r = walklab::fundamental_report(p, mu, opts);
      ++cases;
      if (!r.q) {
        ++undefined;
      }
      const double slack = r.h().value - r.bound - 3.0 * r.combined_sigma;
      worst = std::max(worst, slack);
      if (!r.inequality_holds) {
        ++violations;
        o.detail << spec << "#" << i << " h=" << r.h().value << " lv=" << r.bound
                 << " ";
      }
    }
  }
  o.detail << cases << " measures, " << violations << " violations, " << undefined
           << " undefined q, max(h - lv - 3 sigma)=" << worst
           << " time=" << clock.seconds() << "s";
  o.require(violations == 0, "no violations");
  return o;
}

Outcome zero_drift() {
  Outcome o;
  for (const char* spec : {"abelian:1", "abelian:2"}) {
    const auto p = Presentation::parse(spec);
    const auto mu = SymmetricMeasure::uniform(p);
    walklab::DriftOptions opts;
    opts.steps = 10'000;
    opts.trials = 200;
    const auto d = walklab::drift(p, mu, opts);
    o.detail << spec << " l=" << d.drift.value;
    o.require(std::abs(d.drift.value) <= 0.02, std::string(spec) + " |l| <= 0.02");
    walklab::EntropyRateOptions eopts;
    eopts.max_n = 10;
    const auto e = walklab::entropy_rate(p, mu, eopts);
    o.detail << " h=" << e.estimate.value << " (raw increment " << e.last_increment
             << ")";
    o.require(e.estimate.value <= 0.05, std::string(spec) + " entropy increment");
    for (const int n : {1'000, 10'000}) {
      walklab::DriftOptions nopts;
      nopts.steps = n;
      nopts.trials = 200;
      nopts.master_seed = 3;
      const double ratio =
          walklab::drift(p, mu, nopts).mean_length.value / std::sqrt(double(n));
      o.detail << " El/sqrt(" << n << ")=" << ratio;
      o.require(ratio > 0.5 && ratio < 1.5,
                std::string(spec) + " sqrt band at n=" + std::to_string(n));
    }
    o.detail << "; ";
  }
  return o;
}

Outcome semigroup_constants() {
  Outcome o;
  double previous = -1.0;
  for (int k = 1; k <= 20; ++k) {
    const double v = walklab::volume_from_moebius(walklab::moebius_polynomial(k)).value;
    o.require(v > previous, "v monotone at k=" + std::to_string(k));
    previous = v;
  }
  o.detail << "v(k=20)=" << previous << " ";
  o.require(std::abs(previous - 2.0) <= 0.05, "v(20) within 0.05 of 2");

  const auto p = Presentation::parse("lfsemigroup:10");
  const auto mu = SymmetricMeasure::uniform(p);
  walklab::DriftOptions dopts;
  dopts.steps = 2'000;
  dopts.trials = 50;
  const auto d = walklab::drift(p, mu, dopts);
  o.detail << "l=" << d.drift.value << " se=" << d.drift.standard_error << " ";
  o.require(d.drift.value == 1.0 && d.drift.standard_error == 0.0, "drift exactly 1");

  walklab::EntropyRateOptions eopts;
  eopts.max_n = 10;
  eopts.budget = 10'000'000;
  const auto e = walklab::entropy_rate(p, mu, eopts);
  o.detail << "h(n=" << e.max_exact_n << ")=" << e.estimate.value
           << " (raw increment " << e.last_increment << ")";
  o.require(e.max_exact_n == 10, "exact to n = 10");
  o.require(std::abs(e.estimate.value - std::log2(3.0)) <= 0.15,
            "within 0.15 of log2 3");
  return o;
}

Outcome trace_monoid() {
  Outcome o;
  for (int k = 1; k <= 6; ++k) {
    const Presentation p(PresentationKind::locally_free_semigroup, k);
    const auto bfs = walklab::enumerate_ball(p, 10).counts.spheres;
    const auto rec =
        walklab::semigroup_spheres_from_moebius(walklab::moebius_polynomial(k), 10)
            .spheres;
    o.require(bfs == rec, "k=" + std::to_string(k));
    o.detail << "k=" << k << " |W_10|=" << bfs.back() << " ";
  }
  const auto k3 =
      walklab::enumerate_ball(Presentation::parse("lfsemigroup:3"), 5).counts.spheres;
  o.require(k3 == std::vector<std::uint64_t>{1, 3, 8, 21, 55, 144}, "k=3 sequence");
  return o;
}

Outcome lf_strictness() {
  Outcome o;
  Stopwatch clock;
  const auto p = Presentation::parse("lfgroup:6");
  const auto r = walklab::fundamental_report(p, SymmetricMeasure::uniform(p));
  o.detail << "v=" << r.volume.value << " l=" << r.l().value << " h=" << r.h().value;
  if (r.q) {
    o.detail << " q=" << r.q->value << " +- " << r.q->sigma;
  }
  o.detail << " verdict=" << walklab::to_string(r.verdict)
           << " time=" << clock.seconds() << "s";
  o.require(r.verdict == walklab::Verdict::strictly_below, "strictly_below");
  o.require(r.q && r.q->value + 2.0 * r.q->sigma < 0.95, "q + 2 sigma < 0.95");
  o.require(r.l().value <= 2.0 / 3.0 + 0.02, "l <= 2/3 + 0.02");
  o.require(r.volume.window_last <= 7, "BFS window at n <= 7");
  o.require(r.volume.value >= 2.2 && r.volume.value <= 3.1, "v in [2.2, 3.1]");
  return o;
}

Outcome lln() {
  Outcome o;
  const auto p = Presentation::parse("free:2");
  const auto mu = SymmetricMeasure::uniform(p);
  const auto d = walklab::drift(p, mu);
  walklab::LlnOptions opts;
  opts.trials = 10'000;
  const auto r = walklab::lln_check(p, mu, 400, 0.2, d.drift.value, opts);
  o.detail << "l_ref=" << d.drift.value << " fraction=" << r.fraction << " ("
           << r.method << ", " << r.samples << " samples)";
  o.require(r.samples >= 10'000 || r.method == "exact_convolution",
            ">= 1e4 trials");
  o.require(r.fraction >= 0.8, "fraction >= 0.8");
  return o;
}

Outcome optimizer() {
  Outcome o;
  walklab::OptimizeOptions opts;
  opts.search.restarts = 5;
  const auto p = Presentation::parse("free:2");
  const auto r = walklab::optimize_measure(p, opts);
  const double tv = walklab::total_variation(r.best, SymmetricMeasure::uniform(p));
  o.detail << "weights=(" << r.best.pair_weights()[0] << ", "
           << r.best.pair_weights()[1] << ") tv=" << tv << " q=" << r.q;
  o.require(tv <= 0.05, "TV <= 0.05");
  o.require(r.q >= 0.93 && r.q <= 1.02, "q in [0.93, 1.02]");
  return o;
}

const PresentationKind kKinds[] = {
    PresentationKind::free, PresentationKind::free_abelian,
    PresentationKind::locally_free_group, PresentationKind::locally_free_semigroup};

Outcome property_suites() {
  Outcome o;
  std::size_t words = 0;
  // Normal forms and BFS distances against the closure oracle.
  for (const auto kind : kKinds) {
    for (int k = 1; k <= 4; ++k) {
      const Presentation p(kind, k);
      walklab::EnumerationOptions eo;
      eo.keep_elements = true;
      const auto ball = walklab::enumerate_ball(p, 6, eo);
      std::unordered_map<walklab::ElementKey, int> dist;
      for (std::size_t n = 0; n < ball.levels.size(); ++n) {
        for (const auto& key : ball.levels[n]) {
          dist.emplace(key, static_cast<int>(n));
        }
      }
      bool ok = true;
      oracle::for_each_word(oracle::Rules{kind, k}, 6,
                            [&](const oracle::Word& w, const oracle::Word& canon) {
                              ++words;
                              const auto nf = p.normalize(oracle::to_library(w));
                              const auto it = dist.find(nf.key());
                              ok = ok && oracle::from_library(nf.word()) == canon &&
                                   p.normalize(nf.word()) == nf &&
                                   it != dist.end() &&
                                   it->second == static_cast<int>(canon.size());
                            });
      o.require(ok, "normal form / BFS oracle on " + p.spec());
    }
  }
  o.detail << words << " words checked; ";

  // Group laws on 1e4 random triples per presentation.
  for (const char* spec : {"free:3", "abelian:3", "lfgroup:5", "lfsemigroup:5"}) {
    const auto p = Presentation::parse(spec);
    const auto alphabet = p.alphabet();
    std::mt19937_64 rng(walklab::derive_seed(11, p.rank()));
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 12);
    auto random_element = [&] {
      walklab::Word w;
      for (int i = len(rng); i > 0; --i) {
        w.push_back(alphabet[pick(rng)]);
      }
      return p.normalize(w);
    };
    bool ok = true;
    for (int t = 0; t < 10'000 && ok; ++t) {
      const auto a = random_element();
      const auto b = random_element();
      const auto c = random_element();
      ok = p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)) &&
           p.multiply(a, p.identity()) == a && p.normalize(a.word()) == a;
      if (ok && p.symmetric()) {
        ok = p.multiply(a, p.invert(a)).is_identity();
      }
    }
    o.require(ok, std::string("group laws on ") + spec);
  }

  // Convolution properties: subadditivity, support, symmetry.
  for (const char* spec : {"free:2", "lfgroup:4", "abelian:2", "lfsemigroup:4"}) {
    const auto p = Presentation::parse(spec);
    std::mt19937_64 rng(5);
    const auto mu = SymmetricMeasure::from_pair_weights(
        p, dirichlet(static_cast<std::size_t>(p.rank()), rng));
    walklab::Convolver conv(p, mu);
    std::vector<double> h{walklab::entropy(conv.current())};
    bool ok = true;
    for (int n = 2; n <= 7; ++n) {
      conv.step();
      const auto& d = conv.current();
      h.push_back(walklab::entropy(d));
      for (const auto& [key, w] : d.table()) {
        ok = ok && static_cast<int>(key.size()) <= n;
        if (p.symmetric()) {
          ok = ok && std::abs(d.probability(p.invert(p.adopt(key))) - w) <= 1e-15;
        }
      }
    }
    for (std::size_t m = 1; m <= h.size(); ++m) {
      for (std::size_t n = 1; m + n <= h.size(); ++n) {
        ok = ok && h[m + n - 1] <= h[m - 1] + h[n - 1] + 1e-9;
      }
    }
    o.require(ok, std::string("convolution properties on ") + spec);
  }

  // Fixed seeds reproduce results at any worker count.
  const auto p = Presentation::parse("lfgroup:4");
  walklab::DriftOptions d1;
  d1.steps = 500;
  d1.trials = 40;
  d1.master_seed = 99;
  auto d3 = d1;
  d3.workers = 3;
  const auto a = walklab::drift(p, SymmetricMeasure::uniform(p), d1);
  const auto b = walklab::drift(p, SymmetricMeasure::uniform(p), d3);
  o.require(a.drift.value == b.drift.value &&
                a.mean_length.value == b.mean_length.value,
            "seeded reproducibility");
  o.detail << "group laws, convolution properties and seeding checked";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "free-group growth", free_growth},
      {2, "free-group drift", free_drift},
      {3, "free-group entropy", free_entropy},
      {4, "fundamental inequality sweep", inequality_sweep},
      {5, "zero-drift groups have zero entropy", zero_drift},
      {6, "locally free semigroup constants", semigroup_constants},
      {7, "trace-monoid cross-check", trace_monoid},
      {8, "locally free group strictness", lf_strictness},
      {9, "law of large numbers", lln},
      {10, "optimizer on free:2", optimizer},
      {11, "property suites", property_suites},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walklab acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion,-c", selected, "Run only these criteria (1-11)")
      ->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %d (%s): %s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
