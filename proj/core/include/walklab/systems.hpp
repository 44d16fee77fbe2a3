#ifndef WALKLAB_SYSTEMS_HPP_
#define WALKLAB_SYSTEMS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "walklab/inequality.hpp"

namespace walklab {

// A generating system S' given as words over a base presentation. For group
// presentations the inverse of every word is added automatically.
struct GeneratingSystemSpec {
  std::string name;
  std::vector<NormalForm> words;
};

// One word per line in the token syntax ("z1 z2^-1"); '#' starts a comment.
GeneratingSystemSpec parse_system(std::string_view text, const Presentation& p,
                                  std::string name = {});

// The standard system {x_1, ..., x_k} of p.
GeneratingSystemSpec standard_system(const Presentation& p);

enum class MeasurePolicy { uniform, optimize };

struct CompareOptions {
  MeasurePolicy policy = MeasurePolicy::uniform;
  // Cutoff radius (in S'-steps) of the distance table.
  int radius = 10;
  std::size_t element_cap = 2'000'000;
  // Every base generator must be reached within this many S'-steps.
  int generation_depth = 4;
  int convolution_depth = 10;
  std::size_t convolution_budget = 2'000'000;
  // Walk length for the drift estimate; 0 means the table radius.
  int walk_steps = 0;
  int trials = 4000;
  double max_discard_fraction = 0.10;
  std::uint64_t master_seed = 1;
  // Measure search (policy optimize).
  int restarts = 3;
  int max_evaluations = 25;
  int inner_depth = 7;
  double w_min = 1e-4;
  int workers = 1;
};

struct SystemReport {
  std::string name;
  // All letters of S' (words plus inverses) in the base token syntax.
  std::vector<std::string> letters;
  std::vector<double> pair_weights;
  VolumeEstimate volume;
  // From the exact convolution's mean lengths: two-step increments
  // (E l(X_n) - E l(X_{n-2}))/2, Aitken-extrapolated when they contract.
  EstimateCI drift;
  // Increment estimate from sampled walks in the distance table.
  EstimateCI drift_monte_carlo;
  EstimateCI entropy;
  std::optional<QRatio> q;
  Verdict verdict = Verdict::undefined_drift;
  int radius = 0;
  std::size_t table_size = 0;
  std::size_t discarded = 0;
  int convolution_depth = 0;
};

struct Comparison {
  // Sorted by q descending; systems with undefined drift come last.
  std::vector<SystemReport> ranking;
  std::string note;
};

// Estimates v, l, h for each system in its own word metric (BFS distance
// table over base elements), then ranks by q(S', mu). Throws
// Error(invalid_input) when a system fails the generation check and
// Error(unreliable_comparison) when more than max_discard_fraction of a
// system's walks leave the distance table.
Comparison compare_systems(const Presentation& p,
                           const std::vector<GeneratingSystemSpec>& specs,
                           const CompareOptions& options = {});

}  // namespace walklab

#endif  // WALKLAB_SYSTEMS_HPP_
