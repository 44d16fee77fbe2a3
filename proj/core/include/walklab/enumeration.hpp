#ifndef WALKLAB_ENUMERATION_HPP_
#define WALKLAB_ENUMERATION_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "walklab/presentation.hpp"

namespace walklab {

inline constexpr std::size_t kDefaultElementCap = 10'000'000;

// Exact sphere sizes |W_0|, ..., |W_N|.
struct SphereCounts {
  std::string presentation;
  std::vector<std::uint64_t> spheres;

  int depth() const noexcept { return static_cast<int>(spheres.size()) - 1; }
  // Running sums |W_{<=n}|.
  std::vector<std::uint64_t> balls() const;
};

struct EnumerationOptions {
  std::size_t element_cap = kDefaultElementCap;
  // Keep every level's elements in the result (memory heavy).
  bool keep_elements = false;
  // Cross-check each newly found element against the previous levels.
  bool verify_levels = true;
  int workers = 1;
};

struct BallEnumeration {
  SphereCounts counts;
  // levels[n] holds W_n in discovery order when keep_elements is set.
  std::vector<std::vector<ElementKey>> levels;
};

// Level-by-level BFS over normal forms. Throws BudgetExceeded carrying the
// completed levels' sphere counts when more than element_cap elements would
// be held.
BallEnumeration enumerate_ball(const Presentation& p, int depth,
                               const EnumerationOptions& options = {});

// c_n(g) for exactly-n-letter products and the cumulative "at most n" table.
struct PathCounts {
  int steps = 0;
  std::unordered_map<ElementKey, std::uint64_t> exact;
  std::unordered_map<ElementKey, std::uint64_t> at_most;
};

PathCounts count_paths(const Presentation& p, int steps,
                       std::size_t element_cap = kDefaultElementCap);

// Clique polynomial of the chain commutation graph:
// mu(t) = sum_j (-1)^j C(k-j+1, j) t^j.
struct MoebiusPolynomial {
  int rank = 1;
  std::vector<std::int64_t> coefficients;

  double evaluate(double t) const;
};

MoebiusPolynomial moebius_polynomial(int k);

// Sphere sizes of the trace monoid from 1/mu(t):
// |W_n| = -sum_{j>=1} mu_j |W_{n-j}|.
SphereCounts semigroup_spheres_from_moebius(const MoebiusPolynomial& m,
                                            int depth);

enum class VolumeMethod { closed_form, moebius_root, sphere_ratio_fit };

const char* to_string(VolumeMethod method) noexcept;

// Logarithmic volume in bits per step.
struct VolumeEstimate {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::closed_form;
  // Fit range of n (sphere_ratio_fit); zero otherwise.
  int window_first = 0;
  int window_last = 0;
  // max - min of the window's log-ratios; zero for exact methods.
  double spread = 0.0;
};

// log2(2k-1) for free:k, 0 for abelian:k. Other kinds have no closed form
// and throw Error(usage).
VolumeEstimate volume_closed_form(const Presentation& p);

// log2(1/rho), rho the smallest positive root of mu, found by bisection.
VolumeEstimate volume_from_moebius(const MoebiusPolynomial& m);

// Mean of log2(|W_{n+1}|/|W_n|) over the last `window` ratios (the ratio out
// of n = 0 is skipped whenever there is room).
VolumeEstimate volume_from_spheres(const SphereCounts& counts, int window = 3);

}  // namespace walklab

#endif  // WALKLAB_ENUMERATION_HPP_
