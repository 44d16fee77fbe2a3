#ifndef WALKLAB_MEASURE_HPP_
#define WALKLAB_MEASURE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walklab/presentation.hpp"

namespace walklab {

// Probability weights on the standard generating system of a presentation,
// indexed by Generator::code(). For group presentations mu(g) = mu(g^-1).
// No mass on the identity: the support is a subset of S.
class SymmetricMeasure {
 public:
  static SymmetricMeasure uniform(const Presentation& p);

  // One weight per inverse pair (groups) or per generator (semigroups); each
  // pair weight is split equally between g and g^-1.
  static SymmetricMeasure from_pair_weights(const Presentation& p,
                                            std::span<const double> weights);

  // Full per-letter weights, validated as given.
  static SymmetricMeasure from_letter_weights(const Presentation& p,
                                              std::vector<double> weights);

  double weight(Generator g) const { return weights_.at(g.code()); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::vector<double> pair_weights() const;
  // Letters with positive weight, in code order.
  std::vector<std::pair<Generator, double>> support() const;

  const std::string& presentation() const noexcept { return presentation_; }
  std::uint16_t tag() const noexcept { return tag_; }

 private:
  SymmetricMeasure(const Presentation& p, std::vector<double> weights);

  std::vector<double> weights_;
  std::string presentation_;
  std::uint16_t tag_ = 0;
};

// Total-variation distance between two measures on the same system.
double total_variation(const SymmetricMeasure& a, const SymmetricMeasure& b);

struct ParsedMeasure {
  SymmetricMeasure measure;
  // The factor the raw total was divided by (1 when already normalised).
  double normalization = 1.0;
};

// Lines "generator weight" ("z1 0.3"); '#' starts a comment. For groups each
// line's weight is the mass of the pair {g, g^-1} and is split equally.
// Totals further than 1e-9 from 1 are rejected.
ParsedMeasure parse_measure(std::string_view text, const Presentation& p);

}  // namespace walklab

#endif  // WALKLAB_MEASURE_HPP_
