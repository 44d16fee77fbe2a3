#ifndef WALKLAB_DISTRIBUTION_HPP_
#define WALKLAB_DISTRIBUTION_HPP_

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "walklab/measure.hpp"
#include "walklab/presentation.hpp"

namespace walklab {

inline constexpr std::size_t kDefaultConvolutionBudget = 10'000'000;

// Finite probability table over normal forms: a computed mu^{*n}.
class Distribution {
 public:
  using Table = std::unordered_map<ElementKey, double>;

  Distribution() = default;
  Distribution(Table table, int steps, std::uint16_t tag)
      : table_(std::move(table)), steps_(steps), tag_(tag) {}

  const Table& table() const noexcept { return table_; }
  int steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return table_.size(); }
  double probability(const NormalForm& g) const;
  double total_mass() const;
  // Expected normal-form length.
  double mean_length() const;

 private:
  Table table_;
  int steps_ = 0;
  std::uint16_t tag_ = 0;
};

// Shannon entropy in bits; zero-probability entries contribute nothing.
double entropy(const Distribution& d);

// Iterates D_1 = mu, D_{t+1}(h) = sum over g*s = h of D_t(g) mu(s). Each step
// checks mass conservation to 1e-9. step() throws BudgetExceeded (with the
// last completed n) when the next table is projected to, or does, exceed the
// budget; the current table is left untouched in that case.
class Convolver {
 public:
  Convolver(const Presentation& p, const SymmetricMeasure& mu,
            std::size_t budget = kDefaultConvolutionBudget);

  const Distribution& current() const noexcept { return current_; }
  int steps() const noexcept { return current_.steps(); }
  void step();

 private:
  Presentation presentation_;
  std::vector<std::pair<std::uint8_t, double>> letters_;
  std::size_t budget_;
  std::size_t previous_size_ = 0;
  Distribution current_;
};

// Exact mu^{*n}; throws BudgetExceeded reporting the largest completed n.
Distribution convolve_power(const Presentation& p, const SymmetricMeasure& mu,
                            int n,
                            std::size_t budget = kDefaultConvolutionBudget);

}  // namespace walklab

#endif  // WALKLAB_DISTRIBUTION_HPP_
