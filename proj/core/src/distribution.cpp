#include "walklab/distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "walklab/error.hpp"

namespace walklab {

double Distribution::probability(const NormalForm& g) const {
  if (g.tag() != tag_) {
    throw Error(ErrorKind::usage, "element from a different presentation");
  }
  const auto it = table_.find(g.key());
  return it == table_.end() ? 0.0 : it->second;
}

double Distribution::total_mass() const {
  long double sum = 0.0L;
  for (const auto& [g, p] : table_) {
    sum += p;
  }
  return static_cast<double>(sum);
}

double Distribution::mean_length() const {
  long double sum = 0.0L;
  for (const auto& [g, p] : table_) {
    sum += p * static_cast<long double>(g.size());
  }
  return static_cast<double>(sum);
}

double entropy(const Distribution& d) {
  long double h = 0.0L;
  for (const auto& [g, p] : d.table()) {
    if (p > 0.0) {
      h -= p * std::log2(static_cast<long double>(p));
    }
  }
  return static_cast<double>(h);
}

Convolver::Convolver(const Presentation& p, const SymmetricMeasure& mu,
                     std::size_t budget)
    : presentation_(p), budget_(budget) {
  if (mu.tag() != p.tag()) {
    throw Error(ErrorKind::usage, "measure belongs to " + mu.presentation() +
                                      ", not " + p.spec());
  }
  Distribution::Table first;
  for (const auto& [g, w] : mu.support()) {
    letters_.emplace_back(g.code(), w);
    first.emplace(p.element(g).key(), w);
  }
  current_ = Distribution(std::move(first), 1, p.tag());
}

void Convolver::step() {
  const std::size_t size = current_.size();
  if (previous_size_ > 0) {
    const double growth =
        static_cast<double>(size) / static_cast<double>(previous_size_);
    if (static_cast<double>(size) * growth > static_cast<double>(budget_)) {
      throw BudgetExceeded("projected support of step " +
                               std::to_string(current_.steps() + 1) +
                               " exceeds budget " + std::to_string(budget_),
                           static_cast<std::size_t>(current_.steps()));
    }
  }
  Distribution::Table next;
  next.reserve(std::min(budget_, size * 3));
  for (const auto& [g, pg] : current_.table()) {
    for (const auto& [code, w] : letters_) {
      ElementKey h = g;
      presentation_.append(h, code);
      next[std::move(h)] += pg * w;
    }
    if (next.size() > budget_) {
      throw BudgetExceeded("support of step " +
                               std::to_string(current_.steps() + 1) +
                               " exceeds budget " + std::to_string(budget_),
                           static_cast<std::size_t>(current_.steps()));
    }
  }
  Distribution d(std::move(next), current_.steps() + 1, presentation_.tag());
  const double mass = d.total_mass();
  if (std::abs(mass - 1.0) > 1e-9) {
    throw std::logic_error("convolution lost mass: total " +
                           std::to_string(mass));
  }
  previous_size_ = size;
  current_ = std::move(d);
}

Distribution convolve_power(const Presentation& p, const SymmetricMeasure& mu,
                            int n, std::size_t budget) {
  if (n < 1) {
    throw Error(ErrorKind::invalid_input, "convolution power must be >= 1");
  }
  Convolver conv(p, mu, budget);
  while (conv.steps() < n) {
    conv.step();
  }
  return conv.current();
}

}  // namespace walklab
