#include "walklab/enumeration.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "walklab/error.hpp"
#include "walklab/parallel.hpp"

namespace walklab {

std::vector<std::uint64_t> SphereCounts::balls() const {
  std::vector<std::uint64_t> out(spheres.size());
  std::partial_sum(spheres.begin(), spheres.end(), out.begin());
  return out;
}

namespace {

__extension__ typedef __int128 Wide;

using KeySet = std::unordered_set<ElementKey>;

// Neighbours of one frontier element that lie on the next sphere. Neighbours
// one level down must already be known; anything else breaks the
// BFS-level == normal-form-length invariant.
void expand(const Presentation& p, const ElementKey& g,
            const std::vector<std::uint8_t>& letters, const KeySet* previous,
            std::vector<ElementKey>& out) {
  const std::size_t n = g.size();
  for (const auto code : letters) {
    ElementKey h = g;
    p.append(h, code);
    if (h.size() == n + 1) {
      out.push_back(std::move(h));
    } else if (h.size() + 1 == n) {
      if (previous != nullptr && previous->find(h) == previous->end()) {
        throw std::logic_error("BFS reached an element of length " +
                               std::to_string(h.size()) +
                               " that is missing from its level");
      }
    } else {
      throw std::logic_error("normal-form length jumped from " +
                             std::to_string(n) + " to " +
                             std::to_string(h.size()) + " in one step");
    }
  }
}

}  // namespace

BallEnumeration enumerate_ball(const Presentation& p, int depth,
                               const EnumerationOptions& options) {
  if (depth < 0) {
    throw Error(ErrorKind::invalid_input, "depth must be non-negative");
  }
  std::vector<std::uint8_t> letters;
  for (const auto& g : p.alphabet()) {
    letters.push_back(g.code());
  }

  BallEnumeration result;
  result.counts.presentation = p.spec();
  result.counts.spheres.push_back(1);
  std::vector<ElementKey> frontier{ElementKey{}};
  KeySet previous;
  KeySet current{ElementKey{}};
  std::uint64_t total = 1;
  if (options.keep_elements) {
    result.levels.push_back(frontier);
  }

  for (int n = 0; n < depth; ++n) {
    const KeySet* check = options.verify_levels ? &previous : nullptr;
    const std::size_t chunks = static_cast<std::size_t>(
        std::max(1, options.workers));
    std::vector<std::vector<ElementKey>> found(chunks);
    parallel_for(chunks, options.workers, [&](std::size_t c) {
      const std::size_t begin = frontier.size() * c / chunks;
      const std::size_t end = frontier.size() * (c + 1) / chunks;
      for (std::size_t i = begin; i < end; ++i) {
        expand(p, frontier[i], letters, check, found[c]);
      }
    });

    KeySet next;
    std::vector<ElementKey> next_frontier;
    for (auto& chunk : found) {
      for (auto& h : chunk) {
        if (next.insert(h).second) {
          next_frontier.push_back(std::move(h));
          if (total + next_frontier.size() > options.element_cap) {
            throw BudgetExceeded(
                "element cap " + std::to_string(options.element_cap) +
                    " exceeded while enumerating level " +
                    std::to_string(n + 1) + " of " + p.spec(),
                static_cast<std::size_t>(n), result.counts.spheres);
          }
        }
      }
      chunk.clear();
      chunk.shrink_to_fit();
    }

    total += next_frontier.size();
    result.counts.spheres.push_back(next_frontier.size());
    if (options.keep_elements) {
      result.levels.push_back(next_frontier);
    }
    if (options.verify_levels && p.symmetric()) {
      previous = std::move(current);
    }
    current = std::move(next);
    frontier = std::move(next_frontier);
  }
  return result;
}

PathCounts count_paths(const Presentation& p, int steps,
                       std::size_t element_cap) {
  if (steps < 0) {
    throw Error(ErrorKind::invalid_input, "steps must be non-negative");
  }
  if (steps * std::log2(static_cast<double>(p.alphabet_size())) >= 63.0) {
    throw Error(ErrorKind::invalid_input,
                "path counts for " + std::to_string(steps) +
                    " steps overflow 64-bit integers");
  }
  const auto letters = p.alphabet();
  PathCounts out;
  out.exact.emplace(ElementKey{}, 1);
  out.at_most = out.exact;
  for (int t = 0; t < steps; ++t) {
    std::unordered_map<ElementKey, std::uint64_t> next;
    next.reserve(out.exact.size() * 3);
    for (const auto& [g, c] : out.exact) {
      for (const auto& s : letters) {
        ElementKey h = g;
        p.append(h, s);
        next[std::move(h)] += c;
      }
      if (next.size() > element_cap) {
        throw BudgetExceeded("path-count table exceeded " +
                                 std::to_string(element_cap) + " entries",
                             static_cast<std::size_t>(t));
      }
    }
    out.exact = std::move(next);
    for (const auto& [g, c] : out.exact) {
      out.at_most[g] += c;
    }
    out.steps = t + 1;
  }
  return out;
}

double MoebiusPolynomial::evaluate(double t) const {
  long double acc = 0.0L;
  for (std::size_t j = coefficients.size(); j-- > 0;) {
    acc = acc * t + static_cast<long double>(coefficients[j]);
  }
  return static_cast<double>(acc);
}

MoebiusPolynomial moebius_polynomial(int k) {
  if (k < 1) {
    throw Error(ErrorKind::invalid_input, "rank must be at least 1");
  }
  MoebiusPolynomial m;
  m.rank = k;
  // C(k-j+1, j) counts j-subsets of {1..k} with pairwise gaps >= 2.
  for (int j = 0; 2 * j <= k + 1; ++j) {
    const int top = k - j + 1;
    Wide c = 1;
    for (int i = 0; i < j; ++i) {
      c = c * (top - i) / (i + 1);
    }
    if (c > std::numeric_limits<std::int64_t>::max()) {
      throw Error(ErrorKind::invalid_input,
                  "Moebius coefficients overflow for rank " +
                      std::to_string(k));
    }
    if (c == 0) {
      break;
    }
    const auto v = static_cast<std::int64_t>(c);
    m.coefficients.push_back(j % 2 == 0 ? v : -v);
  }
  return m;
}

SphereCounts semigroup_spheres_from_moebius(const MoebiusPolynomial& m,
                                            int depth) {
  if (depth < 0) {
    throw Error(ErrorKind::invalid_input, "depth must be non-negative");
  }
  SphereCounts out;
  out.presentation = "lfsemigroup:" + std::to_string(m.rank);
  out.spheres.push_back(1);
  for (int n = 1; n <= depth; ++n) {
    Wide acc = 0;
    for (std::size_t j = 1; j < m.coefficients.size() && j <= static_cast<std::size_t>(n); ++j) {
      acc -= static_cast<Wide>(m.coefficients[j]) *
             static_cast<Wide>(out.spheres[n - j]);
    }
    if (acc < 0 || acc > static_cast<Wide>(
                             std::numeric_limits<std::uint64_t>::max())) {
      throw Error(ErrorKind::invalid_input,
                  "sphere count overflow at n=" + std::to_string(n));
    }
    out.spheres.push_back(static_cast<std::uint64_t>(acc));
  }
  return out;
}

}  // namespace walklab
