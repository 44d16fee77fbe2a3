#ifndef WALKLAB_TESTS_ORACLE_HPP_
#define WALKLAB_TESTS_ORACLE_HPP_

// Brute-force reference implementations used to check the library. None of
// these call into walklab beyond converting letters at the boundary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "walklab/generator.hpp"
#include "walklab/presentation.hpp"

namespace oracle {

// (index, inverted); std::pair ordering matches the library's letter order.
using Letter = std::pair<int, int>;
using Word = std::vector<Letter>;

struct Rules {
  walklab::PresentationKind kind;
  int rank;

  bool symmetric() const {
    return kind != walklab::PresentationKind::locally_free_semigroup;
  }
  bool commute(const Letter& a, const Letter& b) const {
    if (a.first == b.first) {
      return false;
    }
    switch (kind) {
      case walklab::PresentationKind::free:
        return false;
      case walklab::PresentationKind::free_abelian:
        return true;
      default:
        return std::abs(a.first - b.first) >= 2;
    }
  }
  std::vector<Letter> alphabet() const {
    std::vector<Letter> out;
    for (int i = 1; i <= rank; ++i) {
      out.push_back({i, 0});
      if (symmetric()) {
        out.push_back({i, 1});
      }
    }
    return out;
  }
};

inline bool cancels(const Letter& a, const Letter& b) {
  return a.first == b.first && a.second != b.second;
}

// Every word reachable from w by swapping adjacent commuting letters and, in
// groups, deleting adjacent inverse pairs.
inline std::set<Word> closure(const Rules& r, const Word& w) {
  std::set<Word> seen{w};
  std::vector<Word> stack{w};
  while (!stack.empty()) {
    Word u = std::move(stack.back());
    stack.pop_back();
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
      if (r.commute(u[i], u[i + 1])) {
        Word v = u;
        std::swap(v[i], v[i + 1]);
        if (seen.insert(v).second) {
          stack.push_back(std::move(v));
        }
      }
      if (r.symmetric() && cancels(u[i], u[i + 1])) {
        Word v;
        v.insert(v.end(), u.begin(), u.begin() + static_cast<long>(i));
        v.insert(v.end(), u.begin() + static_cast<long>(i) + 2, u.end());
        if (seen.insert(v).second) {
          stack.push_back(std::move(v));
        }
      }
    }
  }
  return seen;
}

// Shortest word in the closure, lexicographically least among those.
inline Word canonical(const Rules& r, const Word& w) {
  const auto all = closure(r, w);
  const Word* best = nullptr;
  for (const auto& u : all) {
    if (!best || u.size() < best->size() ||
        (u.size() == best->size() && u < *best)) {
      best = &u;
    }
  }
  return *best;
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) {
    l.second ^= 1;
  }
  return out;
}

inline Word concat(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline walklab::Word to_library(const Word& w) {
  walklab::Word out;
  for (const auto& [i, s] : w) {
    out.push_back({i, s ? walklab::Sign::negative : walklab::Sign::positive});
  }
  return out;
}

inline Word from_library(const walklab::Word& w) {
  Word out;
  for (const auto& g : w) {
    out.push_back({g.index, g.positive() ? 0 : 1});
  }
  return out;
}

// Visits every word of length <= max_len (depth first) together with its
// canonical form, computed by extending the parent's canonical form.
template <class Visit>
void for_each_word(const Rules& r, int max_len, Visit&& visit) {
  const auto letters = r.alphabet();
  Word word;
  auto recurse = [&](auto&& self, const Word& canon) -> void {
    visit(word, canon);
    if (static_cast<int>(word.size()) == max_len) {
      return;
    }
    for (const auto& l : letters) {
      word.push_back(l);
      Word extended = canon;
      extended.push_back(l);
      self(self, canonical(r, extended));
      word.pop_back();
    }
  };
  recurse(recurse, Word{});
}

// Number of j-subsets of {1..k} whose members pairwise differ by >= 2, signed.
inline std::vector<long long> moebius_by_subsets(int k) {
  std::vector<long long> coeff(static_cast<std::size_t>(k) + 1, 0);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    if (mask & (mask >> 1)) {
      continue;
    }
    const int j = __builtin_popcount(mask);
    coeff[static_cast<std::size_t>(j)] += (j % 2 == 0) ? 1 : -1;
  }
  while (coeff.size() > 1 && coeff.back() == 0) {
    coeff.pop_back();
  }
  return coeff;
}

// Exact distribution of the product of n i.i.d. letters, by enumerating all
// |S|^n letter sequences.
inline std::map<Word, double> brute_convolution(
    const Rules& r, const std::vector<std::pair<Letter, double>>& mu, int n) {
  std::map<Word, double> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    Word w;
    double p = 1.0;
    for (const auto i : idx) {
      w.push_back(mu[i].first);
      p *= mu[i].second;
    }
    if (p > 0.0) {
      out[canonical(r, w)] += p;
    }
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == mu.size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) {
      break;
    }
  }
  return out;
}

inline double shannon_bits(const std::map<Word, double>& d) {
  double h = 0.0;
  for (const auto& [w, p] : d) {
    if (p > 0.0) {
      h -= p * std::log2(p);
    }
  }
  return h;
}

}  // namespace oracle

#endif  // WALKLAB_TESTS_ORACLE_HPP_
