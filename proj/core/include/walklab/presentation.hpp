#ifndef WALKLAB_PRESENTATION_HPP_
#define WALKLAB_PRESENTATION_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "walklab/generator.hpp"

namespace walklab {

// Raw canonical letter sequence, one byte per letter (Generator::code()).
// Hot loops (BFS, convolution, walks) operate on keys directly; NormalForm is
// the tagged value type handed to users.
using ElementKey = std::string;

enum class PresentationKind {
  free,
  free_abelian,
  locally_free_group,
  locally_free_semigroup,
};

const char* to_string(PresentationKind kind) noexcept;

class NormalForm {
 public:
  NormalForm() = default;

  std::size_t length() const noexcept { return key_.size(); }
  bool is_identity() const noexcept { return key_.empty(); }
  const ElementKey& key() const noexcept { return key_; }
  std::uint16_t tag() const noexcept { return tag_; }

  Word word() const;
  Generator letter(std::size_t i) const {
    return Generator::from_code(static_cast<std::uint8_t>(key_[i]));
  }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm&, const NormalForm&) = default;

 private:
  friend class Presentation;
  NormalForm(ElementKey key, std::uint16_t tag)
      : key_(std::move(key)), tag_(tag) {}

  ElementKey key_;
  std::uint16_t tag_ = 0;
};

inline std::size_t length(const NormalForm& a) noexcept { return a.length(); }

// One of the built-in presentations. All of them are handled by the same
// rewriting scheme: a word is reduced by shuffle-cancellation (deleting g^-1
// ... g when every letter in between commutes with g) and then put in the
// lexicographically least order reachable by swapping adjacent commuting
// letters. Free groups never commute distinct letters; free abelian groups
// commute any two letters of distinct index; the locally free kinds commute
// z_i and z_j iff |i - j| >= 2.
class Presentation {
 public:
  Presentation(PresentationKind kind, int rank,
               int rank_cap = kDefaultRankCap);

  // "free:k", "abelian:k", "lfgroup:k", "lfsemigroup:k".
  static Presentation parse(std::string_view spec,
                            int rank_cap = kDefaultRankCap);

  PresentationKind kind() const noexcept { return kind_; }
  int rank() const noexcept { return rank_; }
  bool symmetric() const noexcept {
    return kind_ != PresentationKind::locally_free_semigroup;
  }
  std::string spec() const;
  char letter_prefix() const noexcept;
  std::uint16_t tag() const noexcept;

  // All 2k letters (k for the semigroup), in code order.
  std::vector<Generator> alphabet() const;
  std::size_t alphabet_size() const noexcept {
    return symmetric() ? 2 * static_cast<std::size_t>(rank_)
                       : static_cast<std::size_t>(rank_);
  }
  bool contains(Generator g) const noexcept;
  bool commute(Generator a, Generator b) const noexcept {
    return commute_codes(a.code(), b.code());
  }

  NormalForm identity() const { return {ElementKey{}, tag()}; }
  NormalForm element(Generator g) const;
  NormalForm normalize(const Word& w) const;
  NormalForm multiply(const NormalForm& a, const NormalForm& b) const;
  NormalForm invert(const NormalForm& a) const;
  NormalForm parse_element(std::string_view text) const {
    return normalize(parse_word(text));
  }
  std::string format(const NormalForm& a) const;

  // Right-multiplies a canonical key by one letter, keeping it canonical.
  // The letter must belong to the alphabet; no validation is done here.
  void append(ElementKey& key, std::uint8_t code) const;
  void append(ElementKey& key, Generator g) const { append(key, g.code()); }
  // Right-multiplies a canonical key by another canonical key.
  void append(ElementKey& key, const ElementKey& other) const;

  // Wraps a key produced by append() into a NormalForm of this presentation.
  NormalForm adopt(ElementKey key) const { return {std::move(key), tag()}; }

  bool commute_codes(std::uint8_t a, std::uint8_t b) const noexcept {
    const int ia = a >> 1;
    const int ib = b >> 1;
    switch (kind_) {
      case PresentationKind::free:
        return false;
      case PresentationKind::free_abelian:
        return ia != ib;
      default:
        return ia - ib >= 2 || ib - ia >= 2;
    }
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.kind_ == b.kind_ && a.rank_ == b.rank_;
  }

 private:
  void check_same(const NormalForm& a) const;

  PresentationKind kind_;
  int rank_;
};

}  // namespace walklab

#endif  // WALKLAB_PRESENTATION_HPP_
