#ifndef WALKLAB_GENERATOR_HPP_
#define WALKLAB_GENERATOR_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace walklab {

// Hard storage limit: a letter is stored in one byte as 2*(index-1)+sign.
inline constexpr int kMaxRank = 128;
inline constexpr int kDefaultRankCap = 64;

enum class Sign : std::uint8_t { positive = 0, negative = 1 };

// One symbol x_i or x_i^{-1}. Ordering is by index, then positive before
// negative, which is also the order of the byte codes.
struct Generator {
  int index = 1;
  Sign sign = Sign::positive;

  constexpr Generator inverse() const noexcept {
    return {index, sign == Sign::positive ? Sign::negative : Sign::positive};
  }
  constexpr bool positive() const noexcept { return sign == Sign::positive; }

  constexpr std::uint8_t code() const noexcept {
    return static_cast<std::uint8_t>(2 * (index - 1) +
                                     static_cast<int>(sign));
  }
  static constexpr Generator from_code(std::uint8_t code) noexcept {
    return {code / 2 + 1, (code & 1) ? Sign::negative : Sign::positive};
  }

  friend constexpr auto operator<=>(const Generator&,
                                    const Generator&) = default;
};

using Word = std::vector<Generator>;

// "z3", "x1^-1". The prefix is cosmetic.
std::string to_string(Generator g, char prefix = 'z');
std::string format_word(const Word& w, char prefix = 'z');

// Parses a single token: one or more letters, a positive index, and an
// optional "^-1" / "^1" exponent. Throws Error(invalid_input).
Generator parse_generator(std::string_view token);

// Space separated tokens; "e", "1" and the empty string denote the empty word.
Word parse_word(std::string_view text);

}  // namespace walklab

#endif  // WALKLAB_GENERATOR_HPP_
