#include "walklab/presentation.hpp"

#include <algorithm>
#include <charconv>

#include "walklab/error.hpp"

namespace walklab {

const char* to_string(PresentationKind kind) noexcept {
  switch (kind) {
    case PresentationKind::free:
      return "free";
    case PresentationKind::free_abelian:
      return "abelian";
    case PresentationKind::locally_free_group:
      return "lfgroup";
    case PresentationKind::locally_free_semigroup:
      return "lfsemigroup";
  }
  return "unknown";
}

Word NormalForm::word() const {
  Word out;
  out.reserve(key_.size());
  for (std::size_t i = 0; i < key_.size(); ++i) {
    out.push_back(letter(i));
  }
  return out;
}

Presentation::Presentation(PresentationKind kind, int rank, int rank_cap)
    : kind_(kind), rank_(rank) {
  const int cap = std::min(rank_cap, kMaxRank);
  if (rank < 1 || rank > cap) {
    throw Error(ErrorKind::invalid_input,
                "rank " + std::to_string(rank) + " outside 1.." +
                    std::to_string(cap));
  }
}

Presentation Presentation::parse(std::string_view spec, int rank_cap) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::invalid_input,
                "presentation spec '" + std::string(spec) +
                    "' must look like kind:k");
  }
  const auto name = spec.substr(0, colon);
  const auto digits = spec.substr(colon + 1);
  int rank = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), rank);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::invalid_input,
                "bad rank in presentation spec '" + std::string(spec) + "'");
  }
  PresentationKind kind;
  if (name == "free") {
    kind = PresentationKind::free;
  } else if (name == "abelian" || name == "free_abelian") {
    kind = PresentationKind::free_abelian;
  } else if (name == "lfgroup") {
    kind = PresentationKind::locally_free_group;
  } else if (name == "lfsemigroup") {
    kind = PresentationKind::locally_free_semigroup;
  } else {
    throw Error(ErrorKind::invalid_input,
                "unknown presentation kind '" + std::string(name) + "'");
  }
  return Presentation(kind, rank, rank_cap);
}

std::string Presentation::spec() const {
  return std::string(to_string(kind_)) + ":" + std::to_string(rank_);
}

char Presentation::letter_prefix() const noexcept {
  switch (kind_) {
    case PresentationKind::free:
    case PresentationKind::free_abelian:
      return 'x';
    default:
      return 'z';
  }
}

std::uint16_t Presentation::tag() const noexcept {
  return static_cast<std::uint16_t>(((static_cast<int>(kind_) + 1) << 8) |
                                    (rank_ & 0xff));
}

std::vector<Generator> Presentation::alphabet() const {
  std::vector<Generator> out;
  out.reserve(alphabet_size());
  for (int i = 1; i <= rank_; ++i) {
    out.push_back({i, Sign::positive});
    if (symmetric()) {
      out.push_back({i, Sign::negative});
    }
  }
  return out;
}

bool Presentation::contains(Generator g) const noexcept {
  return g.index >= 1 && g.index <= rank_ && (symmetric() || g.positive());
}

void Presentation::append(ElementKey& key, std::uint8_t code) const {
  if (symmetric()) {
    const std::uint8_t inverse = code ^ 1U;
    for (std::size_t i = key.size(); i-- > 0;) {
      const auto x = static_cast<std::uint8_t>(key[i]);
      if (x == inverse) {
        // Everything to the right commutes with the cancelled letter, and
        // deleting a letter cannot create a new out-of-order pair there.
        key.erase(i, 1);
        return;
      }
      if (!commute_codes(x, code)) {
        break;
      }
    }
  }
  // Slide left past larger commuting letters. On the chain commutation graph
  // this lands on the lexicographically least arrangement.
  std::size_t pos = key.size();
  while (pos > 0) {
    const auto x = static_cast<std::uint8_t>(key[pos - 1]);
    if (x > code && commute_codes(x, code)) {
      --pos;
    } else {
      break;
    }
  }
  key.insert(pos, 1, static_cast<char>(code));
}

void Presentation::append(ElementKey& key, const ElementKey& other) const {
  for (const char c : other) {
    append(key, static_cast<std::uint8_t>(c));
  }
}

NormalForm Presentation::element(Generator g) const {
  return normalize(Word{g});
}

NormalForm Presentation::normalize(const Word& w) const {
  ElementKey key;
  key.reserve(w.size());
  for (const auto& g : w) {
    if (!contains(g)) {
      throw Error(ErrorKind::invalid_input,
                  "letter " + to_string(g, letter_prefix()) +
                      " is not in the alphabet of " + spec());
    }
    append(key, g.code());
  }
  return {std::move(key), tag()};
}

void Presentation::check_same(const NormalForm& a) const {
  if (a.tag() != tag()) {
    throw Error(ErrorKind::usage,
                "normal form does not belong to presentation " + spec());
  }
}

NormalForm Presentation::multiply(const NormalForm& a,
                                  const NormalForm& b) const {
  check_same(a);
  check_same(b);
  ElementKey key = a.key();
  append(key, b.key());
  return {std::move(key), tag()};
}

NormalForm Presentation::invert(const NormalForm& a) const {
  if (!symmetric()) {
    throw Error(ErrorKind::unsupported_operation,
                "inversion is not defined in the semigroup " + spec());
  }
  check_same(a);
  ElementKey key;
  key.reserve(a.length());
  for (std::size_t i = a.length(); i-- > 0;) {
    append(key, static_cast<std::uint8_t>(a.key()[i]) ^ 1U);
  }
  return {std::move(key), tag()};
}

std::string Presentation::format(const NormalForm& a) const {
  return format_word(a.word(), letter_prefix());
}

}  // namespace walklab
