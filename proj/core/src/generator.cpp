#include "walklab/generator.hpp"

#include <cctype>
#include <charconv>

#include "walklab/error.hpp"

namespace walklab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input:
      return "invalid_input";
    case ErrorKind::usage:
      return "usage";
    case ErrorKind::unsupported_operation:
      return "unsupported_operation";
    case ErrorKind::budget_exceeded:
      return "budget_exceeded";
    case ErrorKind::insufficient_depth:
      return "insufficient_depth";
    case ErrorKind::degenerate_growth:
      return "degenerate_growth";
    case ErrorKind::undefined_drift:
      return "undefined_drift";
    case ErrorKind::optimization_failed:
      return "optimization_failed";
    case ErrorKind::unreliable_comparison:
      return "unreliable_comparison";
  }
  return "unknown";
}

std::string to_string(Generator g, char prefix) {
  std::string out(1, prefix);
  out += std::to_string(g.index);
  if (!g.positive()) {
    out += "^-1";
  }
  return out;
}

std::string format_word(const Word& w, char prefix) {
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) {
      out += ' ';
    }
    out += to_string(g, prefix);
  }
  return out;
}

Generator parse_generator(std::string_view token) {
  auto fail = [&]() -> Error {
    return Error(ErrorKind::invalid_input,
                 "malformed generator token '" + std::string(token) + "'");
  };
  std::size_t i = 0;
  while (i < token.size() && std::isalpha(static_cast<unsigned char>(token[i]))) {
    ++i;
  }
  if (i == 0 || i == token.size()) {
    throw fail();
  }
  const std::size_t digits_begin = i;
  while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) {
    ++i;
  }
  int index = 0;
  auto [ptr, ec] =
      std::from_chars(token.data() + digits_begin, token.data() + i, index);
  if (ec != std::errc{} || ptr != token.data() + i || index < 1 ||
      index > kMaxRank) {
    throw fail();
  }
  Sign sign = Sign::positive;
  const auto rest = token.substr(i);
  if (rest == "^-1") {
    sign = Sign::negative;
  } else if (!rest.empty() && rest != "^1") {
    throw fail();
  }
  return {index, sign};
}

Word parse_word(std::string_view text) {
  Word out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    if (end > pos) {
      const auto token = text.substr(pos, end - pos);
      if (token != "e" && token != "1") {
        out.push_back(parse_generator(token));
      }
    }
    pos = end;
  }
  return out;
}

}  // namespace walklab
