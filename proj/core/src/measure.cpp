#include "walklab/measure.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "walklab/error.hpp"

namespace walklab {

namespace {

constexpr double kMassTolerance = 1e-12;

std::size_t code_count(const Presentation& p) {
  return 2 * static_cast<std::size_t>(p.rank());
}

}  // namespace

SymmetricMeasure::SymmetricMeasure(const Presentation& p,
                                   std::vector<double> weights)
    : weights_(std::move(weights)), presentation_(p.spec()), tag_(p.tag()) {
  if (weights_.size() != code_count(p)) {
    throw Error(ErrorKind::invalid_input,
                "measure needs one weight per letter code of " + p.spec());
  }
  double total = 0.0;
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    const double w = weights_[c];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::invalid_input, "measure weights must be >= 0");
    }
    if (w > 0.0 && !p.contains(Generator::from_code(static_cast<std::uint8_t>(c)))) {
      throw Error(ErrorKind::invalid_input,
                  "measure puts mass outside the alphabet of " + p.spec());
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::invalid_input,
                "measure weights sum to " + std::to_string(total));
  }
  if (p.symmetric()) {
    for (std::size_t c = 0; c < weights_.size(); c += 2) {
      if (std::abs(weights_[c] - weights_[c + 1]) > kMassTolerance) {
        throw Error(ErrorKind::invalid_input,
                    "group measures must satisfy mu(g) = mu(g^-1)");
      }
    }
  }
}

SymmetricMeasure SymmetricMeasure::uniform(const Presentation& p) {
  std::vector<double> w(code_count(p), 0.0);
  const double each = 1.0 / static_cast<double>(p.alphabet_size());
  for (const auto& g : p.alphabet()) {
    w[g.code()] = each;
  }
  return SymmetricMeasure(p, std::move(w));
}

SymmetricMeasure SymmetricMeasure::from_pair_weights(
    const Presentation& p, std::span<const double> weights) {
  if (weights.size() != static_cast<std::size_t>(p.rank())) {
    throw Error(ErrorKind::invalid_input,
                "expected " + std::to_string(p.rank()) + " pair weights");
  }
  std::vector<double> w(code_count(p), 0.0);
  for (int i = 0; i < p.rank(); ++i) {
    if (p.symmetric()) {
      w[2 * i] = 0.5 * weights[i];
      w[2 * i + 1] = 0.5 * weights[i];
    } else {
      w[2 * i] = weights[i];
    }
  }
  return SymmetricMeasure(p, std::move(w));
}

SymmetricMeasure SymmetricMeasure::from_letter_weights(
    const Presentation& p, std::vector<double> weights) {
  return SymmetricMeasure(p, std::move(weights));
}

std::vector<double> SymmetricMeasure::pair_weights() const {
  std::vector<double> out(weights_.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = weights_[2 * i] + weights_[2 * i + 1];
  }
  return out;
}

std::vector<std::pair<Generator, double>> SymmetricMeasure::support() const {
  std::vector<std::pair<Generator, double>> out;
  for (std::size_t c = 0; c < weights_.size(); ++c) {
    if (weights_[c] > 0.0) {
      out.emplace_back(Generator::from_code(static_cast<std::uint8_t>(c)),
                       weights_[c]);
    }
  }
  return out;
}

double total_variation(const SymmetricMeasure& a, const SymmetricMeasure& b) {
  if (a.tag() != b.tag()) {
    throw Error(ErrorKind::usage, "measures live on different systems");
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < a.weights().size(); ++c) {
    sum += std::abs(a.weights()[c] - b.weights()[c]);
  }
  return 0.5 * sum;
}

ParsedMeasure parse_measure(std::string_view text, const Presentation& p) {
  std::vector<double> raw(code_count(p), 0.0);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string token;
    std::string value;
    if (!(fields >> token)) {
      continue;
    }
    std::string extra;
    if (!(fields >> value) || (fields >> extra)) {
      throw Error(ErrorKind::invalid_input,
                  "measure line " + std::to_string(line_no) +
                      ": expected 'generator weight'");
    }
    const Generator g = parse_generator(token);
    if (!p.contains(g)) {
      throw Error(ErrorKind::invalid_input,
                  "measure line " + std::to_string(line_no) + ": " + token +
                      " is not a letter of " + p.spec());
    }
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
    if (ec != std::errc{} || ptr != value.data() + value.size() ||
        !std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::invalid_input,
                  "measure line " + std::to_string(line_no) +
                      ": bad weight '" + value + "'");
    }
    if (p.symmetric()) {
      const auto base = static_cast<std::size_t>(2 * (g.index - 1));
      raw[base] += 0.5 * w;
      raw[base + 1] += 0.5 * w;
    } else {
      raw[g.code()] += w;
    }
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::invalid_input,
                "measure weights total " + std::to_string(total) +
                    ", expected 1");
  }
  for (auto& w : raw) {
    w /= total;
  }
  return {SymmetricMeasure::from_letter_weights(p, std::move(raw)), total};
}

}  // namespace walklab
