#include "walklab/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "walklab/error.hpp"

namespace walklab {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::consistent_with_equality:
      return "consistent_with_equality";
    case Verdict::strictly_below:
      return "strictly_below";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::undefined_drift:
      return "undefined_drift";
  }
  return "unknown";
}

QRatio q_ratio(const EstimateCI& h, const EstimateCI& l,
               const VolumeEstimate& v) {
  if (!(l.value > 0.0) || l.lower() <= 0.0) {
    throw Error(ErrorKind::undefined_drift,
                "drift interval contains 0; q is undefined");
  }
  if (!(v.value > 0.0)) {
    throw Error(ErrorKind::degenerate_growth,
                "logarithmic volume is 0; q is undefined");
  }
  const double lv = l.value * v.value;
  QRatio q;
  q.value = h.value / lv;
  const double dh = h.standard_error / lv;
  const double dl = h.value * l.standard_error / (l.value * lv);
  q.sigma = std::sqrt(dh * dh + dl * dl);
  if (q.value > 1.0 + std::max(kEqualityBand, 3.0 * q.sigma)) {
    throw std::logic_error("q = " + std::to_string(q.value) +
                           " exceeds 1 beyond its uncertainty");
  }
  return q;
}

Verdict classify(const QRatio& q) {
  if (std::abs(1.0 - q.value) <= std::max(kEqualityBand, 2.0 * q.sigma)) {
    return Verdict::consistent_with_equality;
  }
  if (q.value + 2.0 * q.sigma < kStrictCeiling) {
    return Verdict::strictly_below;
  }
  return Verdict::inconclusive;
}

VolumeEstimate estimate_volume(const Presentation& p, int bfs_depth,
                               std::size_t element_cap) {
  switch (p.kind()) {
    case PresentationKind::free:
    case PresentationKind::free_abelian:
      return volume_closed_form(p);
    case PresentationKind::locally_free_semigroup:
      return volume_from_moebius(moebius_polynomial(p.rank()));
    case PresentationKind::locally_free_group:
      break;
  }
  EnumerationOptions opts;
  opts.element_cap = element_cap;
  opts.verify_levels = false;
  try {
    return volume_from_spheres(enumerate_ball(p, bfs_depth, opts).counts);
  } catch (const BudgetExceeded& e) {
    SphereCounts partial{p.spec(), e.partial()};
    return volume_from_spheres(partial);
  }
}

ConstantsReport fundamental_report(const Presentation& p,
                                   const SymmetricMeasure& mu,
                                   const ReportOptions& options) {
  ConstantsReport r;
  r.presentation = p.spec();
  r.volume = estimate_volume(p, options.bfs_depth, options.element_cap);
  r.drift = drift(p, mu, options.drift);
  r.entropy = entropy_rate(p, mu, options.entropy);

  const double h = r.h().value;
  const double l = r.l().value;
  const double v = r.volume.value;
  r.bound = l * v;
  const double sh = r.h().standard_error;
  const double sl = v * r.l().standard_error;
  const double sv = l * r.volume.spread;
  r.combined_sigma = std::sqrt(sh * sh + sl * sl + sv * sv);
  r.inequality_holds = h <= r.bound + 3.0 * r.combined_sigma;

  if (r.drift.zero_drift) {
    r.verdict = Verdict::undefined_drift;
    r.zero_entropy_consistent = h <= kZeroEntropyTolerance;
    return r;
  }
  try {
    r.q = q_ratio(r.h(), r.l(), r.volume);
    r.verdict = classify(*r.q);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::undefined_drift &&
        e.kind() != ErrorKind::degenerate_growth) {
      throw;
    }
    r.verdict = Verdict::undefined_drift;
    r.zero_entropy_consistent = h <= kZeroEntropyTolerance;
  }
  return r;
}

}  // namespace walklab
