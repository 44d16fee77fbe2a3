#include <algorithm>
#include <cmath>

#include "walklab/enumeration.hpp"
#include "walklab/error.hpp"

namespace walklab {

const char* to_string(VolumeMethod method) noexcept {
  switch (method) {
    case VolumeMethod::closed_form:
      return "closed_form";
    case VolumeMethod::moebius_root:
      return "moebius_root";
    case VolumeMethod::sphere_ratio_fit:
      return "sphere_ratio_fit";
  }
  return "unknown";
}

VolumeEstimate volume_closed_form(const Presentation& p) {
  VolumeEstimate v;
  v.method = VolumeMethod::closed_form;
  switch (p.kind()) {
    case PresentationKind::free:
      v.value = std::log2(2.0 * p.rank() - 1.0);
      return v;
    case PresentationKind::free_abelian:
      v.value = 0.0;
      return v;
    default:
      throw Error(ErrorKind::usage,
                  "no closed-form volume for " + p.spec());
  }
}

VolumeEstimate volume_from_moebius(const MoebiusPolynomial& m) {
  if (m.coefficients.empty() || m.coefficients[0] != 1) {
    throw Error(ErrorKind::invalid_input, "Moebius polynomial must have mu(0)=1");
  }
  // mu(0) = 1 > 0; bracket the first sign change on a grid, then bisect.
  constexpr int kGrid = 4096;
  double lo = 0.0;
  double hi = -1.0;
  for (int i = 1; i <= kGrid; ++i) {
    const double t = static_cast<double>(i) / kGrid;
    const double f = m.evaluate(t);
    if (f <= 0.0) {
      hi = t;
      lo = static_cast<double>(i - 1) / kGrid;
      if (f == 0.0) {
        lo = t;
      }
      break;
    }
  }
  if (hi < 0.0) {
    throw Error(ErrorKind::degenerate_growth,
                "Moebius polynomial has no root in (0, 1]");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (m.evaluate(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  VolumeEstimate v;
  v.method = VolumeMethod::moebius_root;
  v.value = std::max(0.0, -std::log2(0.5 * (lo + hi)));
  return v;
}

VolumeEstimate volume_from_spheres(const SphereCounts& counts, int window) {
  const auto& s = counts.spheres;
  if (s.size() < 3) {
    throw Error(ErrorKind::insufficient_depth,
                "volume fit needs at least 3 sphere counts");
  }
  if (window < 1) {
    throw Error(ErrorKind::invalid_input, "fit window must be positive");
  }
  const int last = static_cast<int>(s.size()) - 2;  // ratio s[n+1]/s[n]
  const int first = std::max(last - window + 1, s.size() > 3 ? 1 : 0);
  double sum = 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int n = first; n <= last; ++n) {
    if (s[n] == 0 || s[n + 1] == 0) {
      throw Error(ErrorKind::degenerate_growth,
                  "sphere counts vanish inside the fit window");
    }
    const double r = std::log2(static_cast<double>(s[n + 1]) /
                               static_cast<double>(s[n]));
    sum += r;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  VolumeEstimate v;
  v.method = VolumeMethod::sphere_ratio_fit;
  v.value = std::max(0.0, sum / (last - first + 1));
  v.window_first = first;
  v.window_last = last + 1;
  v.spread = hi - lo;
  return v;
}

}  // namespace walklab
