#ifndef WALKLAB_NELDER_MEAD_HPP_
#define WALKLAB_NELDER_MEAD_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

namespace walklab {

struct NelderMeadOptions {
  double initial_step = 1.0;
  int max_evaluations = 40;
  // Stop once the simplex's objective values differ by less than this.
  double tolerance = 1e-6;
};

struct NelderMeadResult {
  std::vector<double> best;
  double value = 0.0;
  int evaluations = 0;
};

// Minimises f over R^d with the standard reflection / expansion /
// contraction / shrink moves (coefficients 1, 2, 1/2, 1/2). The objective is
// called at most max_evaluations times.
inline NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, const NelderMeadOptions& options = {}) {
  const std::size_t d = start.size();
  NelderMeadResult out;
  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> simplex{start};
  for (std::size_t i = 0; i < d; ++i) {
    auto x = start;
    x[i] += options.initial_step;
    simplex.push_back(std::move(x));
  }
  std::vector<double> values;
  for (const auto& x : simplex) {
    if (evaluations >= options.max_evaluations && !values.empty()) {
      values.push_back(values.front() + 1e300);
      continue;
    }
    values.push_back(eval(x));
  }

  std::vector<std::size_t> order(simplex.size());
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return values[a] < values[b];
    });
    std::vector<std::vector<double>> s;
    std::vector<double> v;
    for (auto i : order) {
      s.push_back(simplex[i]);
      v.push_back(values[i]);
    }
    simplex = std::move(s);
    values = std::move(v);
  };
  auto along = [&](const std::vector<double>& from,
                   const std::vector<double>& to, double t) {
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = from[i] + t * (to[i] - from[i]);
    }
    return x;
  };

  sort_simplex();
  while (evaluations < options.max_evaluations &&
         values.back() - values.front() > options.tolerance) {
    std::vector<double> centroid(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < d; ++i) {
        centroid[i] += simplex[j][i] / static_cast<double>(d);
      }
    }
    const auto& worst = simplex.back();
    auto reflected = along(centroid, worst, -1.0);
    const double fr = eval(reflected);
    if (fr < values.front() && evaluations < options.max_evaluations) {
      auto expanded = along(centroid, worst, -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex.back() = std::move(expanded);
        values.back() = fe;
      } else {
        simplex.back() = std::move(reflected);
        values.back() = fr;
      }
    } else if (fr < values[d - 1]) {  // better than the second worst
      simplex.back() = std::move(reflected);
      values.back() = fr;
    } else if (evaluations < options.max_evaluations) {
      const bool outside = fr < values.back();
      auto contracted = outside ? along(centroid, reflected, 0.5)
                                : along(centroid, worst, 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : values.back())) {
        simplex.back() = std::move(contracted);
        values.back() = fc;
      } else {
        for (std::size_t j = 1; j <= d; ++j) {
          if (evaluations >= options.max_evaluations) {
            break;
          }
          simplex[j] = along(simplex.front(), simplex[j], 0.5);
          values[j] = eval(simplex[j]);
        }
      }
    }
    sort_simplex();
  }
  out.best = simplex.front();
  out.value = values.front();
  out.evaluations = evaluations;
  return out;
}

}  // namespace walklab

#endif  // WALKLAB_NELDER_MEAD_HPP_
