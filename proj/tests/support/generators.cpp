#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace aum::testing {

std::vector<int> pair_labels() { return {1, -1}; }

ExampleSet pair_set() { return from_binary_labels(pair_labels()); }

ExampleSet loop_set() {
  std::vector<ErrorFunction> e;
  e.emplace_back(std::vector<Step>{{0, 0, -1}, {1, 0, 1}, {2, 0, -1}}, 0, 1);
  e.emplace_back(std::vector<Step>{{0, 1, 0}, {1, -1, 0}, {2, 1, 0}}, 1, 0);
  return ExampleSet(std::move(e));
}

std::vector<double> loop_predictions() { return {0.0, -0.5}; }

ErrorFunction figure1_function() {
  return ErrorFunction({{-1.929, 0, -1}, {-1.388, 0, 1}, {-1.136, 0, -1}, {3.001, 1, 0}}, 1, 1);
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> labels(n);
  do {
    for (auto& l : labels) l = uniform_int(rng, 0, 1) ? 1 : -1;
  } while (std::count(labels.begin(), labels.end(), 1) == 0 ||
           std::count(labels.begin(), labels.end(), -1) == 0);
  return labels;
}

ErrorFunction random_error_function(std::mt19937_64& rng, bool monotone) {
  const int k = uniform_int(rng, 1, 5);
  std::vector<int> grid(33);
  std::iota(grid.begin(), grid.end(), -16);
  std::shuffle(grid.begin(), grid.end(), rng);
  std::vector<int> ticks(grid.begin(), grid.begin() + k);
  std::sort(ticks.begin(), ticks.end());

  int fpp = 0;
  int fnp = 0;
  while (fpp + fnp == 0) {
    fpp = uniform_int(rng, 0, 3);
    fnp = uniform_int(rng, 0, 3);
  }
  std::vector<int> fp(k + 1);
  std::vector<int> fn(k + 1);
  for (int j = 1; j < k; ++j) {
    fp[j] = uniform_int(rng, 0, fpp);
    fn[j] = uniform_int(rng, 0, fnp);
  }
  if (monotone) {
    std::sort(fp.begin() + 1, fp.begin() + k);
    std::sort(fn.begin() + 1, fn.begin() + k, std::greater<>());
  }
  fp[0] = 0;
  fp[k] = fpp;
  fn[0] = fnp;
  fn[k] = 0;

  std::vector<Step> steps;
  for (int j = 1; j <= k; ++j) {
    const int dfp = fp[j] - fp[j - 1];
    const int dfn = fn[j] - fn[j - 1];
    if (dfp != 0 || dfn != 0) steps.push_back({ticks[j - 1] / 4.0, dfp, dfn});
  }
  return ErrorFunction(std::move(steps), fpp, fnp);
}

std::vector<double> random_predictions(std::mt19937_64& rng, std::size_t n, double step, double range) {
  const int m = static_cast<int>(range / step);
  std::vector<double> y(n);
  for (auto& v : y) v = uniform_int(rng, -m, m) * step;
  return y;
}

Instance random_instance(std::mt19937_64& rng, const FuzzOptions& options) {
  for (;;) {
    const auto n = static_cast<std::size_t>(
        uniform_int(rng, static_cast<int>(options.min_n), static_cast<int>(options.max_n)));
    Style style = options.style;
    if (style == Style::mixed) style = uniform_int(rng, 0, 1) ? Style::binary : Style::changepoint;
    auto y = random_predictions(rng, n, options.prediction_step);
    if (style == Style::binary) {
      auto labels = random_labels(rng, n);
      return Instance{from_binary_labels(labels), std::move(y), std::move(labels)};
    }
    std::vector<ErrorFunction> examples;
    for (std::size_t i = 0; i < n; ++i) {
      if (uniform_int(rng, 0, 3) == 0) {
        const int label = uniform_int(rng, 0, 1) ? 1 : -1;
        examples.push_back(label == 1 ? ErrorFunction({{0, 0, -1}}, 0, 1) : ErrorFunction({{0, 1, 0}}, 1, 0));
      } else {
        examples.push_back(random_error_function(rng, options.monotone));
      }
    }
    ExampleSet set(std::move(examples));
    if (set.total_fpp() >= 1 && set.total_fnp() >= 1) return Instance{std::move(set), std::move(y), std::nullopt};
  }
}

}  // namespace aum::testing
