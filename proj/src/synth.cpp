#include "aum/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace aum::synth {

namespace {

double on_grid(double x, double resolution) { return std::round(x / resolution) * resolution; }

}  // namespace

io::BinaryData binary_gaussian(std::size_t n, double positive_fraction, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("binary-gaussian needs n >= 2");
  if (!(positive_fraction > 0.0 && positive_fraction < 1.0)) {
    throw InvalidInput("positive fraction must be in (0, 1)");
  }
  auto positives = static_cast<std::size_t>(std::llround(static_cast<double>(n) * positive_fraction));
  positives = std::clamp<std::size_t>(positives, 1, n - 1);

  std::mt19937_64 rng(seed);
  std::vector<int> labels(n, -1);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives), 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  std::normal_distribution<double> normal(0.0, 1.0);
  io::BinaryData data;
  data.features = Matrix(n, 2);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < 2; ++c) data.features(r, c) = labels[r] + normal(rng);
  }
  data.labels = std::move(labels);
  return data;
}

ChangepointData changepoint_loop(std::size_t n, double loop_share, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("changepoint-loop needs n >= 2");
  if (!(loop_share >= 0.0 && loop_share <= 1.0)) throw InvalidInput("loop share must be in [0, 1]");
  const auto loops = static_cast<std::size_t>(std::llround(static_cast<double>(n) * loop_share));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-3.0, 3.0);
  std::uniform_int_distribution<int> spacing_steps(2, 8);
  std::uniform_int_distribution<int> kind(0, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr double grid = 1.0 / 16.0;

  std::vector<ErrorFunction> examples;
  std::vector<double> predictions;
  examples.reserve(n);
  double offset = 0.0, spacing = 1.0;
  for (std::size_t k = 0; k < loops; ++k) {
    if (k % 2 == 0 && k > 0) {
      offset = on_grid(uniform(rng), grid);
      spacing = spacing_steps(rng) * 0.25;
    }
    if (k % 2 == 0) {
      examples.emplace_back(std::vector<Step>{{offset, 0, -1}, {offset + spacing, 0, 1},
                                              {offset + 2 * spacing, 0, -1}},
                            0, 1);
      predictions.push_back(offset);
    } else {
      examples.emplace_back(std::vector<Step>{{offset, 1, 0}, {offset + spacing, -1, 0},
                                              {offset + 2 * spacing, 1, 0}},
                            1, 0);
      predictions.push_back(offset - spacing / 2.0);
    }
  }
  for (std::size_t k = loops; k < n; ++k) {
    const double center = on_grid(1.5 * normal(rng), grid);
    switch (kind(rng)) {
      case 0:
        examples.emplace_back(std::vector<Step>{{center, 0, -1}}, 0, 1);
        break;
      case 1:
        examples.emplace_back(std::vector<Step>{{center, 1, 0}}, 1, 0);
        break;
      default: {
        const double drop = on_grid(center - 0.5 + 0.75 * normal(rng), grid);
        const double rise = on_grid(center + 0.5 + 0.75 * normal(rng), grid);
        examples.emplace_back(std::vector<Step>{{drop, 0, -1}, {rise, 1, 0}}, 1, 1);
        break;
      }
    }
    predictions.push_back(examples.back().min_error_prediction());
  }

  Matrix features(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    features(i, 0) = on_grid(examples[i].min_error_prediction() + 0.5 * normal(rng), 1.0 / 1024);
    features(i, 1) = on_grid(normal(rng), 1.0 / 1024);
  }
  return {ExampleSet(std::move(examples)), std::move(predictions), std::move(features)};
}

}  // namespace aum::synth
