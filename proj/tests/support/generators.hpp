#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "aum/error_model.hpp"

// Fixtures and random instance generators shared by the unit tests and the
// acceptance harness. Every value lies on a dyadic grid so thresholds,
// shifts and finite differences are exact in floating point.
namespace aum::testing {

// Labels (+1, -1); with predictions (-1, 1) the pair is ranked backwards.
std::vector<int> pair_labels();
ExampleSet pair_set();

// Two non-monotone examples whose ROC curve loops twice at (0, -0.5).
ExampleSet loop_set();
std::vector<double> loop_predictions();

// Non-convex FN function with a single FP rise.
ErrorFunction figure1_function();

enum class Style { binary, changepoint, mixed };

struct FuzzOptions {
  std::size_t min_n = 2;
  std::size_t max_n = 20;
  Style style = Style::mixed;
  // Changepoint examples get monotone FP/FN functions.
  bool monotone = false;
  // Grid of predictions; a coarse grid gives many tied thresholds.
  double prediction_step = 0.125;
};

struct Instance {
  ExampleSet set;
  std::vector<double> predictions;
  std::optional<std::vector<int>> labels;  // binary style only
};

// Valid set with both capacity totals at least 1 and at most 5 breakpoints
// per example.
Instance random_instance(std::mt19937_64& rng, const FuzzOptions& options = {});

// n labels in {-1, 1} with both classes present.
std::vector<int> random_labels(std::mt19937_64& rng, std::size_t n);

// Random error function on the 1/4 grid of [-4, 4].
ErrorFunction random_error_function(std::mt19937_64& rng, bool monotone);

std::vector<double> random_predictions(std::mt19937_64& rng, std::size_t n, double step, double range = 3.0);

}  // namespace aum::testing
