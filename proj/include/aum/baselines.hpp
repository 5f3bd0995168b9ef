#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aum/error_model.hpp"

namespace aum {

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

// w_i = 1 / N_{y_i}, so each class carries total weight 1.
std::vector<double> class_weights(std::span<const int> labels);

// sum_i w_i log(1 + exp(-y_i yhat_i)). Both classes must be present.
LossAndGradient weighted_logistic(std::span<const int> labels, std::span<const double> predictions);

// sum over (negative i, positive j) of [margin - yhat_j + yhat_i]_+^2, by the
// naive double loop over all pairs.
LossAndGradient pairwise_squared_hinge(std::span<const int> labels,
                                       std::span<const double> predictions, double margin = 1.0);

// Labels of a set built from binary labels (each example a single breakpoint
// at 0 with the positive or negative deltas), std::nullopt otherwise.
std::optional<std::vector<int>> binary_labels(const ExampleSet& set);

}  // namespace aum
