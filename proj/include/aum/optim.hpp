#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aum/aum.hpp"
#include "aum/error_model.hpp"
#include "aum/matrix.hpp"

namespace aum {

enum class InitMode { zero, min_error, random, provided };

// What the learner minimizes. The logistic and pairwise objectives need a
// set built from binary labels and are only available for linear models.
enum class Objective { aum_count, aum_rate, logistic, pairs };

enum class SelectionRule { min_aum, max_auc, initial, last };

// {0, 1e-4, 1e-3, ..., 100}
std::vector<double> default_step_grid();

struct TrainConfig {
  Objective objective = Objective::aum_count;
  int max_iterations = 100;
  // Must contain 0; every entry finite and non-negative.
  std::vector<double> step_grid = default_step_grid();
  // After the grid, also try half and double the best positive step.
  bool refine_steps = true;
  InitMode init = InitMode::min_error;
  // Initial predictions (predictions mode) or weights (linear mode) for
  // InitMode::provided.
  std::vector<double> initial;
  std::uint64_t seed = 0;
  // When false only the final iteration is kept in the trace.
  bool record_trace = true;
  SelectionRule selection = SelectionRule::min_aum;
};

// Throws InvalidInput describing the first problem found.
void validate_config(const TrainConfig& config);

struct TraceRecord {
  int iteration = 0;
  // Objective value at this iteration (the AUM for the AUM objectives).
  double loss = 0.0;
  // AUM in the variant of the objective (count for the baselines).
  double aum = 0.0;
  double auc = 0.0;  // NaN when a capacity total is 0
  // Errors at the best intercept over total_fpp + total_fnp.
  double error_rate = 0.0;
  // Step taken from this iteration to the next (0 for the last record).
  double step = 0.0;
  // Intercept used by the update leaving this iteration; for the last
  // record, the best intercept of the final predictions.
  double intercept = 0.0;
  std::optional<double> val_aum;
  std::optional<double> val_auc;
};

struct FitResult {
  std::vector<TraceRecord> trace;
  // Predictions mode: the final prediction vector (final intercept applied).
  std::vector<double> predictions;
  // Linear mode: weights and best intercept at the last iteration.
  std::vector<double> weights;
  double intercept = 0.0;
  // Linear mode: model at selected_iteration.
  std::vector<double> selected_weights;
  double selected_intercept = 0.0;
  std::size_t selected_iteration = 0;
  SelectionRule rule = SelectionRule::last;
};

struct Intercept {
  double beta = 0.0;
  std::int64_t min_total_errors = 0;
};

// Constant shift of the predictions minimizing FPT + FNT. Among optimal
// intervals of shifts the widest (highest on equal width) is chosen, and its
// midpoint returned (lower+1 / upper-1 for unbounded intervals).
Intercept best_intercept(const ExampleSet& set, std::span<const double> predictions);

// Gradient descent directly on the n-vector of predictions.
FitResult optimize_predictions(const ExampleSet& set, const TrainConfig& config);

struct Dataset {
  const Matrix* features = nullptr;
  const ExampleSet* set = nullptr;
};

// Gradient descent on the weights of f(x) = w'x + beta. The objective and
// its gradient are taken at Xw; beta is the best intercept of Xw and only
// enters the error rate and the exported model.
FitResult optimize_linear(const Matrix& features, const ExampleSet& set, const TrainConfig& config,
                          std::optional<Dataset> validation = std::nullopt);

// First index achieving the minimum AUM / maximum AUC (NaN entries are
// skipped), 0 for initial, size-1 for last.
std::size_t select_iteration(std::span<const double> aum_values, std::span<const double> auc_values,
                             SelectionRule rule);

// Applies select_iteration to the validation columns of a trace, or to the
// training columns when the trace has no validation values.
std::size_t select_iteration(std::span<const TraceRecord> trace, SelectionRule rule);

std::string to_string(Objective objective);
std::string to_string(SelectionRule rule);
Objective parse_objective(const std::string& name);
SelectionRule parse_selection_rule(const std::string& name);
InitMode parse_init_mode(const std::string& name);

}  // namespace aum
