#include "aum/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "aum/baselines.hpp"
#include "aum/roc.hpp"

namespace aum {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

Variant variant_of(Objective objective) {
  return objective == Objective::aum_rate ? Variant::rate : Variant::count;
}

bool is_aum(Objective objective) {
  return objective == Objective::aum_count || objective == Objective::aum_rate;
}

double auc_or_nan(const ExampleSet& set, std::span<const double> predictions) {
  if (set.total_fpp() < 1 || set.total_fnp() < 1) return nan_value;
  return auc(roc_curve(set, predictions));
}

double error_rate(const ExampleSet& set, const Intercept& beta) {
  const auto possible = set.total_fpp() + set.total_fnp();
  if (possible == 0) return nan_value;
  return static_cast<double>(beta.min_total_errors) / static_cast<double>(possible);
}

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

std::vector<double> step_along(std::span<const double> x, std::span<const double> direction,
                               double step) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - step * direction[i];
  return out;
}

struct Candidate {
  double step;
  double loss;
};

// Smallest loss wins. On ties a positive step is preferred over 0 so that a
// flat direction is still followed; among positive steps the smallest wins.
template <typename LossFn>
Candidate line_search(const TrainConfig& config, LossFn&& loss_at) {
  std::vector<double> steps = config.step_grid;
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  auto better = [](const Candidate& c, const Candidate& best) {
    if (c.loss < best.loss) return true;
    if (c.loss == best.loss) {
      if (best.step == 0.0) return c.step > 0.0;
      return c.step > 0.0 && c.step < best.step;
    }
    return false;
  };
  Candidate best{0.0, std::numeric_limits<double>::infinity()};
  bool first = true;
  for (double step : steps) {
    Candidate c{step, loss_at(step)};
    if (first || better(c, best)) best = c;
    first = false;
  }
  if (config.refine_steps && best.step > 0.0) {
    const double base = best.step;
    for (double step : {base / 2.0, base * 2.0}) {
      if (std::binary_search(steps.begin(), steps.end(), step)) continue;
      Candidate c{step, loss_at(step)};
      if (better(c, best)) best = c;
    }
  }
  return best;
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = normal(rng);
  return out;
}

// Objective value and gradient with respect to the predictions.
struct Evaluator {
  const ExampleSet& set;
  Objective objective;
  std::vector<int> labels;

  Evaluator(const ExampleSet& s, Objective o) : set(s), objective(o) {
    if (!is_aum(o)) {
      auto l = binary_labels(s);
      if (!l) throw InvalidInput(to_string(o) + " objective needs binary-label data");
      labels = std::move(*l);
    }
  }

  double loss(std::span<const double> predictions) const {
    switch (objective) {
      case Objective::aum_count:
      case Objective::aum_rate:
        return aum_only(set, predictions, variant_of(objective));
      case Objective::logistic:
        return weighted_logistic(labels, predictions).loss;
      case Objective::pairs:
        return pairwise_squared_hinge(labels, predictions).loss;
    }
    return nan_value;
  }

  // Returns the loss, writes the gradient and the AUM in the objective's variant.
  double loss_and_gradient(std::span<const double> predictions, std::vector<double>& gradient,
                           double& aum_value) const {
    if (is_aum(objective)) {
      auto res = compute_aum(set, predictions, variant_of(objective));
      gradient = mean_gradient(res.derivs);
      aum_value = res.aum;
      return res.aum;
    }
    auto lg = objective == Objective::logistic ? weighted_logistic(labels, predictions)
                                               : pairwise_squared_hinge(labels, predictions);
    gradient = std::move(lg.gradient);
    aum_value = aum_only(set, predictions, Variant::count);
    return lg.loss;
  }
};

void keep(FitResult& fit, const TrainConfig& config, TraceRecord record) {
  if (!config.record_trace) fit.trace.clear();
  fit.trace.push_back(std::move(record));
}

}  // namespace

std::vector<double> default_step_grid() { return {0.0, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0}; }

void validate_config(const TrainConfig& config) {
  if (config.max_iterations < 0) throw InvalidInput("max_iterations must be non-negative");
  if (config.step_grid.empty()) throw InvalidInput("step grid is empty");
  bool has_zero = false;
  for (double s : config.step_grid) {
    if (!std::isfinite(s) || s < 0) throw InvalidInput("step sizes must be finite and >= 0");
    has_zero = has_zero || s == 0.0;
  }
  if (!has_zero) throw InvalidInput("step grid must contain 0");
}

Intercept best_intercept(const ExampleSet& set, std::span<const double> predictions) {
  set.require_valid();
  check_predictions(set, predictions);
  const auto& bps = set.breakpoints();
  struct Entry {
    double threshold;
    int delta_fp;
    int delta_fn;
  };
  std::vector<Entry> entries(bps.size());
  std::int64_t fp = 0, fn = 0;
  for (std::size_t b = 0; b < bps.size(); ++b) {
    entries[b] = {bps[b].value - predictions[bps[b].example], bps[b].delta_fp, bps[b].delta_fn};
    fn -= bps[b].delta_fn;
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.threshold < b.threshold; });
  std::vector<double> bounds;
  std::vector<std::int64_t> costs{fp + fn};
  for (std::size_t r = 0; r < entries.size();) {
    const double t = entries[r].threshold;
    while (r < entries.size() && entries[r].threshold == t) {
      fp += entries[r].delta_fp;
      fn += entries[r].delta_fn;
      ++r;
    }
    bounds.push_back(t);
    costs.push_back(fp + fn);
  }
  auto [beta, errors] = detail::pick_min_interval(bounds, costs);
  return {beta, errors};
}

FitResult optimize_predictions(const ExampleSet& set, const TrainConfig& config) {
  validate_config(config);
  set.require_valid();
  if (!is_aum(config.objective)) {
    throw InvalidInput("predictions mode supports the AUM objectives only");
  }
  const Variant variant = variant_of(config.objective);
  const std::size_t n = set.size();

  std::vector<double> pred;
  switch (config.init) {
    case InitMode::zero:
      pred.assign(n, 0.0);
      break;
    case InitMode::min_error:
      pred.resize(n);
      for (std::size_t i = 0; i < n; ++i) pred[i] = set[i].min_error_prediction();
      break;
    case InitMode::random:
      pred = random_vector(n, config.seed);
      break;
    case InitMode::provided:
      pred = config.initial;
      break;
  }
  check_predictions(set, pred);

  FitResult fit;
  fit.rule = SelectionRule::last;
  for (int j = 0;; ++j) {
    const auto res = compute_aum(set, pred, variant);
    const auto beta_now = best_intercept(set, pred);
    TraceRecord rec;
    rec.iteration = j;
    rec.loss = rec.aum = res.aum;
    rec.auc = auc_or_nan(set, pred);
    rec.error_rate = error_rate(set, beta_now);
    rec.intercept = beta_now.beta;

    const auto direction = mean_gradient(res.derivs);
    bool stop = j >= config.max_iterations || all_zero(direction);
    Candidate chosen{0.0, res.aum};
    if (!stop) {
      chosen = line_search(config, [&](double step) {
        return step == 0.0 ? res.aum : aum_only(set, step_along(pred, direction, step), variant);
      });
      stop = chosen.step == 0.0;
    }
    if (stop) {
      keep(fit, config, rec);
      break;
    }

    auto next = step_along(pred, direction, chosen.step);
    const double beta = best_intercept(set, next).beta;
    auto shifted = next;
    for (auto& y : shifted) y += beta;
    // The shift leaves the AUM unchanged up to rounding; never let rounding
    // make the trace increase.
    if (aum_only(set, shifted, variant) <= res.aum) {
      next = std::move(shifted);
      rec.intercept = beta;
    } else {
      rec.intercept = 0.0;
    }
    rec.step = chosen.step;
    keep(fit, config, rec);
    pred = std::move(next);
  }
  fit.predictions = std::move(pred);
  fit.selected_iteration = fit.trace.empty() ? 0 : fit.trace.size() - 1;
  return fit;
}

FitResult optimize_linear(const Matrix& features, const ExampleSet& set, const TrainConfig& config,
                          std::optional<Dataset> validation) {
  validate_config(config);
  set.require_valid();
  if (features.rows() != set.size()) {
    throw InvalidInput("feature matrix has " + std::to_string(features.rows()) +
                       " rows but there are " + std::to_string(set.size()) + " examples");
  }
  if (validation) {
    if (!validation->features || !validation->set) throw InvalidInput("incomplete validation data");
    validation->set->require_valid();
    if (validation->features->rows() != validation->set->size() ||
        validation->features->cols() != features.cols()) {
      throw InvalidInput("validation data dimensions do not match");
    }
  }
  const std::size_t p = features.cols();
  const Evaluator train(set, config.objective);
  const Variant trace_variant = variant_of(config.objective);

  std::vector<double> w;
  switch (config.init) {
    case InitMode::zero:
      w.assign(p, 0.0);
      break;
    case InitMode::random:
      w = random_vector(p, config.seed);
      break;
    case InitMode::provided:
      if (config.initial.size() != p) throw InvalidInput("initial weights have the wrong length");
      w = config.initial;
      break;
    case InitMode::min_error:
      throw InvalidInput("min_error initialization applies to predictions mode only");
  }

  FitResult fit;
  std::vector<std::vector<double>> weight_path;
  std::vector<double> intercept_path;
  std::vector<double> gradient;
  for (int j = 0;; ++j) {
    const auto pred = features.multiply(w);
    double aum_value = 0.0;
    const double loss = train.loss_and_gradient(pred, gradient, aum_value);
    const auto beta = best_intercept(set, pred);
    TraceRecord rec;
    rec.iteration = j;
    rec.loss = loss;
    rec.aum = aum_value;
    rec.auc = auc_or_nan(set, pred);
    rec.error_rate = error_rate(set, beta);
    rec.intercept = beta.beta;
    if (validation) {
      const auto vpred = validation->features->multiply(w);
      rec.val_aum = aum_only(*validation->set, vpred, trace_variant);
      rec.val_auc = auc_or_nan(*validation->set, vpred);
    }

    const auto direction = features.transpose_multiply(gradient);
    bool stop = j >= config.max_iterations || all_zero(direction);
    Candidate chosen{0.0, loss};
    if (!stop) {
      chosen = line_search(config, [&](double step) {
        return step == 0.0 ? loss : train.loss(features.multiply(step_along(w, direction, step)));
      });
      stop = chosen.step == 0.0;
    }
    rec.step = stop ? 0.0 : chosen.step;
    if (config.record_trace || stop) {
      weight_path.push_back(w);
      intercept_path.push_back(beta.beta);
    }
    keep(fit, config, rec);
    if (stop) break;
    w = step_along(w, direction, chosen.step);
  }
  if (!config.record_trace) {
    weight_path.erase(weight_path.begin(), weight_path.end() - 1);
    intercept_path.erase(intercept_path.begin(), intercept_path.end() - 1);
  }

  fit.weights = w;
  fit.intercept = intercept_path.back();
  fit.rule = validation ? config.selection : SelectionRule::last;
  fit.selected_iteration = select_iteration(fit.trace, fit.rule);
  fit.selected_weights = weight_path[fit.selected_iteration];
  fit.selected_intercept = intercept_path[fit.selected_iteration];
  return fit;
}

std::size_t select_iteration(std::span<const double> aum_values, std::span<const double> auc_values,
                             SelectionRule rule) {
  const std::size_t len = std::max(aum_values.size(), auc_values.size());
  if (len == 0) return 0;
  switch (rule) {
    case SelectionRule::initial:
      return 0;
    case SelectionRule::last:
      return len - 1;
    case SelectionRule::min_aum: {
      std::size_t best = 0;
      double best_value = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < aum_values.size(); ++j) {
        if (aum_values[j] < best_value) {
          best_value = aum_values[j];
          best = j;
        }
      }
      return best;
    }
    case SelectionRule::max_auc: {
      std::size_t best = 0;
      double best_value = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < auc_values.size(); ++j) {
        if (auc_values[j] > best_value) {
          best_value = auc_values[j];
          best = j;
        }
      }
      return best;
    }
  }
  return 0;
}

std::size_t select_iteration(std::span<const TraceRecord> trace, SelectionRule rule) {
  std::vector<double> aums, aucs;
  const bool has_validation = !trace.empty() && trace.front().val_aum.has_value();
  for (const auto& r : trace) {
    aums.push_back(has_validation ? r.val_aum.value_or(nan_value) : r.aum);
    aucs.push_back(has_validation ? r.val_auc.value_or(nan_value) : r.auc);
  }
  return select_iteration(aums, aucs, rule);
}

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::aum_count: return "aum-count";
    case Objective::aum_rate: return "aum-rate";
    case Objective::logistic: return "logistic";
    case Objective::pairs: return "pairs";
  }
  return "?";
}

std::string to_string(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::min_aum: return "min-validation-aum";
    case SelectionRule::max_auc: return "max-validation-auc";
    case SelectionRule::initial: return "initial";
    case SelectionRule::last: return "last";
  }
  return "?";
}

Objective parse_objective(const std::string& name) {
  if (name == "aum-count" || name == "aum") return Objective::aum_count;
  if (name == "aum-rate") return Objective::aum_rate;
  if (name == "logistic") return Objective::logistic;
  if (name == "pairs") return Objective::pairs;
  throw InvalidInput("unknown objective '" + name + "'");
}

SelectionRule parse_selection_rule(const std::string& name) {
  if (name == "min-aum" || name == "min-validation-aum") return SelectionRule::min_aum;
  if (name == "max-auc" || name == "max-validation-auc") return SelectionRule::max_auc;
  if (name == "initial") return SelectionRule::initial;
  if (name == "last") return SelectionRule::last;
  throw InvalidInput("unknown selection rule '" + name + "'");
}

InitMode parse_init_mode(const std::string& name) {
  if (name == "zero") return InitMode::zero;
  if (name == "min-error") return InitMode::min_error;
  if (name == "random") return InitMode::random;
  if (name == "provided") return InitMode::provided;
  throw InvalidInput("unknown init mode '" + name + "'");
}

}  // namespace aum
