#include "aum/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace aum {

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::ostringstream out;
        out << "invalid example set (" << violations.size() << " violation"
            << (violations.size() == 1 ? "" : "s") << ")";
        for (const auto& v : violations) out << "\n  " << v;
        return out.str();
      }()),
      violations_(std::move(violations)) {}

namespace {

// NaN sorts last so that std::sort sees a strict weak order.
bool value_less(double a, double b) {
  if (std::isnan(a)) return false;
  if (std::isnan(b)) return true;
  return a < b;
}

}  // namespace

ErrorFunction::ErrorFunction(std::vector<Step> steps, int fpp, int fnp) : fpp_(fpp), fnp_(fnp) {
  std::stable_sort(steps.begin(), steps.end(),
                   [](const Step& a, const Step& b) { return value_less(a.value, b.value); });
  steps_.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size();) {
    std::size_t j = i + 1;
    Step merged = steps[i];
    while (j < steps.size() && steps[j].value == merged.value) {
      merged.delta_fp += steps[j].delta_fp;
      merged.delta_fn += steps[j].delta_fn;
      ++j;
    }
    bool cancelled = j - i > 1 && merged.delta_fp == 0 && merged.delta_fn == 0;
    if (!cancelled) steps_.push_back(merged);
    i = j;
  }
}

ErrorCounts ErrorFunction::evaluate(double y) const {
  ErrorCounts out;
  for (const auto& s : steps_) {
    if (s.value <= y) {
      out.fp += s.delta_fp;
    } else {
      out.fn -= s.delta_fn;
    }
  }
  return out;
}

double ErrorFunction::min_error_prediction() const {
  std::vector<double> bounds;
  std::vector<std::int64_t> costs;
  bounds.reserve(steps_.size());
  costs.reserve(steps_.size() + 1);
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  for (const auto& s : steps_) fn -= s.delta_fn;
  costs.push_back(fp + fn);
  for (const auto& s : steps_) {
    fp += s.delta_fp;
    fn += s.delta_fn;
    bounds.push_back(s.value);
    costs.push_back(fp + fn);
  }
  return detail::pick_min_interval(bounds, costs).first;
}

namespace detail {

std::pair<double, std::int64_t> pick_min_interval(std::span<const double> bounds,
                                                  std::span<const std::int64_t> costs) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t m = bounds.size();
  std::int64_t best_cost = *std::min_element(costs.begin(), costs.end());
  std::size_t best = costs.size();
  double best_width = -1.0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (costs[k] != best_cost) continue;
    double lo = k == 0 ? -inf : bounds[k - 1];
    double hi = k == m ? inf : bounds[k];
    double width = hi - lo;
    if (width >= best_width) {
      best_width = width;
      best = k;
    }
  }
  double lo = best == 0 ? -inf : bounds[best - 1];
  double hi = best == m ? inf : bounds[best];
  double point;
  if (std::isinf(lo) && std::isinf(hi)) {
    point = 0.0;
  } else if (std::isinf(hi)) {
    point = lo + 1.0;
  } else if (std::isinf(lo)) {
    point = hi - 1.0;
  } else {
    point = lo + (hi - lo) / 2.0;
  }
  return {point, best_cost};
}

}  // namespace detail

Diagnostics validate(const ErrorFunction& err, std::size_t example_index) {
  Diagnostics out;
  const std::string tag = "example " + std::to_string(example_index + 1) + ": ";
  const auto& steps = err.steps();
  auto at = [](std::size_t k) { return " at breakpoint " + std::to_string(k + 1); };

  if (err.fpp() < 0) out.violations.push_back(tag + "negative fpp");
  if (err.fnp() < 0) out.violations.push_back(tag + "negative fnp");
  if (steps.empty()) out.violations.push_back(tag + "no breakpoints");

  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!std::isfinite(steps[k].value)) {
      out.violations.push_back(tag + "non-finite value" + at(k));
    }
    if (steps[k].delta_fp == 0 && steps[k].delta_fn == 0) {
      out.violations.push_back(tag + "zero-delta breakpoint" + at(k));
    }
  }

  std::int64_t fp = 0;
  bool fp_negative = false, fp_over = false;
  std::int64_t max_fp = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    fp += steps[k].delta_fp;
    max_fp = std::max(max_fp, fp);
    if (fp < 0 && !fp_negative) {
      out.violations.push_back(tag + "FP prefix negative" + at(k));
      fp_negative = true;
    }
    if (fp > err.fpp() && !fp_over) {
      out.violations.push_back(tag + "FP exceeds fpp" + at(k));
      fp_over = true;
    }
  }

  std::int64_t fn = 0;
  bool fn_negative = false, fn_over = false;
  for (std::size_t r = steps.size(); r-- > 0;) {
    fn -= steps[r].delta_fn;
    if (fn < 0 && !fn_negative) {
      out.violations.push_back(tag + "FN suffix negative" + at(r));
      fn_negative = true;
    }
    if (fn > err.fnp() && !fn_over) {
      out.violations.push_back(tag + "FN exceeds fnp" + at(r));
      fn_over = true;
    }
  }

  if (out.violations.empty()) {
    // fp is now FP(+inf), fn is FN(-inf).
    if (fp != err.fpp()) {
      out.warnings.push_back(tag + "FP at +inf is " + std::to_string(fp) + " but fpp is " +
                             std::to_string(err.fpp()));
    }
    if (fn != err.fnp()) {
      out.warnings.push_back(tag + "FN at -inf is " + std::to_string(fn) + " but fnp is " +
                             std::to_string(err.fnp()));
    }
  }
  return out;
}

Diagnostics validate(const ExampleSet& set) { return set.diagnostics(); }

ExampleSet::ExampleSet(std::vector<ErrorFunction> examples) : examples_(std::move(examples)) {
  if (examples_.empty()) throw InvalidInput("example set must contain at least one example");
  std::size_t total = 0;
  for (const auto& e : examples_) total += e.steps().size();
  breakpoints_.reserve(total);
  for (std::size_t i = 0; i < examples_.size(); ++i) {
    const auto& e = examples_[i];
    for (const auto& s : e.steps()) {
      breakpoints_.push_back({s.value, s.delta_fp, s.delta_fn, i});
    }
    total_fpp_ += e.fpp();
    total_fnp_ += e.fnp();
    auto d = aum::validate(e, i);
    diagnostics_.violations.insert(diagnostics_.violations.end(), d.violations.begin(),
                                   d.violations.end());
    diagnostics_.warnings.insert(diagnostics_.warnings.end(), d.warnings.begin(),
                                 d.warnings.end());
  }
  if (total_fpp_ == 0) diagnostics_.warnings.push_back("total fpp is 0: FPR undefined");
  if (total_fnp_ == 0) diagnostics_.warnings.push_back("total fnp is 0: TPR undefined");
}

void ExampleSet::require_valid() const {
  if (!valid()) throw ValidationError(diagnostics_.violations);
}

ExampleSet from_binary_labels(std::span<const int> labels) {
  if (labels.empty()) throw InvalidInput("label list is empty");
  std::vector<ErrorFunction> examples;
  examples.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      examples.emplace_back(std::vector<Step>{{0.0, 0, -1}}, 0, 1);
    } else if (labels[i] == -1) {
      examples.emplace_back(std::vector<Step>{{0.0, 1, 0}}, 1, 0);
    } else {
      throw InvalidInput("label " + std::to_string(i + 1) + " is " + std::to_string(labels[i]) +
                         ", expected -1 or 1");
    }
  }
  return ExampleSet(std::move(examples));
}

void check_predictions(const ExampleSet& set, std::span<const double> predictions) {
  if (predictions.size() != set.size()) {
    throw InvalidInput("expected " + std::to_string(set.size()) + " predictions, got " +
                       std::to_string(predictions.size()));
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!std::isfinite(predictions[i])) {
      throw InvalidInput("prediction " + std::to_string(i + 1) + " is not finite");
    }
  }
}

}  // namespace aum
