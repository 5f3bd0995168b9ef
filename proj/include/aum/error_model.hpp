#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aum/errors.hpp"

namespace aum {

// One discontinuity of an example's error functions. FP_i and FN_i are
// right continuous, so FP_i(value) already includes delta_fp.
struct Step {
  double value = 0.0;
  int delta_fp = 0;
  int delta_fn = 0;
};

// A Step tagged with the (0-based) example it belongs to.
struct Breakpoint {
  double value = 0.0;
  int delta_fp = 0;
  int delta_fn = 0;
  std::size_t example = 0;
};

struct ErrorCounts {
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  bool operator==(const ErrorCounts&) const = default;
};

// Piecewise constant false positive / false negative functions of a single
// labeled example, stored exactly as a list of steps.
//
// Steps are canonicalized on construction: sorted by value, steps sharing a
// value are merged by summing their deltas, and merged groups whose deltas
// cancel are dropped. A lone all-zero step is kept so that validate() can
// report it.
class ErrorFunction {
 public:
  ErrorFunction(std::vector<Step> steps, int fpp, int fnp);

  const std::vector<Step>& steps() const noexcept { return steps_; }
  int fpp() const noexcept { return fpp_; }
  int fnp() const noexcept { return fnp_; }

  // FP = sum of delta_fp over steps with value <= y; FN = sum of -delta_fn
  // over steps with value > y. Accepts +-infinity.
  ErrorCounts evaluate(double y) const;

  // A prediction with minimal FP+FN. Among the maximal constant intervals
  // achieving the minimum the widest is chosen (the highest one on equal
  // width); returns its midpoint, lower+1 if unbounded above, upper-1 if
  // unbounded below, 0 if there are no steps.
  double min_error_prediction() const;

 private:
  std::vector<Step> steps_;
  int fpp_;
  int fnp_;
};

struct Diagnostics {
  // Broken assumptions: strict mode rejects any of these.
  std::vector<std::string> violations;
  // Suspicious but usable input (e.g. capacities larger than the reachable
  // error, a single-class binary set).
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
};

// n error functions plus a flat breakpoint view used by the sort-based
// algorithms. Immutable after construction.
class ExampleSet {
 public:
  explicit ExampleSet(std::vector<ErrorFunction> examples);

  std::size_t size() const noexcept { return examples_.size(); }
  const std::vector<ErrorFunction>& examples() const noexcept { return examples_; }
  const ErrorFunction& operator[](std::size_t i) const { return examples_[i]; }

  // Every breakpoint, grouped by example in increasing example order.
  const std::vector<Breakpoint>& breakpoints() const noexcept { return breakpoints_; }
  std::size_t num_breakpoints() const noexcept { return breakpoints_.size(); }

  std::int64_t total_fpp() const noexcept { return total_fpp_; }
  std::int64_t total_fnp() const noexcept { return total_fnp_; }

  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }
  bool valid() const noexcept { return diagnostics_.ok(); }

  // Throws ValidationError listing all violations unless valid().
  void require_valid() const;

 private:
  std::vector<ErrorFunction> examples_;
  std::vector<Breakpoint> breakpoints_;
  std::int64_t total_fpp_ = 0;
  std::int64_t total_fnp_ = 0;
  Diagnostics diagnostics_;
};

// One breakpoint per label at value 0: positives (+1) are (0, 0, -1) with
// fpp=0, fnp=1; negatives (-1) are (0, 1, 0) with fpp=1, fnp=0.
ExampleSet from_binary_labels(std::span<const int> labels);

Diagnostics validate(const ExampleSet& set);
Diagnostics validate(const ErrorFunction& err, std::size_t example_index = 0);

// Throws InvalidInput unless predictions has one finite entry per example.
void check_predictions(const ExampleSet& set, std::span<const double> predictions);

namespace detail {

// Picks the representative point of a list of constant intervals
// [lo_k, hi_k) (lo_0 = -inf, hi_last = +inf) with per-interval cost; bounds
// has size costs.size()-1 and is strictly increasing. Returns the chosen
// point and its cost, using the widest/highest/midpoint/+-1 rule.
std::pair<double, std::int64_t> pick_min_interval(std::span<const double> bounds,
                                                  std::span<const std::int64_t> costs);

}  // namespace detail

}  // namespace aum
