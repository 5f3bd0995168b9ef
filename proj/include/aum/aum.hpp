#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "aum/error_model.hpp"

namespace aum {

// count: min(FPT, FNT). rate: min(FPT / total_fpp, FNT / total_fnp).
enum class Variant { count, rate };

// One breakpoint after sorting by threshold t = v - yhat[example]. The
// before/after totals are shared by every breakpoint with an equal
// threshold: *_before are the totals just below t, *_after just above.
struct ThresholdRow {
  double threshold = 0.0;
  std::size_t example = 0;
  int delta_fp = 0;
  int delta_fn = 0;
  std::int64_t fp_before = 0;
  std::int64_t fp_after = 0;
  std::int64_t fn_before = 0;
  std::int64_t fn_after = 0;
};

struct ThresholdTable {
  // Ascending threshold; ties ordered by example then input order.
  std::vector<ThresholdRow> rows;
};

// n x 2 matrix of one-sided directional derivatives of the AUM with respect
// to each prediction. Column 0 is the derivative along -e_i (the change in
// AUM per unit decrease of yhat_i), column 1 along +e_i. The slope of the
// AUM seen from the left is therefore -decrease(i), from the right
// increase(i).
class DerivMatrix {
 public:
  explicit DerivMatrix(std::size_t n = 0) : rows_(n, {0.0, 0.0}) {}
  explicit DerivMatrix(std::vector<std::array<double, 2>> rows) : rows_(std::move(rows)) {}

  std::size_t size() const noexcept { return rows_.size(); }
  double decrease(std::size_t i) const { return rows_[i][0]; }
  double increase(std::size_t i) const { return rows_[i][1]; }
  double left_slope(std::size_t i) const { return -rows_[i][0]; }
  double right_slope(std::size_t i) const { return rows_[i][1]; }
  std::array<double, 2>& operator[](std::size_t i) { return rows_[i]; }
  const std::array<double, 2>& operator[](std::size_t i) const { return rows_[i]; }
  const std::vector<std::array<double, 2>>& rows() const noexcept { return rows_; }

 private:
  std::vector<std::array<double, 2>> rows_;
};

struct AumResult {
  double aum = 0.0;
  DerivMatrix derivs;
  Variant variant = Variant::count;
  std::optional<ThresholdTable> table;
};

// AUM and its directional derivative matrix with one sort of the B
// thresholds plus linear passes, O(B log B). Requires a valid set and one
// finite prediction per example; the rate variant also needs non-zero
// capacity totals.
AumResult compute_aum(const ExampleSet& set, std::span<const double> predictions,
                      Variant variant = Variant::count, bool keep_table = false);

// Same value as compute_aum(...).aum, bit for bit, without the derivatives.
double aum_only(const ExampleSet& set, std::span<const double> predictions,
                Variant variant = Variant::count);

ThresholdTable threshold_table(const ExampleSet& set, std::span<const double> predictions);

// The two equivalent sums over consecutive sorted thresholds: width times the
// min of the totals after the previous breakpoint, or before the current one.
double aum_min_after(const ThresholdTable& table, const ExampleSet& set,
                     Variant variant = Variant::count);
double aum_min_before(const ThresholdTable& table, const ExampleSet& set,
                      Variant variant = Variant::count);

// Mean of the left and right slopes per example; the descent direction used
// by the optimizers, including at non-differentiable points.
std::vector<double> mean_gradient(const DerivMatrix& derivs);

struct Differentiability {
  std::vector<bool> rows;
  bool all = true;
};

// Row i is differentiable iff its left and right slopes are exactly equal.
Differentiability is_differentiable(const DerivMatrix& derivs);

// rank, threshold, example_id (1-based), deltas and totals, tab separated.
void write_threshold_table(std::ostream& out, const ThresholdTable& table);

}  // namespace aum
