#pragma once

#include <span>

#include "aum/aum.hpp"
#include "aum/error_model.hpp"

// Brute-force references for checking the sort-based code paths. Everything
// here is computed from per-example evaluate() sums at probe points, with no
// cumulative sums or grouping shared with roc/aum. Quadratic or worse.
namespace aum::oracle {

// Integral of min(FPT, FNT) over c, one midpoint probe per bounded interval
// between distinct thresholds; the two unbounded intervals contribute 0.
double aum_by_intervals(const ExampleSet& set, std::span<const double> predictions,
                        Variant variant = Variant::count);

// Exact one-sided differences of aum_by_intervals with h = half the smallest
// positive gap between distinct thresholds (1e-6 if there is only one).
// Column 0: (AUM(y - h e_i) - AUM(y)) / h; column 1: (AUM(y + h e_i) - AUM(y)) / h.
DerivMatrix derivs_by_finite_difference(const ExampleSet& set, std::span<const double> predictions,
                                        Variant variant = Variant::count);

// Mann-Whitney statistic: mean over (negative, positive) pairs of
// 1 if the positive is ranked higher, 1/2 on ties.
double auc_pairwise(std::span<const int> labels, std::span<const double> predictions);

// Sum of min(FPT, FNT) over the bounded intervals between distinct thresholds.
double sm_by_enumeration(const ExampleSet& set, std::span<const double> predictions);

// AUC by enumeration of the constant intervals, using the probe-point totals.
double auc_by_enumeration(const ExampleSet& set, std::span<const double> predictions);

}  // namespace aum::oracle
