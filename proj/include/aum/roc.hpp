#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aum/error_model.hpp"

namespace aum {

struct TotalErrors {
  std::int64_t fpt = 0;
  std::int64_t fnt = 0;
  double fpr = 0.0;  // NaN when total fpp is 0
  double tpr = 0.0;  // NaN when total fnp is 0
};

// FPT(c) and FNT(c): per-example errors evaluated at yhat_i + c, summed.
TotalErrors total_errors(const ExampleSet& set, std::span<const double> predictions, double c);

struct RocPoint {
  std::int64_t fpt = 0;
  std::int64_t fnt = 0;
  double fpr = 0.0;
  double tpr = 0.0;
  std::int64_t min_count = 0;
  // Supremum of the shift constants c mapped to this point; +inf for the last.
  double tau_hi = 0.0;
};

// One point per interval of constant totals as c sweeps from -inf to +inf.
// Equal thresholds (exact floating point equality) are merged, so tau_hi is
// strictly increasing.
struct RocCurve {
  std::vector<RocPoint> points;
  std::int64_t total_fpp = 0;
  std::int64_t total_fnp = 0;
};

// Requires a valid set whose capacity totals are both at least 1.
RocCurve roc_curve(const ExampleSet& set, std::span<const double> predictions);

// Signed trapezoid sum over consecutive points; loops are double counted and
// leftward moves subtract, so the result may fall outside [0, 1].
double auc(const RocCurve& curve);

// Sum of min(fpt, fnt) over the interior points.
double sm(const RocCurve& curve);

// Header q,tau_hi,fpt,fnt,fpr,tpr,min_count; last tau_hi written as inf.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace aum
