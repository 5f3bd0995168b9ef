#include "aum/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace aum::oracle {

namespace {

std::vector<double> distinct_thresholds(const ExampleSet& set, std::span<const double> predictions) {
  std::vector<double> t;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (const auto& s : set[i].steps()) t.push_back(s.value - predictions[i]);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

struct Totals {
  std::int64_t fpt = 0;
  std::int64_t fnt = 0;
};

Totals totals_at(const ExampleSet& set, std::span<const double> predictions, double c) {
  Totals out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto e = set[i].evaluate(predictions[i] + c);
    out.fpt += e.fp;
    out.fnt += e.fn;
  }
  return out;
}

// Probe points: one below the smallest threshold, each interval midpoint,
// one above the largest.
std::vector<double> probes(const std::vector<double>& t) {
  std::vector<double> out;
  if (t.empty()) return {0.0};
  out.push_back(t.front() - 1.0);
  for (std::size_t k = 1; k < t.size(); ++k) out.push_back(t[k - 1] + (t[k] - t[k - 1]) / 2.0);
  out.push_back(t.back() + 1.0);
  return out;
}

double min_of(const Totals& tot, const ExampleSet& set, Variant variant) {
  if (variant == Variant::count) return static_cast<double>(std::min(tot.fpt, tot.fnt));
  return std::min(static_cast<double>(tot.fpt) / static_cast<double>(set.total_fpp()),
                  static_cast<double>(tot.fnt) / static_cast<double>(set.total_fnp()));
}

void check(const ExampleSet& set, std::span<const double> predictions) {
  set.require_valid();
  check_predictions(set, predictions);
}

}  // namespace

double aum_by_intervals(const ExampleSet& set, std::span<const double> predictions, Variant variant) {
  check(set, predictions);
  if (variant == Variant::rate && (set.total_fpp() < 1 || set.total_fnp() < 1)) {
    throw InvalidInput("rate variant needs non-zero capacity totals");
  }
  const auto t = distinct_thresholds(set, predictions);
  double total = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double mid = t[k - 1] + (t[k] - t[k - 1]) / 2.0;
    total += (t[k] - t[k - 1]) * min_of(totals_at(set, predictions, mid), set, variant);
  }
  return total;
}

DerivMatrix derivs_by_finite_difference(const ExampleSet& set, std::span<const double> predictions,
                                        Variant variant) {
  check(set, predictions);
  const auto t = distinct_thresholds(set, predictions);
  double gap = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double d = t[k] - t[k - 1];
    if (d > 0 && (gap == 0.0 || d < gap)) gap = d;
  }
  const double h = gap > 0 ? gap / 2.0 : 1e-6;
  const double base = aum_by_intervals(set, predictions, variant);
  DerivMatrix out(set.size());
  std::vector<double> moved(predictions.begin(), predictions.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    moved[i] = predictions[i] - h;
    out[i][0] = (aum_by_intervals(set, moved, variant) - base) / h;
    moved[i] = predictions[i] + h;
    out[i][1] = (aum_by_intervals(set, moved, variant) - base) / h;
    moved[i] = predictions[i];
  }
  return out;
}

double auc_pairwise(std::span<const int> labels, std::span<const double> predictions) {
  if (labels.size() != predictions.size()) throw InvalidInput("labels/predictions length mismatch");
  double credit = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != -1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 1) continue;
      ++pairs;
      if (predictions[j] > predictions[i]) {
        credit += 1.0;
      } else if (predictions[j] == predictions[i]) {
        credit += 0.5;
      }
    }
  }
  if (pairs == 0) throw InvalidInput("both classes must be present");
  return credit / static_cast<double>(pairs);
}

double sm_by_enumeration(const ExampleSet& set, std::span<const double> predictions) {
  check(set, predictions);
  const auto t = distinct_thresholds(set, predictions);
  double total = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double mid = t[k - 1] + (t[k] - t[k - 1]) / 2.0;
    total += min_of(totals_at(set, predictions, mid), set, Variant::count);
  }
  return total;
}

double auc_by_enumeration(const ExampleSet& set, std::span<const double> predictions) {
  check(set, predictions);
  if (set.total_fpp() < 1 || set.total_fnp() < 1) throw InvalidInput("rates undefined");
  const auto t = distinct_thresholds(set, predictions);
  double total = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  bool first = true;
  for (double c : probes(t)) {
    const auto tot = totals_at(set, predictions, c);
    const double fpr = static_cast<double>(tot.fpt) / static_cast<double>(set.total_fpp());
    const double tpr = 1.0 - static_cast<double>(tot.fnt) / static_cast<double>(set.total_fnp());
    if (!first) total += (fpr - prev_fpr) * (prev_tpr + tpr) / 2.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
    first = false;
  }
  return total;
}

}  // namespace aum::oracle
