#include "aum/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "aum/format.hpp"

namespace aum {

TotalErrors total_errors(const ExampleSet& set, std::span<const double> predictions, double c) {
  check_predictions(set, predictions);
  TotalErrors out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    auto e = set[i].evaluate(predictions[i] + c);
    out.fpt += e.fp;
    out.fnt += e.fn;
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  out.fpr = set.total_fpp() > 0 ? static_cast<double>(out.fpt) / set.total_fpp() : nan;
  out.tpr = set.total_fnp() > 0 ? 1.0 - static_cast<double>(out.fnt) / set.total_fnp() : nan;
  return out;
}

RocCurve roc_curve(const ExampleSet& set, std::span<const double> predictions) {
  set.require_valid();
  check_predictions(set, predictions);
  if (set.total_fpp() < 1 || set.total_fnp() < 1) {
    throw InvalidInput("ROC curve needs total fpp and total fnp of at least 1");
  }
  const auto& bps = set.breakpoints();
  struct Entry {
    double threshold;
    int delta_fp;
    int delta_fn;
  };
  std::vector<Entry> entries(bps.size());
  std::int64_t fnt = 0;
  for (std::size_t b = 0; b < bps.size(); ++b) {
    entries[b] = {bps[b].value - predictions[bps[b].example], bps[b].delta_fp, bps[b].delta_fn};
    fnt -= bps[b].delta_fn;
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.threshold < b.threshold; });

  RocCurve curve;
  curve.total_fpp = set.total_fpp();
  curve.total_fnp = set.total_fnp();
  const double fpp = static_cast<double>(curve.total_fpp);
  const double fnp = static_cast<double>(curve.total_fnp);
  auto push = [&](std::int64_t fpt, std::int64_t fnt_now, double tau) {
    curve.points.push_back({fpt, fnt_now, static_cast<double>(fpt) / fpp,
                            1.0 - static_cast<double>(fnt_now) / fnp, std::min(fpt, fnt_now), tau});
  };
  std::int64_t fpt = 0;
  for (std::size_t r = 0; r < entries.size();) {
    const double tau = entries[r].threshold;
    push(fpt, fnt, tau);
    while (r < entries.size() && entries[r].threshold == tau) {
      fpt += entries[r].delta_fp;
      fnt += entries[r].delta_fn;
      ++r;
    }
  }
  push(fpt, fnt, std::numeric_limits<double>::infinity());
  return curve;
}

double auc(const RocCurve& curve) {
  double total = 0.0;
  for (std::size_t q = 1; q < curve.points.size(); ++q) {
    const auto& a = curve.points[q - 1];
    const auto& b = curve.points[q];
    total += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return total;
}

double sm(const RocCurve& curve) {
  double total = 0.0;
  for (std::size_t q = 1; q + 1 < curve.points.size(); ++q) {
    if (curve.points[q].tau_hi != curve.points[q - 1].tau_hi) {
      total += static_cast<double>(curve.points[q].min_count);
    }
  }
  return total;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "q,tau_hi,fpt,fnt,fpr,tpr,min_count\n";
  for (std::size_t q = 0; q < curve.points.size(); ++q) {
    const auto& p = curve.points[q];
    out << q + 1 << ',' << format_real(p.tau_hi) << ',' << p.fpt << ',' << p.fnt << ','
        << format_real(p.fpr) << ',' << format_real(p.tpr) << ',' << p.min_count << '\n';
  }
}

}  // namespace aum
