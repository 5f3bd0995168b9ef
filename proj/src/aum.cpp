#include "aum/aum.hpp"

#include <algorithm>
#include <ostream>

#include "aum/format.hpp"

namespace aum {

namespace {

struct Scale {
  double fp = 1.0;
  double fn = 1.0;
};

Scale scale_for(const ExampleSet& set, Variant variant) {
  if (variant == Variant::count) return {};
  if (set.total_fpp() < 1 || set.total_fnp() < 1) {
    throw InvalidInput("rate variant needs total fpp and total fnp of at least 1");
  }
  return {1.0 / static_cast<double>(set.total_fpp()), 1.0 / static_cast<double>(set.total_fnp())};
}

double scaled_min(std::int64_t fp, std::int64_t fn, Variant variant, Scale s) {
  if (variant == Variant::count) return static_cast<double>(std::min(fp, fn));
  return std::min(static_cast<double>(fp) * s.fp, static_cast<double>(fn) * s.fn);
}

// Sort key carrying everything the passes after the sort need, so that they
// read memory sequentially.
struct Keyed {
  double threshold;
  std::uint32_t index;
  std::uint32_t example;
  std::int32_t delta_fp;
  std::int32_t delta_fn;
};

// Breakpoints sorted by threshold. Breakpoints are stored example by
// example, so ordering ties by index also orders them by example.
std::vector<Keyed> sorted_thresholds(const ExampleSet& set, std::span<const double> predictions) {
  set.require_valid();
  check_predictions(set, predictions);
  const auto& bps = set.breakpoints();
  std::vector<Keyed> keyed(bps.size());
  for (std::size_t b = 0; b < bps.size(); ++b) {
    const auto& bp = bps[b];
    keyed[b] = {bp.value - predictions[bp.example], static_cast<std::uint32_t>(b),
                static_cast<std::uint32_t>(bp.example), bp.delta_fp, bp.delta_fn};
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.threshold != b.threshold) return a.threshold < b.threshold;
    return a.index < b.index;
  });
  return keyed;
}

// FN just below the smallest threshold: every FN drop is still ahead.
std::int64_t initial_fn(const std::vector<Keyed>& keyed) {
  std::int64_t fn = 0;
  for (const auto& k : keyed) fn -= k.delta_fn;
  return fn;
}

// Calls visit(begin, end, fp_before, fp_after, fn_before, fn_after) for each
// run of equal thresholds, left to right.
template <typename Visit>
void for_each_group(const std::vector<Keyed>& keyed, Visit&& visit) {
  std::int64_t fp = 0;
  std::int64_t fn = initial_fn(keyed);
  for (std::size_t r = 0; r < keyed.size();) {
    std::size_t end = r;
    std::int64_t fp_after = fp, fn_after = fn;
    do {
      fp_after += keyed[end].delta_fp;
      fn_after += keyed[end].delta_fn;
      ++end;
    } while (end < keyed.size() && keyed[end].threshold == keyed[r].threshold);
    visit(r, end, fp, fp_after, fn, fn_after);
    fp = fp_after;
    fn = fn_after;
    r = end;
  }
}

double grouped_aum(const std::vector<Keyed>& keyed, Variant variant, Scale s) {
  double total = 0.0;
  double prev = 0.0;
  for_each_group(keyed, [&](std::size_t begin, std::size_t, std::int64_t fp_before, std::int64_t,
                            std::int64_t fn_before, std::int64_t) {
    if (begin > 0) total += (keyed[begin].threshold - prev) * scaled_min(fp_before, fn_before, variant, s);
    prev = keyed[begin].threshold;
  });
  return total;
}

ThresholdTable make_table(const std::vector<Keyed>& keyed) {
  ThresholdTable table;
  table.rows.reserve(keyed.size());
  for_each_group(keyed, [&](std::size_t begin, std::size_t end, std::int64_t fp_before, std::int64_t fp_after,
                            std::int64_t fn_before, std::int64_t fn_after) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto& k = keyed[r];
      table.rows.push_back({k.threshold, k.example, k.delta_fp, k.delta_fn, fp_before, fp_after, fn_before,
                            fn_after});
    }
  });
  return table;
}

}  // namespace

AumResult compute_aum(const ExampleSet& set, std::span<const double> predictions, Variant variant,
                      bool keep_table) {
  const Scale s = scale_for(set, variant);
  const auto keyed = sorted_thresholds(set, predictions);

  AumResult result;
  result.variant = variant;
  result.aum = grouped_aum(keyed, variant, s);
  result.derivs = DerivMatrix(set.size());
  for_each_group(keyed, [&](std::size_t begin, std::size_t end, std::int64_t fp_before, std::int64_t fp_after,
                            std::int64_t fn_before, std::int64_t fn_after) {
    const double min_before = scaled_min(fp_before, fn_before, variant, s);
    const double min_after = scaled_min(fp_after, fn_after, variant, s);
    for (std::size_t r = begin; r < end; ++r) {
      const auto& k = keyed[r];
      // Moving yhat_i down shifts this breakpoint to just above the group:
      // it has not fired yet there, the rest of the group has.
      const double down = scaled_min(fp_after - k.delta_fp, fn_after - k.delta_fn, variant, s);
      // Moving yhat_i up shifts it to just below the group.
      const double up = scaled_min(fp_before + k.delta_fp, fn_before + k.delta_fn, variant, s);
      result.derivs[k.example][0] += down - min_after;
      result.derivs[k.example][1] += up - min_before;
    }
  });
  if (keep_table) result.table = make_table(keyed);
  return result;
}

double aum_only(const ExampleSet& set, std::span<const double> predictions, Variant variant) {
  const Scale s = scale_for(set, variant);
  return grouped_aum(sorted_thresholds(set, predictions), variant, s);
}

ThresholdTable threshold_table(const ExampleSet& set, std::span<const double> predictions) {
  return make_table(sorted_thresholds(set, predictions));
}

double aum_min_after(const ThresholdTable& table, const ExampleSet& set, Variant variant) {
  const Scale s = scale_for(set, variant);
  double total = 0.0;
  for (std::size_t q = 1; q < table.rows.size(); ++q) {
    const auto& prev = table.rows[q - 1];
    total += (table.rows[q].threshold - prev.threshold) *
             scaled_min(prev.fp_after, prev.fn_after, variant, s);
  }
  return total;
}

double aum_min_before(const ThresholdTable& table, const ExampleSet& set, Variant variant) {
  const Scale s = scale_for(set, variant);
  double total = 0.0;
  for (std::size_t q = 1; q < table.rows.size(); ++q) {
    const auto& row = table.rows[q];
    total += (row.threshold - table.rows[q - 1].threshold) *
             scaled_min(row.fp_before, row.fn_before, variant, s);
  }
  return total;
}

std::vector<double> mean_gradient(const DerivMatrix& derivs) {
  std::vector<double> out(derivs.size());
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    out[i] = (derivs.left_slope(i) + derivs.right_slope(i)) / 2.0;
  }
  return out;
}

Differentiability is_differentiable(const DerivMatrix& derivs) {
  Differentiability out;
  out.rows.resize(derivs.size());
  for (std::size_t i = 0; i < derivs.size(); ++i) {
    out.rows[i] = derivs.left_slope(i) == derivs.right_slope(i);
    out.all = out.all && out.rows[i];
  }
  return out;
}

void write_threshold_table(std::ostream& out, const ThresholdTable& table) {
  out << "rank\tthreshold\texample_id\tdelta_fp\tdelta_fn\tfp_before\tfp_after\tfn_before\tfn_after\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    out << r + 1 << '\t' << format_real(row.threshold) << '\t' << row.example + 1 << '\t'
        << row.delta_fp << '\t' << row.delta_fn << '\t' << row.fp_before << '\t' << row.fp_after
        << '\t' << row.fn_before << '\t' << row.fn_after << '\n';
  }
}

}  // namespace aum
