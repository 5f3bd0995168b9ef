#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "aum/aum.hpp"
#include "aum/baselines.hpp"
#include "aum/bench.hpp"
#include "aum/errors.hpp"
#include "aum/io.hpp"
#include "aum/optim.hpp"
#include "aum/oracle.hpp"
#include "aum/roc.hpp"
#include "aum/synth.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, usage = 1, invalid = 2, mismatch = 3 };

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json real_json(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aum::InvalidInput("cannot open " + path);
  return in;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw aum::InvalidInput("cannot write " + path.string());
  return out;
}

aum::Variant parse_variant(const std::string& s) {
  if (s == "count") return aum::Variant::count;
  if (s == "rate") return aum::Variant::rate;
  throw aum::InvalidInput("unknown variant '" + s + "'");
}

// Where an example set comes from: a binary CSV or a breakpoint TSV with
// optional capacities.
struct DataFiles {
  std::string labels;
  std::string breakpoints;
  std::string capacities;
  std::string features;
};

struct LoadedData {
  std::optional<aum::ExampleSet> set;
  std::optional<std::vector<int>> labels;
  aum::Matrix features;
};

LoadedData load(const DataFiles& files, const std::string& what) {
  if (files.labels.empty() == files.breakpoints.empty()) {
    throw aum::InvalidInput(what + ": give exactly one of a labels file or a breakpoints file");
  }
  LoadedData d;
  if (!files.labels.empty()) {
    auto in = open_in(files.labels);
    auto bin = aum::io::read_binary_csv(in, files.labels);
    d.set.emplace(aum::from_binary_labels(bin.labels));
    d.labels = bin.labels;
    d.features = std::move(bin.features);
  } else {
    auto in = open_in(files.breakpoints);
    auto raw = aum::io::read_breakpoints(in, files.breakpoints);
    std::vector<std::pair<std::size_t, aum::io::Capacity>> caps;
    if (!files.capacities.empty()) {
      auto cin = open_in(files.capacities);
      caps = aum::io::read_capacities(cin, files.capacities);
    }
    d.set.emplace(aum::io::assemble(raw, caps));
  }
  if (!files.features.empty()) {
    auto in = open_in(files.features);
    d.features = aum::io::read_features_csv(in, files.features);
  }
  return d;
}

void add_data_options(CLI::App* cmd, DataFiles& files, const std::string& prefix) {
  const std::string p = prefix.empty() ? "--" : "--" + prefix + "-";
  cmd->add_option(p + "labels", files.labels, "Binary CSV: label,feat_1,...,feat_p");
  cmd->add_option(p + "breakpoints", files.breakpoints, "Breakpoint TSV: example_id,value,delta_fp,delta_fn");
  cmd->add_option(p + "capacities", files.capacities, "Capacity TSV: example_id,fpp,fnp");
  cmd->add_option(p + "features", files.features, "Feature CSV: feat_1,...,feat_p");
}

void report_diagnostics(const aum::Diagnostics& d) {
  for (const auto& w : d.warnings) std::cerr << "warning: " << w << '\n';
}

// compute ----------------------------------------------------------------

struct ComputeArgs {
  DataFiles data;
  std::string predictions;
  std::string variant = "count";
  std::string roc_out;
  std::string table_out;
  std::string out_dir;
  bool check = false;
};

void check_close(const char* what, double got, double want, double rel, double abs) {
  const double err = std::abs(got - want);
  if (!(err <= abs || err <= rel * std::abs(want))) {
    std::ostringstream msg;
    msg << what << ": " << aum::format_real(got) << " vs oracle " << aum::format_real(want);
    throw CheckFailure(msg.str());
  }
}

nlohmann::json run_checks(const aum::ExampleSet& set, const std::vector<double>& y, aum::Variant variant,
                          const aum::AumResult& result, const std::optional<aum::RocCurve>& curve,
                          const std::optional<std::vector<int>>& labels) {
  nlohmann::json j;
  check_close("aum", result.aum, aum::oracle::aum_by_intervals(set, y, variant), 1e-9, 1e-12);
  const auto fd = aum::oracle::derivs_by_finite_difference(set, y, variant);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (int c = 0; c < 2; ++c) check_close("derivative", result.derivs[i][c], fd[i][c], 0.0, 1e-8);
  }
  const auto table = aum::threshold_table(set, y);
  if (aum::aum_min_after(table, set, variant) != aum::aum_min_before(table, set, variant)) {
    throw CheckFailure("the min-after and min-before sums differ");
  }
  j["aum"] = "ok";
  j["derivatives"] = "ok";
  j["threshold_sums"] = "ok";
  if (curve) {
    check_close("auc", aum::auc(*curve), aum::oracle::auc_by_enumeration(set, y), 0.0, 1e-12);
    check_close("sm", aum::sm(*curve), aum::oracle::sm_by_enumeration(set, y), 0.0, 0.0);
    j["auc"] = "ok";
    j["sm"] = "ok";
    if (labels) {
      check_close("auc (pairwise)", aum::auc(*curve), aum::oracle::auc_pairwise(*labels, y), 0.0, 1e-12);
      j["auc_pairwise"] = "ok";
    }
  }
  return j;
}

int cmd_compute(const ComputeArgs& a) {
  auto data = load(a.data, "compute");
  const auto& set = *data.set;
  report_diagnostics(set.diagnostics());
  set.require_valid();
  auto in = open_in(a.predictions);
  const auto y = aum::io::read_predictions(in, a.predictions);
  aum::check_predictions(set, y);
  const auto variant = parse_variant(a.variant);

  const auto result = aum::compute_aum(set, y, variant, !a.table_out.empty());
  std::optional<aum::RocCurve> curve;
  if (set.total_fpp() >= 1 && set.total_fnp() >= 1) curve = aum::roc_curve(set, y);

  nlohmann::json j;
  j["aum"] = real_json(result.aum);
  j["auc"] = curve ? real_json(aum::auc(*curve)) : nlohmann::json(nullptr);
  j["sm"] = curve ? real_json(aum::sm(*curve)) : nlohmann::json(nullptr);
  j["n"] = set.size();
  j["B"] = set.num_breakpoints();
  j["Q"] = curve ? nlohmann::json(curve->points.size()) : nlohmann::json(nullptr);
  j["differentiable"] = aum::is_differentiable(result.derivs).all;
  j["variant"] = a.variant;

  if (!a.roc_out.empty()) {
    if (!curve) throw aum::InvalidInput("ROC curve needs both capacity totals to be at least 1");
    auto out = open_out(a.roc_out);
    aum::write_roc_csv(out, *curve);
  }
  if (!a.table_out.empty()) {
    auto out = open_out(a.table_out);
    aum::write_threshold_table(out, *result.table);
  }
  int code = ok;
  if (a.check) {
    try {
      j["check"] = run_checks(set, y, variant, result, curve, data.labels);
    } catch (const CheckFailure& e) {
      j["check"] = {{"failed", e.what()}};
      code = mismatch;
    }
  }
  const std::string text = j.dump(2);
  std::cout << text << '\n';
  if (!a.out_dir.empty()) open_out(fs::path(a.out_dir) / "metrics.json") << text << '\n';
  if (code == mismatch) std::cerr << "error: oracle mismatch: " << j["check"]["failed"].get<std::string>() << '\n';
  return code;
}

// train ------------------------------------------------------------------

struct TrainArgs {
  DataFiles data;
  DataFiles validation;
  std::string mode = "linear";
  std::string objective = "aum-count";
  std::string variant;
  int max_iterations = 100;
  std::string init = "zero";
  std::string init_file;
  std::vector<double> step_grid;
  bool no_refine = false;
  std::string select = "min-aum";
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int cmd_train(const TrainArgs& a) {
  aum::TrainConfig config;
  config.objective = aum::parse_objective(a.objective);
  if (!a.variant.empty()) {
    const auto v = parse_variant(a.variant);
    if (config.objective == aum::Objective::aum_count || config.objective == aum::Objective::aum_rate) {
      config.objective = v == aum::Variant::rate ? aum::Objective::aum_rate : aum::Objective::aum_count;
    }
  }
  config.max_iterations = a.max_iterations;
  if (!a.step_grid.empty()) config.step_grid = a.step_grid;
  config.refine_steps = !a.no_refine;
  config.init = aum::parse_init_mode(a.init);
  config.seed = a.seed;
  config.selection = aum::parse_selection_rule(a.select);
  if (!a.init_file.empty()) {
    auto in = open_in(a.init_file);
    config.initial = aum::io::read_predictions(in, a.init_file);
  }
  if (config.init == aum::InitMode::provided && a.init_file.empty()) {
    throw aum::InvalidInput("--init provided needs --init-file");
  }
  aum::validate_config(config);

  auto data = load(a.data, "train");
  const auto& set = *data.set;
  report_diagnostics(set.diagnostics());
  set.require_valid();

  aum::FitResult fit;
  if (a.mode == "predictions") {
    if (config.objective != aum::Objective::aum_count && config.objective != aum::Objective::aum_rate) {
      throw aum::InvalidInput("predictions mode supports the aum-count and aum-rate objectives only");
    }
    if (!a.validation.labels.empty() || !a.validation.breakpoints.empty()) {
      throw aum::InvalidInput("validation data needs --mode linear");
    }
    fit = aum::optimize_predictions(set, config);
  } else if (a.mode == "linear") {
    if (data.features.cols() == 0) throw aum::InvalidInput("linear mode needs features");
    std::optional<LoadedData> val;
    std::optional<aum::Dataset> val_view;
    if (!a.validation.labels.empty() || !a.validation.breakpoints.empty()) {
      val = load(a.validation, "validation");
      val->set->require_valid();
      val_view = aum::Dataset{&val->features, &*val->set};
    }
    fit = aum::optimize_linear(data.features, set, config, val_view);
  } else {
    throw aum::InvalidInput("unknown mode '" + a.mode + "'");
  }

  const fs::path dir(a.out_dir);
  {
    auto out = open_out(dir / "trace.csv");
    aum::io::write_trace_csv(out, fit.trace);
  }
  open_out(dir / "fit.json") << aum::io::fit_to_json(fit, config.objective) << '\n';
  if (a.mode == "predictions") {
    auto out = open_out(dir / "predictions.txt");
    aum::io::write_predictions(out, fit.predictions);
  }
  const auto& last = fit.trace.back();
  std::cout << "iterations " << last.iteration << " aum " << aum::format_real(last.aum) << " auc "
            << aum::format_real(last.auc) << " selected " << fit.selected_iteration << '\n';
  return ok;
}

// synth ------------------------------------------------------------------

struct SynthArgs {
  std::string kind;
  std::size_t n = 0;
  double positive_fraction = 0.5;
  double loop_share = 0.5;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int cmd_synth(const SynthArgs& a) {
  const fs::path dir(a.out_dir);
  if (a.kind == "binary-gaussian") {
    const auto d = aum::synth::binary_gaussian(a.n, a.positive_fraction, a.seed);
    auto out = open_out(dir / "data.csv");
    aum::io::write_binary_csv(out, d);
  } else if (a.kind == "changepoint-loop") {
    const auto d = aum::synth::changepoint_loop(a.n, a.loop_share, a.seed);
    {
      auto out = open_out(dir / "breakpoints.tsv");
      aum::io::write_breakpoints(out, d.set);
    }
    {
      auto out = open_out(dir / "capacities.tsv");
      aum::io::write_capacities(out, d.set);
    }
    {
      auto out = open_out(dir / "predictions.txt");
      aum::io::write_predictions(out, d.predictions);
    }
    auto out = open_out(dir / "features.csv");
    aum::io::write_features_csv(out, d.features);
  } else {
    throw aum::InvalidInput("unknown kind '" + a.kind + "'");
  }
  return ok;
}

// bench ------------------------------------------------------------------

struct BenchArgs {
  std::string objective = "aum";
  std::vector<std::size_t> sizes;
  int repeats = 5;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  const auto kind = aum::bench::parse_kind(a.objective);
  std::ostringstream csv;
  csv << "objective,n,median_seconds\n";
  const auto seconds = aum::bench::median_gradient_seconds(kind, a.sizes, a.repeats, a.seed);
  for (std::size_t k = 0; k < a.sizes.size(); ++k) {
    csv << aum::bench::to_string(kind) << ',' << a.sizes[k] << ',' << aum::format_real(seconds[k]) << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    open_out(a.out) << csv.str();
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AUM: area under min(FP, FN) for ROC optimization"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "AUM, AUC and SM of one prediction vector");
  add_data_options(c, compute.data, "");
  c->add_option("--predictions", compute.predictions, "One prediction per line")->required();
  c->add_option("--variant", compute.variant, "count or rate")->check(CLI::IsMember({"count", "rate"}));
  c->add_option("--roc-out", compute.roc_out, "Write the ROC points as CSV");
  c->add_option("--table-out", compute.table_out, "Write the sorted threshold table as TSV");
  c->add_option("--out-dir", compute.out_dir, "Also write metrics.json here");
  c->add_flag("--check", compute.check, "Compare against the brute-force references");

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Gradient descent on AUM or a baseline loss");
  add_data_options(t, train.data, "");
  add_data_options(t, train.validation, "validation");
  t->add_option("--mode", train.mode, "predictions or linear")->check(CLI::IsMember({"predictions", "linear"}));
  t->add_option("--objective", train.objective, "aum-count, aum-rate, logistic or pairs");
  t->add_option("--variant", train.variant, "count or rate (selects the AUM objective)")
      ->check(CLI::IsMember({"count", "rate"}));
  t->add_option("--max-iterations", train.max_iterations)->check(CLI::NonNegativeNumber);
  t->add_option("--init", train.init, "zero, min-error, random or provided");
  t->add_option("--init-file", train.init_file, "Initial predictions or weights, one per line");
  t->add_option("--step-grid", train.step_grid, "Candidate step sizes (must include 0)")->delimiter(',');
  t->add_flag("--no-refine", train.no_refine, "Only try the grid step sizes");
  t->add_option("--select", train.select, "min-aum, max-auc, initial or last");
  t->add_option("--seed", train.seed);
  t->add_option("--out-dir", train.out_dir, "Directory for trace.csv and fit.json");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic data set");
  s->add_option("--kind", synth.kind)->required()->check(CLI::IsMember({"binary-gaussian", "changepoint-loop"}));
  s->add_option("--n", synth.n)->required();
  s->add_option("--positive-fraction", synth.positive_fraction);
  s->add_option("--loop-share", synth.loop_share, "Share of examples in non-monotone pairs");
  s->add_option("--seed", synth.seed);
  s->add_option("--out-dir,--out", synth.out_dir)->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Median time of one gradient evaluation");
  b->add_option("--objective", bench.objective)->check(CLI::IsMember({"aum", "logistic", "pairs"}));
  b->add_option("--sizes", bench.sizes)->required()->delimiter(',');
  b->add_option("--repeats", bench.repeats)->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed);
  b->add_option("--out", bench.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*t) return cmd_train(train);
    if (*s) return cmd_synth(synth);
    if (*b) return cmd_bench(bench);
  } catch (const aum::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    for (const auto& v : e.violations()) std::cerr << "  " << v << '\n';
    return invalid;
  } catch (const aum::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
