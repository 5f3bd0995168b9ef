#include "aum/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <vector>

#include "aum/aum.hpp"
#include "aum/baselines.hpp"
#include "aum/error_model.hpp"

namespace aum::bench {

GradientKind parse_kind(const std::string& name) {
  if (name == "aum") return GradientKind::aum;
  if (name == "logistic") return GradientKind::logistic;
  if (name == "pairs") return GradientKind::pairs;
  throw InvalidInput("unknown objective '" + name + "'");
}

std::string to_string(GradientKind kind) {
  switch (kind) {
    case GradientKind::aum: return "aum";
    case GradientKind::logistic: return "logistic";
    case GradientKind::pairs: return "pairs";
  }
  return "?";
}

namespace {

struct Problem {
  std::vector<int> labels;
  std::vector<double> predictions;
  ExampleSet set;
};

Problem make_problem(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("benchmark size must be at least 2");
  std::mt19937_64 rng(seed);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i % 2 == 0 ? 1 : -1;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> predictions(n);
  for (auto& y : predictions) y = normal(rng);
  ExampleSet set = from_binary_labels(labels);
  return {std::move(labels), std::move(predictions), std::move(set)};
}

double time_once(GradientKind kind, const Problem& p, volatile double& sink) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> gradient;
  switch (kind) {
    case GradientKind::aum:
      gradient = mean_gradient(compute_aum(p.set, p.predictions).derivs);
      break;
    case GradientKind::logistic:
      gradient = weighted_logistic(p.labels, p.predictions).gradient;
      break;
    case GradientKind::pairs:
      gradient = pairwise_squared_hinge(p.labels, p.predictions).gradient;
      break;
  }
  const auto stop = std::chrono::steady_clock::now();
  sink = sink + gradient.front();
  return std::chrono::duration<double>(stop - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2.0;
}

}  // namespace

std::vector<double> median_gradient_seconds(GradientKind kind, const std::vector<std::size_t>& sizes, int repeats,
                                            std::uint64_t seed) {
  if (repeats < 1) throw InvalidInput("repeats must be at least 1");
  std::vector<Problem> problems;
  for (std::size_t n : sizes) problems.push_back(make_problem(n, seed));
  volatile double sink = 0.0;
  // Untimed warm-up so the first size does not pay for cold caches.
  for (const auto& p : problems) time_once(kind, p, sink);
  std::vector<std::vector<double>> seconds(sizes.size());
  for (int r = 0; r < repeats; ++r) {
    for (std::size_t k = 0; k < problems.size(); ++k) seconds[k].push_back(time_once(kind, problems[k], sink));
  }
  std::vector<double> out;
  for (auto& s : seconds) out.push_back(median(std::move(s)));
  return out;
}

double median_gradient_seconds(GradientKind kind, std::size_t n, int repeats, std::uint64_t seed) {
  return median_gradient_seconds(kind, std::vector<std::size_t>{n}, repeats, seed).front();
}

}  // namespace aum::bench
