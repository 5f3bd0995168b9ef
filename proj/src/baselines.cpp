#include "aum/baselines.hpp"

#include <cmath>
#include <string>

namespace aum {

namespace {

void check_labels(std::span<const int> labels, std::span<const double> predictions) {
  if (labels.size() != predictions.size()) {
    throw InvalidInput("expected " + std::to_string(labels.size()) + " predictions, got " +
                       std::to_string(predictions.size()));
  }
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

std::vector<double> class_weights(std::span<const int> labels) {
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      ++pos;
    } else if (labels[i] == -1) {
      ++neg;
    } else {
      throw InvalidInput("label " + std::to_string(i + 1) + " must be -1 or 1");
    }
  }
  if (pos == 0 || neg == 0) throw InvalidInput("both classes must be present");
  std::vector<double> w(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    w[i] = 1.0 / static_cast<double>(labels[i] == 1 ? pos : neg);
  }
  return w;
}

LossAndGradient weighted_logistic(std::span<const int> labels, std::span<const double> predictions) {
  check_labels(labels, predictions);
  const auto w = class_weights(labels);
  LossAndGradient out;
  out.gradient.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double margin = labels[i] * predictions[i];
    out.loss += w[i] * softplus(-margin);
    out.gradient[i] = -w[i] * labels[i] * sigmoid(-margin);
  }
  return out;
}

LossAndGradient pairwise_squared_hinge(std::span<const int> labels,
                                       std::span<const double> predictions, double margin) {
  check_labels(labels, predictions);
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      pos.push_back(i);
    } else if (labels[i] == -1) {
      neg.push_back(i);
    } else {
      throw InvalidInput("label " + std::to_string(i + 1) + " must be -1 or 1");
    }
  }
  if (pos.empty() || neg.empty()) throw InvalidInput("both classes must be present");

  std::vector<double> pos_pred(pos.size()), pos_grad(pos.size(), 0.0);
  for (std::size_t k = 0; k < pos.size(); ++k) pos_pred[k] = predictions[pos[k]];

  LossAndGradient out;
  out.gradient.assign(labels.size(), 0.0);
  for (std::size_t i : neg) {
    const double shifted = margin + predictions[i];
    double neg_grad = 0.0;
    for (std::size_t k = 0; k < pos_pred.size(); ++k) {
      const double r = shifted - pos_pred[k];
      if (r > 0) {
        out.loss += r * r;
        neg_grad += 2 * r;
        pos_grad[k] -= 2 * r;
      }
    }
    out.gradient[i] = neg_grad;
  }
  for (std::size_t k = 0; k < pos.size(); ++k) out.gradient[pos[k]] = pos_grad[k];
  return out;
}

std::optional<std::vector<int>> binary_labels(const ExampleSet& set) {
  std::vector<int> labels(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& e = set[i];
    if (e.steps().size() != 1 || e.steps()[0].value != 0.0) return std::nullopt;
    const auto& s = e.steps()[0];
    if (s.delta_fp == 0 && s.delta_fn == -1 && e.fpp() == 0 && e.fnp() == 1) {
      labels[i] = 1;
    } else if (s.delta_fp == 1 && s.delta_fn == 0 && e.fpp() == 1 && e.fnp() == 0) {
      labels[i] = -1;
    } else {
      return std::nullopt;
    }
  }
  return labels;
}

}  // namespace aum
