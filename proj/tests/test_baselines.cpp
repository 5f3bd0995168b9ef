#include <doctest.h>

#include <cmath>
#include <random>

#include "aum/baselines.hpp"
#include "aum/errors.hpp"
#include "generators.hpp"

using namespace aum;
namespace t = aum::testing;

TEST_CASE("class weights") {
  const auto w = class_weights(std::vector<int>{1, -1, -1, -1});
  CHECK(w[0] == 1.0);
  CHECK(w[1] == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(class_weights(std::vector<int>{1, 1}), InvalidInput);
}

TEST_CASE("weighted logistic loss") {
  const std::vector<int> labels{1, -1};
  CHECK(weighted_logistic(labels, std::vector<double>{0, 0}).loss == doctest::Approx(2 * std::log(2.0)));
  CHECK(weighted_logistic(std::vector<int>{1, -1, -1}, std::vector<double>{0, 0, 0}).loss ==
        doctest::Approx(2 * std::log(2.0)));
  CHECK(weighted_logistic(labels, std::vector<double>{100, -100}).loss < 1e-6);
  const auto g = weighted_logistic(labels, std::vector<double>{0, 0}).gradient;
  CHECK(g[0] == doctest::Approx(-0.5));
  CHECK(g[1] == doctest::Approx(0.5));
  // Large margins must not overflow.
  CHECK(std::isfinite(weighted_logistic(labels, std::vector<double>{-800, 800}).loss));
}

TEST_CASE("pairwise squared hinge") {
  const std::vector<int> labels{1, -1};
  CHECK(pairwise_squared_hinge(labels, std::vector<double>{2, 0}).loss == 0.0);
  const auto r = pairwise_squared_hinge(labels, std::vector<double>{0, 0});
  CHECK(r.loss == 1.0);
  CHECK(r.gradient[0] == -2.0);
  CHECK(r.gradient[1] == 2.0);
  CHECK(pairwise_squared_hinge(std::vector<int>{1, 1, -1}, std::vector<double>{0, 0, 0}).loss == 2.0);
  CHECK(pairwise_squared_hinge(labels, std::vector<double>{0, 0}, 2.0).loss == 4.0);
}

TEST_CASE("baselines reject mismatched input") {
  CHECK_THROWS_AS(weighted_logistic(std::vector<int>{1, -1}, std::vector<double>{0}), InvalidInput);
  CHECK_THROWS_AS(pairwise_squared_hinge(std::vector<int>{1}, std::vector<double>{0, 1}), InvalidInput);
}

TEST_CASE("binary labels are recovered from a set") {
  const std::vector<int> labels{1, -1, -1, 1};
  CHECK(binary_labels(from_binary_labels(labels)) == labels);
  CHECK_FALSE(binary_labels(t::loop_set()).has_value());
}

TEST_CASE("property: gradients match central differences and losses are convex") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto labels = t::random_labels(rng, 2 + trial % 15);
    std::normal_distribution<double> normal(0.0, 1.5);
    std::vector<double> y(labels.size()), z(labels.size());
    for (auto& v : y) v = normal(rng);
    for (auto& v : z) v = normal(rng);
    for (int kind = 0; kind < 2; ++kind) {
      auto f = [&](const std::vector<double>& p) {
        return kind == 0 ? weighted_logistic(labels, p) : pairwise_squared_hinge(labels, p);
      };
      const auto base = f(y);
      CHECK(base.loss >= 0.0);
      const double h = 1e-6;
      for (std::size_t i = 0; i < y.size(); ++i) {
        auto up = y, down = y;
        up[i] += h;
        down[i] -= h;
        CHECK(base.gradient[i] == doctest::Approx((f(up).loss - f(down).loss) / (2 * h)).epsilon(1e-5));
      }
      std::vector<double> mid(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) mid[i] = (y[i] + z[i]) / 2;
      CHECK(f(mid).loss <= (base.loss + f(z).loss) / 2 + 1e-12);
    }
  }
}

TEST_CASE("property: the pairwise loss vanishes exactly when every pair clears the margin") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const auto labels = t::random_labels(rng, 2 + trial % 10);
    const auto y = t::random_predictions(rng, labels.size(), 0.25, 2.0);
    bool clear = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (labels[i] == -1 && labels[j] == 1) clear = clear && y[j] - y[i] >= 1.0;
      }
    }
    CHECK((pairwise_squared_hinge(labels, y).loss == 0.0) == clear);
  }
}
