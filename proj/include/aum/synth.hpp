#pragma once

#include <cstdint>
#include <vector>

#include "aum/error_model.hpp"
#include "aum/io.hpp"
#include "aum/matrix.hpp"

// Deterministic synthetic data sets (same arguments, same output).
namespace aum::synth {

// round(n * positive_fraction) positives (at least one of each class) in
// shuffled order; 2 features drawn from N((1,1), I) for positives and
// N((-1,-1), I) for negatives.
io::BinaryData binary_gaussian(std::size_t n, double positive_fraction, std::uint64_t seed);

struct ChangepointData {
  ExampleSet set;
  // Loop pairs in their looping configuration, other examples at their
  // minimum-error prediction.
  std::vector<double> predictions;
  // feat_1 is a noisy copy of the minimum-error prediction, feat_2 is noise.
  Matrix features;
};

// The first round(n * loop_share) examples come in pairs with non-monotone
// error functions: one with FN = 1 on (-inf, o) and [o+s, o+2s), one with
// FP = 1 on [o, o+s) and [o+2s, inf). The first pair has o = 0, s = 1 and
// predictions (0, -0.5); later pairs draw o and s. The remaining examples
// have monotone FP/FN functions (a FN drop, a FP rise, or both). All values
// lie on a 1/16 grid.
ChangepointData changepoint_loop(std::size_t n, double loop_share, std::uint64_t seed);

}  // namespace aum::synth
