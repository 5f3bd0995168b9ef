#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace aum::bench {

enum class GradientKind { aum, logistic, pairs };

GradientKind parse_kind(const std::string& name);
std::string to_string(GradientKind kind);

// Median wall time in seconds of one full gradient evaluation on balanced
// binary data of size n with N(0,1) predictions. Data generation is not timed.
double median_gradient_seconds(GradientKind kind, std::size_t n, int repeats, std::uint64_t seed);

// The same for several sizes. Each repeat times every size once, so a slow
// period of the machine affects all sizes alike.
std::vector<double> median_gradient_seconds(GradientKind kind, const std::vector<std::size_t>& sizes, int repeats,
                                            std::uint64_t seed);

}  // namespace aum::bench
