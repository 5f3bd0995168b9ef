#pragma once

#include <string>

namespace aum {

// Shortest representation that parses back to the same double; "inf",
// "-inf" and "nan" for non-finite values.
std::string format_real(double x);

}  // namespace aum
