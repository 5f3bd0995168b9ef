#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace aum {

// Bad arguments: length mismatches, empty inputs, non-finite predictions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An ExampleSet failed strict validation. Carries every violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace aum
