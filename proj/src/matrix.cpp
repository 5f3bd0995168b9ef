#include "aum/matrix.hpp"

#include "aum/errors.hpp"

namespace aum {

std::vector<double> Matrix::multiply(std::span<const double> w) const {
  if (w.size() != cols_) throw InvalidInput("weight vector length does not match feature count");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += data_[r * cols_ + c] * w[c];
    out[r] = sum;
  }
  return out;
}

std::vector<double> Matrix::transpose_multiply(std::span<const double> v) const {
  if (v.size() != rows_) throw InvalidInput("vector length does not match example count");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] += data_[r * cols_ + c] * v[r];
  }
  return out;
}

}  // namespace aum
