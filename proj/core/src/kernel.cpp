#include "fsmac/kernel.hpp"

#include <cmath>
#include <string>

#include "fsmac/errors.hpp"

namespace fsmac {

namespace {

void normalize_row(double* p, std::size_t cols, double tolerance, std::size_t rowIndex) {
  double sum = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double v = p[c];
    if (!std::isfinite(v)) {
      fail(Errc::NonFinitePoint, "non-finite probability in row " + std::to_string(rowIndex));
    }
    if (v < 0.0) {
      if (v < -tolerance) {
        fail(Errc::NegativeProbability,
             "entry " + std::to_string(v) + " in row " + std::to_string(rowIndex));
      }
      p[c] = 0.0;
      v = 0.0;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    fail(Errc::NonStochasticRow,
         "row " + std::to_string(rowIndex) + " sums to " + std::to_string(sum));
  }
  if (std::abs(sum - 1.0) > kInternalTolerance) {
    for (std::size_t c = 0; c < cols; ++c) p[c] /= sum;
  }
}

}  // namespace

StochasticKernel::StochasticKernel(std::size_t rows, std::size_t cols, std::vector<double> probs,
                                   double tolerance)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows_ == 0 || cols_ == 0) fail(Errc::DimensionMismatch, "empty kernel");
  if (probs_.size() != rows_ * cols_) {
    fail(Errc::DimensionMismatch, "kernel storage is " + std::to_string(probs_.size()) +
                                      ", expected " + std::to_string(rows_ * cols_));
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    normalize_row(probs_.data() + r * cols_, cols_, tolerance, r);
  }
}

StochasticKernel StochasticKernel::uniformRows(std::size_t rows, std::size_t cols) {
  std::vector<double> p(rows * cols, 1.0 / static_cast<double>(cols));
  return StochasticKernel(rows, cols, std::move(p));
}

StochasticKernel StochasticKernel::identity(std::size_t n) {
  std::vector<double> p(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) p[i * n + i] = 1.0;
  return StochasticKernel(n, n, std::move(p));
}

StochasticKernel StochasticKernel::deterministic(std::size_t rows, std::size_t cols,
                                                 const std::vector<std::size_t>& map) {
  if (map.size() != rows) fail(Errc::DimensionMismatch, "map size != rows");
  std::vector<double> p(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (map[r] >= cols) fail(Errc::IndexOutOfRange, "map target beyond column count");
    p[r * cols + map[r]] = 1.0;
  }
  return StochasticKernel(rows, cols, std::move(p));
}

std::vector<double> validated_distribution(std::vector<double> probs, double tolerance) {
  if (probs.empty()) fail(Errc::DimensionMismatch, "empty distribution");
  normalize_row(probs.data(), probs.size(), tolerance, 0);
  return probs;
}

}  // namespace fsmac
