#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsmac/alphabets.hpp"

namespace fsmac {

// Row-stochastic matrix. Construction validates with the user tolerance,
// clamps negatives within tolerance to zero, and renormalizes a row only when
// its sum is off by more than the internal tolerance, so reloading already
// normalized data is bit-stable.
class StochasticKernel {
 public:
  StochasticKernel() = default;
  StochasticKernel(std::size_t rows, std::size_t cols, std::vector<double> probs,
                   double tolerance = kUserTolerance);

  static StochasticKernel uniformRows(std::size_t rows, std::size_t cols);
  static StochasticKernel identity(std::size_t n);
  // row r maps deterministically to column map[r]
  static StochasticKernel deterministic(std::size_t rows, std::size_t cols,
                                        const std::vector<std::size_t>& map);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return probs_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {probs_.data() + r * cols_, cols_};
  }
  const std::vector<double>& flat() const { return probs_; }

  bool operator==(const StochasticKernel&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> probs_;
};

// Probability vector with the same clamping/renormalization policy.
std::vector<double> validated_distribution(std::vector<double> probs,
                                           double tolerance = kUserTolerance);

}  // namespace fsmac
