#pragma once

// Shared across test translation units: seeded random models kept small
// enough for exhaustive reference computations, plus error-code capture.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fsmac/channel.hpp"
#include "fsmac/errors.hpp"
#include "fsmac/kernel.hpp"
#include "fsmac/rng.hpp"

namespace testutil {

template <typename F>
std::optional<fsmac::Errc> error_code_of(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const fsmac::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline fsmac::StochasticKernel random_kernel(fsmac::rng::Stream& g, std::size_t rows,
                                             std::size_t cols) {
  std::vector<double> probs;
  probs.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::vector<double> row = fsmac::rng::dirichlet(g, cols);
    probs.insert(probs.end(), row.begin(), row.end());
  }
  return fsmac::StochasticKernel(rows, cols, std::move(probs));
}

inline fsmac::FsMacChannel random_channel(std::uint64_t seed, const fsmac::Alphabets& a) {
  fsmac::rng::Stream g(seed, 0xC0FFEE);
  std::vector<double> state = fsmac::rng::dirichlet(g, a.nS);
  fsmac::StochasticKernel csiA = random_kernel(g, a.nS, a.nSa);
  fsmac::StochasticKernel csiB = random_kernel(g, a.nS, a.nSb);
  fsmac::StochasticKernel chan = random_kernel(g, a.nXa * a.nXb * a.nS, a.nY);
  return fsmac::FsMacChannel::validated(a, std::move(state), std::move(csiA), std::move(csiB),
                                        std::move(chan));
}

// Stateless y = xA xor xB; both rates hit 1 bit.
inline fsmac::FsMacChannel xor_channel() {
  fsmac::Alphabets a{1, 1, 1, 2, 2, 2, 0};
  std::vector<double> probs(4 * 2, 0.0);
  for (std::size_t xA = 0; xA < 2; ++xA) {
    for (std::size_t xB = 0; xB < 2; ++xB) {
      probs[(xA * 2 + xB) * 2 + (xA ^ xB)] = 1.0;
    }
  }
  return fsmac::FsMacChannel::validated(a, {1.0}, fsmac::StochasticKernel::uniformRows(1, 1),
                                        fsmac::StochasticKernel::uniformRows(1, 1),
                                        fsmac::StochasticKernel(4, 2, std::move(probs)));
}

// Binary additive noise z = s, equiprobable state, encoder observations
// through symmetric binary flips with crossover 0.1. The noise is fully
// removable, so the sum capacity is exactly 1 bit.
inline fsmac::ModuloAdditiveSpec bundled_modulo() {
  fsmac::StochasticKernel flip(2, 2, {0.9, 0.1, 0.1, 0.9});
  return fsmac::ModuloAdditiveSpec::validated(2, {0.5, 0.5}, flip, flip,
                                              fsmac::StochasticKernel::identity(2));
}

}  // namespace testutil
