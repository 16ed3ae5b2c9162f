#pragma once

#include <cstdint>
#include <random>

#include "dho/model.hpp"
#include "dho/state.hpp"

namespace dho {

/// Random physically valid inputs for property sweeps. Deterministic for a
/// given seed.
class ConfigSampler {
 public:
  explicit ConfigSampler(std::uint64_t seed) : rng_(seed) {}

  /// m = w = 1 scaled oscillator with lambda in [lambda_lo, lambda_hi] w and
  /// |mu| < mu_max w.
  OscillatorSpec oscillator(double lambda_lo = 0.01, double lambda_hi = 0.3,
                            double mu_max = 0.5, UnitSystem units = {});

  /// Diffusion satisfying the fundamental constraints, with the determinant
  /// margin drawn from [0, excess] times lambda^2 hbar^2 / 4.
  DiffusionSpec diffusion(const OscillatorSpec& osc, double excess = 3.0);

  /// Gaussian state with sigma >= hbar^2/4; `mix` bounds the ratio
  /// sqrt(sigma) / (hbar/2) - 1.
  GaussianState state(double hbar, double mix = 4.0);

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  /// Log-uniform in [lo, hi].
  double log_uniform(double lo, double hi);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace dho
