#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dho/entropy.hpp"
#include "dho/model.hpp"
#include "dho/state.hpp"

namespace dho {

/// Covariances rescaled to action units: (m w s_qq, s_pp / (m w), s_pq).
struct ScaledCovariances {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  static ScaledCovariances from_state(const GaussianState& s,
                                      const OscillatorSpec& osc);
  /// Writes the covariances back into `s`, leaving the means untouched.
  void apply_to(GaussianState& s, const OscillatorSpec& osc) const;
};

/// Tolerance on the imaginary residue of T e^{-Kt} T relative to the result.
inline constexpr double kImaginaryResidueTol = 1e-10;

std::pair<double, double> evolve_means(const OscillatorSpec& osc,
                                       const GaussianState& state0, double t);

/// Asymptotic covariances from the explicit rational expressions.
/// Requires lambda > 0.
ScaledCovariances steady_covariances(const OscillatorSpec& osc,
                                     const DiffusionSpec& diff);

/// Same quantity computed as (T K^{-1} T) D in complex arithmetic.
ScaledCovariances steady_covariances_matrix(const OscillatorSpec& osc,
                                            const DiffusionSpec& diff);

/// X(t) = (T e^{-Kt} T)(X(0) - X(inf)) + X(inf). For lambda = 0 the
/// equivalent driven form is used, since X(inf) does not exist.
/// Throws ConsistencyError if the complex product is not real.
ScaledCovariances evolve_covariances(const OscillatorSpec& osc,
                                     const DiffusionSpec& diff,
                                     const GaussianState& state0, double t);

/// Means and covariances at time state0.t + t.
GaussianState evolve(const OscillatorSpec& osc, const DiffusionSpec& diff,
                     const GaussianState& state0, double t);

/// Stationary state: zero means, steady covariances.
GaussianState steady_state(const OscillatorSpec& osc, const DiffusionSpec& diff);

/// Classical RK4 integration of the five moment equations with fixed step.
/// Intended as a test oracle.
GaussianState ode_oracle(const OscillatorSpec& osc, const DiffusionSpec& diff,
                         const GaussianState& state0, double t, double step);

/// Single-pass RK4 sampled at each of `times` (strictly increasing,
/// measured from state0.t). Each interval uses the largest step <= `step`
/// that divides it evenly.
std::vector<GaussianState> ode_oracle(const OscillatorSpec& osc,
                                      const DiffusionSpec& diff,
                                      const GaussianState& state0,
                                      std::span<const double> times,
                                      double step);

/// Oracle step default: 1e-4 of the characteristic time 1/max(omega, lambda).
double default_oracle_step(const OscillatorSpec& osc);

struct TrajectoryPoint {
  GaussianState state;
  DerivedScalars scalars;
};

using Trajectory = std::vector<TrajectoryPoint>;

struct TrajectoryOptions {
  CoherentWindow window;
  /// Attach an effective temperature (thermal bath context).
  bool thermal = false;
};

/// Per-time closed-form evaluation. `times` must be strictly increasing and
/// non-negative; they are measured from state0.t.
Trajectory sample_trajectory(const OscillatorSpec& osc,
                             const DiffusionSpec& diff,
                             const GaussianState& state0,
                             std::span<const double> times,
                             const TrajectoryOptions& options);

/// Convenience overload using the oscillator-matched window.
Trajectory sample_trajectory(const OscillatorSpec& osc,
                             const DiffusionSpec& diff,
                             const GaussianState& state0,
                             std::span<const double> times);

/// Throws ValidationError unless times are non-negative and strictly increasing.
void check_times(std::span<const double> times);

}  // namespace dho
