#pragma once

namespace dho {

/// First moments and covariances of a Gaussian state at time t.
struct GaussianState {
  double sigma_q = 0.0;
  double sigma_p = 0.0;
  double sigma_qq = 0.0;
  double sigma_pp = 0.0;
  double sigma_pq = 0.0;
  double t = 0.0;

  /// Generalized uncertainty sigma_qq sigma_pp - sigma_pq^2.
  double uncertainty() const { return sigma_qq * sigma_pp - sigma_pq * sigma_pq; }
};

/// Relative slack allowed below hbar^2/4 when checking evolved states.
inline constexpr double kUncertaintyRelTol = 1e-10;

/// Throws ValidationError unless the covariances are positive and the state
/// satisfies sigma >= hbar^2/4 (up to kUncertaintyRelTol).
void check_state(const GaussianState& state, double hbar);

/// Minimum-uncertainty state of the oscillator ground level.
GaussianState ground_state(double mass, double omega, double hbar);

}  // namespace dho
