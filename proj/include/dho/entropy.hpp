#pragma once

#include <optional>

#include "dho/model.hpp"
#include "dho/phasespace.hpp"
#include "dho/state.hpp"

namespace dho {

/// nu = sqrt(sigma)/hbar - 1/2, clamped at zero for rounding below the
/// uncertainty bound. Throws ValidationError when sigma < hbar^2/4 beyond
/// kUncertaintyRelTol.
double occupation_nu(const GaussianState& state, double hbar);

/// (nu + 1) ln(nu + 1) - nu ln nu with 0 ln 0 = 0.
double entropy_of_nu(double nu);

/// von Neumann entropy of a Gaussian state.
double von_neumann_entropy(const GaussianState& state, double hbar);

struct EffectiveTemperature {
  double value = 0.0;
  /// Set when nu = 0 and the temperature is the zero limit.
  bool zero_limit = false;
};

/// T_e = hbar w / (k [ln(nu + 1) - ln nu]).
EffectiveTemperature effective_temperature(const OscillatorSpec& osc,
                                           const GaussianState& state);

/// The von Neumann entropy re-expressed through an effective temperature.
double entropy_from_temperature(const OscillatorSpec& osc, double t_eff);

/// Wehrl entropy of the Gaussian Husimi distribution,
/// ln( (e / hbar) sqrt(det sigma_Q) ).
double wehrl_entropy_closed(const GaussianState& state,
                            const CoherentWindow& window);

struct WehrlQuadrature {
  double value = 0.0;
  /// Trapezoid integral of Q_H itself; should be 1.
  double normalization = 0.0;
  /// False when the grid is too narrow for the distribution.
  bool converged = false;
};

/// -int dq dp/(2 pi hbar) Q ln Q on the given axes, 0 ln 0 = 0.
WehrlQuadrature wehrl_entropy_quadrature(const GaussianState& state,
                                         const CoherentWindow& window,
                                         const GridAxes& axes);

/// (sqrt(s_qq s_pp) + hbar/2)^2 - s_pq^2 - hbar^2 exp(2(S - 1)); non-negative
/// for every physical Gaussian state.
double minimized_uncertainty_bound(const GaussianState& state, double hbar);

/// Purity Tr rho^2 = hbar / (2 sqrt(sigma)).
double purity_gamma(const GaussianState& state, double hbar);

double linear_entropy(const GaussianState& state, double hbar);

/// Near-pure linear entropy production
/// (4/hbar^2)(D_pp s_qq + D_qq s_pp - 2 D_pq s_pq - hbar^2 lambda / 2).
double linear_entropy_rate(const OscillatorSpec& osc, const DiffusionSpec& diff,
                           const GaussianState& state);

/// s_pp / 2m + m w^2 s_qq / 2 + mu s_pq.
double fluctuation_energy(const OscillatorSpec& osc, const GaussianState& state);

struct DerivedScalars {
  double sigma_det = 0.0;
  double nu = 0.0;
  double s_vn = 0.0;
  std::optional<double> t_eff;
  double gamma = 1.0;
  double s_lin = 0.0;
  double s_lin_rate = 0.0;
  double wehrl = 1.0;
  double energy = 0.0;
};

DerivedScalars derive_scalars(const OscillatorSpec& osc,
                              const DiffusionSpec& diff,
                              const GaussianState& state,
                              const CoherentWindow& window, bool thermal);

}  // namespace dho
