#include "dho/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "dho/errors.hpp"

namespace dho {

double occupation_nu(const GaussianState& s, double hbar) {
  check_state(s, hbar);
  return std::max(0.0, std::sqrt(s.uncertainty()) / hbar - 0.5);
}

double entropy_of_nu(double nu) {
  if (nu <= 0.0) return 0.0;
  return (nu + 1.0) * std::log1p(nu) - nu * std::log(nu);
}

double von_neumann_entropy(const GaussianState& s, double hbar) {
  return entropy_of_nu(occupation_nu(s, hbar));
}

EffectiveTemperature effective_temperature(const OscillatorSpec& osc,
                                           const GaussianState& s) {
  const double nu = occupation_nu(s, osc.hbar());
  if (nu <= 0.0) return {0.0, true};
  // ln(nu + 1) - ln(nu) = log1p(1/nu)
  const double t = osc.hbar() * osc.omega() /
                   (osc.units().boltzmann * std::log1p(1.0 / nu));
  return {t, false};
}

double entropy_from_temperature(const OscillatorSpec& osc, double t_eff) {
  if (t_eff <= 0.0) return 0.0;
  const double x = osc.hbar() * osc.omega() / (osc.units().boltzmann * t_eff);
  return x / std::expm1(x) - std::log(-std::expm1(-x));
}

double wehrl_entropy_closed(const GaussianState& s, const CoherentWindow& w) {
  const double h = w.hbar();
  return 1.0 + 0.5 * std::log(husimi_determinant(s, w) / (h * h));
}

WehrlQuadrature wehrl_entropy_quadrature(const GaussianState& s,
                                         const CoherentWindow& w,
                                         const GridAxes& axes) {
  const PhaseSpaceGrid grid = sample_husimi(s, w, axes);
  WehrlQuadrature out;
  out.value = -grid.integrate([](double q) {
    return q > 0.0 ? q * std::log(q) : 0.0;
  });
  out.normalization = grid.integrate();
  const double peak = husimi_at(s, w, s.sigma_q, s.sigma_p);
  out.converged = std::abs(out.normalization - 1.0) < 1e-6 &&
                  grid.boundary_max() < 1e-8 * peak;
  return out;
}

double minimized_uncertainty_bound(const GaussianState& s, double hbar) {
  const double entropy = von_neumann_entropy(s, hbar);
  const double root = std::sqrt(s.sigma_qq * s.sigma_pp) + 0.5 * hbar;
  return root * root - s.sigma_pq * s.sigma_pq -
         hbar * hbar * std::exp(2.0 * (entropy - 1.0));
}

double purity_gamma(const GaussianState& s, double hbar) {
  check_state(s, hbar);
  return std::min(1.0, hbar / (2.0 * std::sqrt(s.uncertainty())));
}

double linear_entropy(const GaussianState& s, double hbar) {
  return 1.0 - purity_gamma(s, hbar);
}

double linear_entropy_rate(const OscillatorSpec& osc, const DiffusionSpec& d,
                           const GaussianState& s) {
  const double h2 = osc.hbar() * osc.hbar();
  return 4.0 / h2 *
         (d.d_pp * s.sigma_qq + d.d_qq * s.sigma_pp - 2.0 * d.d_pq * s.sigma_pq -
          0.5 * h2 * osc.lambda());
}

double fluctuation_energy(const OscillatorSpec& osc, const GaussianState& s) {
  const double m = osc.mass();
  const double w = osc.omega();
  return s.sigma_pp / (2.0 * m) + 0.5 * m * w * w * s.sigma_qq +
         osc.mu() * s.sigma_pq;
}

DerivedScalars derive_scalars(const OscillatorSpec& osc, const DiffusionSpec& d,
                              const GaussianState& s, const CoherentWindow& w,
                              bool thermal) {
  const double h = osc.hbar();
  DerivedScalars out;
  out.sigma_det = s.uncertainty();
  out.nu = occupation_nu(s, h);
  out.s_vn = entropy_of_nu(out.nu);
  if (thermal) out.t_eff = effective_temperature(osc, s).value;
  out.gamma = purity_gamma(s, h);
  out.s_lin = 1.0 - out.gamma;
  out.s_lin_rate = linear_entropy_rate(osc, d, s);
  out.wehrl = wehrl_entropy_closed(s, w);
  out.energy = fluctuation_energy(osc, s);
  return out;
}

}  // namespace dho
