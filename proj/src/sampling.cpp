#include "dho/sampling.hpp"

#include <cmath>

namespace dho {

double ConfigSampler::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

OscillatorSpec ConfigSampler::oscillator(double lambda_lo, double lambda_hi,
                                         double mu_max, UnitSystem units) {
  const double lambda = uniform(lambda_lo, lambda_hi);
  const double mu = uniform(-mu_max, mu_max);
  return OscillatorSpec(1.0, 1.0, lambda, mu, units);
}

DiffusionSpec ConfigSampler::diffusion(const OscillatorSpec& osc, double excess) {
  const double h = osc.hbar();
  const double l = osc.lambda();
  const double bound = 0.25 * l * l * h * h;
  const double scale = h * l / (2.0 * osc.mass() * osc.omega());
  DiffusionSpec d;
  d.d_qq = scale * log_uniform(0.2, 5.0);
  d.d_pq = uniform(-1.0, 1.0) * 0.5 * h * l;
  d.d_pp = (d.d_pq * d.d_pq + bound * (1.0 + uniform(0.0, excess))) / d.d_qq;
  return d;
}

GaussianState ConfigSampler::state(double hbar, double mix) {
  GaussianState s;
  s.sigma_q = uniform(-2.0, 2.0);
  s.sigma_p = uniform(-2.0, 2.0);
  s.sigma_qq = 0.5 * hbar * log_uniform(0.25, 4.0);
  const double r = uniform(-0.9, 0.9);
  const double area = 0.5 * hbar * (1.0 + uniform(0.0, mix));
  // sigma_qq sigma_pp (1 - r^2) = area^2
  s.sigma_pp = area * area / (s.sigma_qq * (1.0 - r * r));
  s.sigma_pq = r * std::sqrt(s.sigma_qq * s.sigma_pp);
  return s;
}

}  // namespace dho
