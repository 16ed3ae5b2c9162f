#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "dho/cli.hpp"
#include "dho/entropy.hpp"
#include "dho/errors.hpp"
#include "dho/propagator.hpp"
#include "dho/purity.hpp"
#include "dho/sampling.hpp"

namespace dho {
namespace {

struct Check {
  std::string name;
  std::function<double(ConfigSampler&)> worst;  // returns worst violation
  double tolerance;
};

double uncertainty_sweep(ConfigSampler& rng) {
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const OscillatorSpec osc = rng.oscillator();
    const DiffusionSpec d = rng.diffusion(osc);
    const GaussianState s0 = rng.state(osc.hbar());
    const double bound = 0.25 * osc.hbar() * osc.hbar();
    for (int i = 0; i <= 40; ++i) {
      const double t = 10.0 / osc.lambda() * i / 40.0;
      const GaussianState s = evolve(osc, d, s0, t);
      worst = std::max(worst, (bound - s.uncertainty()) / bound);
    }
  }
  return worst;
}

double oracle_sweep(ConfigSampler& rng) {
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const OscillatorSpec osc = rng.oscillator(0.1, 0.3);
    const DiffusionSpec d = rng.diffusion(osc);
    const GaussianState s0 = rng.state(osc.hbar());
    const double t = 5.0;
    const GaussianState a = evolve(osc, d, s0, t);
    const GaussianState b = ode_oracle(osc, d, s0, t, 1e-3);
    const double cross = std::sqrt(a.sigma_qq * a.sigma_pp);
    worst = std::max({worst, std::abs(a.sigma_qq - b.sigma_qq) / a.sigma_qq,
                      std::abs(a.sigma_pp - b.sigma_pp) / a.sigma_pp,
                      std::abs(a.sigma_pq - b.sigma_pq) / cross});
  }
  return worst;
}

double entropy_chain_sweep(ConfigSampler& rng) {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const GaussianState s = rng.state(1.0, 50.0);
    const CoherentWindow w = CoherentWindow::from_position_variance(
        rng.log_uniform(0.1, 10.0), 1.0);
    const double entropy = von_neumann_entropy(s, 1.0);
    const double wehrl = wehrl_entropy_closed(s, w);
    worst = std::max({worst, std::max(1.0, entropy) - wehrl,
                      linear_entropy(s, 1.0) - (1.0 - std::exp(-entropy)),
                      -minimized_uncertainty_bound(s, 1.0) / s.uncertainty()});
  }
  return worst;
}

double pure_preservation_sweep(ConfigSampler& rng) {
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const OscillatorSpec osc = rng.oscillator();
    const DiffusionSpec d = preset_pure_state(osc);
    const double eta = std::sqrt(osc.hbar() / (2.0 * osc.mass() * osc.big_omega()));
    const CCSpec ccs(eta, -osc.mu() / osc.omega(), rng.uniform(-1, 1),
                     rng.uniform(-1, 1), osc.hbar());
    for (int i = 0; i <= 20; ++i) {
      const double t = 100.0 / osc.lambda() * i / 20.0;
      const GaussianState s = evolve(osc, d, ccs.state(), t);
      worst = std::max({worst, std::abs(1.0 - purity_gamma(s, osc.hbar())),
                        std::abs(linear_entropy_rate(osc, d, s))});
    }
  }
  return worst;
}

}  // namespace

int run_selftest(std::uint64_t seed, std::ostream& out) {
  const Check checks[] = {
      {"uncertainty preserved along random trajectories", uncertainty_sweep, 1e-10},
      {"closed form matches RK4 oracle", oracle_sweep, 1e-8},
      {"entropy inequality chain", entropy_chain_sweep, 1e-12},
      {"pure preset keeps CCS pure", pure_preservation_sweep, 1e-10},
  };
  bool all = true;
  for (std::size_t i = 0; i < std::size(checks); ++i) {
    ConfigSampler rng(seed + i);
    double worst = 0.0;
    bool ok = false;
    try {
      worst = checks[i].worst(rng);
      ok = worst <= checks[i].tolerance;
    } catch (const std::exception& e) {
      out << "FAIL " << checks[i].name << " (" << e.what() << ")\n";
      all = false;
      continue;
    }
    out << (ok ? "PASS " : "FAIL ") << checks[i].name << " (worst "
        << format_double(worst) << ", tol " << format_double(checks[i].tolerance)
        << ")\n";
    all = all && ok;
  }
  out << (all ? "selftest passed" : "selftest failed") << " (seed " << seed
      << ")\n";
  return all ? kExitOk : kExitNumerical;
}

}  // namespace dho
