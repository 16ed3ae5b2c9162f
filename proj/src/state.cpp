#include "dho/state.hpp"

#include <cmath>
#include <sstream>

#include "dho/errors.hpp"

namespace dho {

void check_state(const GaussianState& s, double hbar) {
  if (!std::isfinite(s.sigma_q) || !std::isfinite(s.sigma_p) ||
      !std::isfinite(s.sigma_qq) || !std::isfinite(s.sigma_pp) ||
      !std::isfinite(s.sigma_pq)) {
    throw ValidationError("state moments must be finite");
  }
  if (!(s.sigma_qq > 0.0) || !(s.sigma_pp > 0.0)) {
    throw ValidationError("state variances must be positive");
  }
  const double bound = 0.25 * hbar * hbar;
  if (s.uncertainty() < bound * (1.0 - kUncertaintyRelTol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state violates the uncertainty relation: sigma = "
        << s.uncertainty() << " < hbar^2/4 = " << bound;
    throw ValidationError(msg.str());
  }
}

GaussianState ground_state(double mass, double omega, double hbar) {
  GaussianState s;
  s.sigma_qq = hbar / (2.0 * mass * omega);
  s.sigma_pp = 0.5 * hbar * mass * omega;
  s.sigma_pq = 0.0;
  return s;
}

}  // namespace dho
