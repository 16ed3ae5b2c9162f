#include "dho/purity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dho/entropy.hpp"
#include "dho/errors.hpp"
#include "dho/propagator.hpp"

namespace dho {
namespace {

double relative(double value, double scale) {
  if (value == 0.0) return 0.0;
  const double floor = std::numeric_limits<double>::min();
  return std::abs(value) / std::max(scale, floor);
}

}  // namespace

double correlation_coefficient(const GaussianState& s) {
  if (!(s.sigma_qq > 0.0) || !(s.sigma_pp > 0.0)) {
    throw ValidationError("correlation coefficient needs positive variances");
  }
  return s.sigma_pq / std::sqrt(s.sigma_qq * s.sigma_pp);
}

std::optional<CCSpec> identify_ccs(const GaussianState& s, double hbar) {
  if (!(s.sigma_qq > 0.0) || !(s.sigma_pp > 0.0)) return std::nullopt;
  const double bound = 0.25 * hbar * hbar;
  if (std::abs(s.uncertainty() - bound) > kPurityRelTol * bound) {
    return std::nullopt;
  }
  const double r = correlation_coefficient(s);
  if (!(std::abs(r) < 1.0)) return std::nullopt;
  return CCSpec(std::sqrt(s.sigma_qq), r, s.sigma_q, s.sigma_p, hbar);
}

PurityReport check_pure_preserving(const OscillatorSpec& osc,
                                   const DiffusionSpec& d,
                                   const GaussianState& s) {
  const double h = osc.hbar();
  const double l = osc.lambda();
  const double bound = 0.25 * h * h;
  const double det = d.determinant();
  const double h2l4 = 0.25 * h * h * l;

  PurityReport rep;
  rep.t = s.t;
  rep.sigma_det = s.uncertainty();
  rep.gamma = purity_gamma(s, h);
  rep.is_pure = std::abs(rep.sigma_det - bound) <= kPurityRelTol * bound;
  rep.r = correlation_coefficient(s);
  rep.ccs = identify_ccs(s, h);

  auto& res = rep.residuals;
  res.determinant = relative(det - h2l4 * l,
                             std::max(std::abs(d.d_pp * d.d_qq), h2l4 * l));
  res.position = relative(
      d.d_pp * s.sigma_qq - d.d_pq * s.sigma_pq - h2l4,
      std::abs(d.d_pp * s.sigma_qq) + std::abs(d.d_pq * s.sigma_pq) + h2l4);
  const double root_d = std::sqrt(std::abs(d.d_pp * d.d_qq));
  res.correlation = relative(
      s.sigma_pq * det - h2l4 * d.d_pq,
      std::sqrt(s.sigma_qq * s.sigma_pp) * std::abs(det) + h2l4 * root_d);
  const double dissip_terms = std::abs(d.d_pp * s.sigma_qq) +
                              std::abs(d.d_qq * s.sigma_pp) +
                              2.0 * std::abs(d.d_pq * s.sigma_pq) + 2.0 * h2l4;
  res.dissipativity = relative(d.d_pp * s.sigma_qq + d.d_qq * s.sigma_pp -
                                   2.0 * d.d_pq * s.sigma_pq - 2.0 * h2l4,
                               dissip_terms);
  if (l > 0.0) {
    const double cross = std::sqrt(s.sigma_qq * s.sigma_pp);
    res.constancy = std::max(
        {relative(s.sigma_qq - d.d_qq / l, s.sigma_qq),
         relative(s.sigma_pp - d.d_pp / l, s.sigma_pp),
         relative(s.sigma_pq - d.d_pq / l, cross)});
  } else {
    res.constancy = std::numeric_limits<double>::infinity();
  }
  res.uncertainty = relative(rep.sigma_det - bound, bound);

  rep.preserving = res.determinant < kPreservingRelTol &&
                   res.position < kPreservingRelTol &&
                   res.correlation < kPreservingRelTol &&
                   res.dissipativity < kPreservingRelTol &&
                   res.constancy < kPreservingRelTol;
  return rep;
}

std::vector<PurityReport> purity_scan(const OscillatorSpec& osc,
                                      const DiffusionSpec& d,
                                      const GaussianState& s0,
                                      std::span<const double> times) {
  check_times(times);
  std::vector<PurityReport> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back(check_pure_preserving(osc, d, evolve(osc, d, s0, t)));
  }
  return out;
}

double constant_pure_energy(const OscillatorSpec& osc, const DiffusionSpec& d) {
  if (!(osc.lambda() > 0.0)) {
    throw ValidationError("constant pure-state energy requires lambda > 0");
  }
  const double m = osc.mass();
  const double w = osc.omega();
  return (d.d_pp / (2.0 * m) + 0.5 * m * w * w * d.d_qq + osc.mu() * d.d_pq) /
         osc.lambda();
}

}  // namespace dho
