#include "dho/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dho/errors.hpp"

namespace dho {

void UnitSystem::check() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw ValidationError("hbar must be positive");
  }
  if (!(boltzmann > 0.0) || !std::isfinite(boltzmann)) {
    throw ValidationError("boltzmann constant must be positive");
  }
}

OscillatorSpec::OscillatorSpec(double mass, double omega, double lambda,
                               double mu, UnitSystem units)
    : mass_(mass), omega_(omega), lambda_(lambda), mu_(mu), units_(units) {
  units_.check();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ValidationError("mass must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("omega must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be non-negative");
  }
  if (!std::isfinite(mu)) {
    throw ValidationError("mu must be finite");
  }
  if (!(omega > std::abs(mu))) {
    std::ostringstream msg;
    msg << "underdamped required: omega (" << omega << ") must exceed |mu| ("
        << std::abs(mu) << ")";
    throw ValidationError(msg.str());
  }
  big_omega_ = std::sqrt((omega - mu) * (omega + mu));
}

OscillatorSpec OscillatorSpec::with_lambda(double lambda) const {
  return OscillatorSpec(mass_, omega_, lambda, mu_, units_);
}

LindbladOps::LindbladOps(std::vector<Pair> ops) : ops_(std::move(ops)) {
  if (ops_.empty() || ops_.size() > 2) {
    throw ValidationError(
        "between one and two linearly independent Lindblad operators allowed");
  }
  for (const auto& [a, b] : ops_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) ||
        !std::isfinite(b.real()) || !std::isfinite(b.imag())) {
      throw ValidationError("Lindblad operator coefficients must be finite");
    }
  }
}

OperatorCoefficients coefficients_from_ops(const LindbladOps& ops,
                                           const UnitSystem& units) {
  double sum_a2 = 0.0;
  double sum_b2 = 0.0;
  Complex sum_ab{0.0, 0.0};
  for (const auto& [a, b] : ops.ops()) {
    sum_a2 += std::norm(a);
    sum_b2 += std::norm(b);
    sum_ab += std::conj(a) * b;
  }
  const double h = units.hbar;
  OperatorCoefficients out;
  out.diffusion.d_qq = 0.5 * h * sum_a2;
  out.diffusion.d_pp = 0.5 * h * sum_b2;
  out.diffusion.d_pq = -0.5 * h * sum_ab.real();
  out.lambda = -sum_ab.imag();

  // Cauchy-Schwarz guarantees the determinant constraint.
  const double margin = out.diffusion.determinant() -
                        0.25 * out.lambda * out.lambda * h * h;
  const double scale = out.diffusion.d_pp * out.diffusion.d_qq;
  if (margin < -1e-12 * std::max(scale, 1e-300)) {
    throw ConsistencyError("operator coefficients violate determinant bound");
  }
  return out;
}

double commutator_coefficient(const LindbladOps::Pair& op,
                              const UnitSystem& units) {
  // [a p + b q, a* p + b* q] = -i hbar (a b* - a* b) = 2 hbar Im(a b*)
  const auto& [a, b] = op;
  return 2.0 * units.hbar * (a * std::conj(b)).imag();
}

ConstraintReport validate(const DiffusionSpec& diff,
                          const OscillatorSpec& osc) {
  ConstraintReport report;
  const double h = osc.hbar();
  const double bound = 0.25 * osc.lambda() * osc.lambda() * h * h;
  report.d_pp_positive = diff.d_pp > 0.0;
  report.d_qq_positive = diff.d_qq > 0.0;
  report.margin = diff.determinant() - bound;
  const double scale = std::max(std::abs(diff.d_pp * diff.d_qq), bound);
  report.determinant_ok = report.margin >= -kDeterminantRelTol * scale;
  return report;
}

DiffusionSpec preset_gibbs(const OscillatorSpec& osc, double temperature) {
  if (!(temperature > 0.0)) {
    throw ValidationError("temperature must be positive");
  }
  const double lambda = osc.lambda();
  const double mu = osc.mu();
  if (!(lambda > std::abs(mu))) {
    throw ValidationError(
        "gibbs preset requires lambda > |mu| for the fundamental constraints");
  }
  const double h = osc.hbar();
  const double mw = osc.mass() * osc.omega();
  const double x = h * osc.omega() / (2.0 * osc.units().boltzmann * temperature);
  const double coth = 1.0 / std::tanh(x);
  DiffusionSpec d;
  d.d_pp = 0.5 * (lambda + mu) * h * mw * coth;
  d.d_qq = 0.5 * (lambda - mu) * h / mw * coth;
  d.d_pq = 0.0;
  return d;
}

DiffusionSpec preset_pure_state(const OscillatorSpec& osc) {
  const double h = osc.hbar();
  const double lambda = osc.lambda();
  const double m = osc.mass();
  const double w = osc.omega();
  const double big = osc.big_omega();
  DiffusionSpec d;
  d.d_qq = h * lambda / (2.0 * m * big);
  d.d_pp = h * lambda * m * w * w / (2.0 * big);
  d.d_pq = -h * lambda * osc.mu() / (2.0 * big);
  return d;
}

LindbladOps pure_state_operator(const OscillatorSpec& osc) {
  if (!(osc.lambda() > 0.0)) {
    throw ValidationError("pure-state operator requires lambda > 0");
  }
  const DiffusionSpec d = preset_pure_state(osc);
  const double h = osc.hbar();
  const double norm = std::sqrt(2.0 / (h * d.d_qq));
  const Complex a = norm * Complex(0.0, d.d_qq);
  const Complex b = norm * Complex(0.5 * osc.lambda() * h, -d.d_pq);
  return LindbladOps({{a, b}});
}

LindbladOps caldeira_leggett_operator(const OscillatorSpec& osc, double gamma,
                                      double temperature) {
  if (!(gamma > 0.0) || !(temperature > 0.0)) {
    throw ValidationError("gamma and temperature must be positive");
  }
  const double h = osc.hbar();
  const double diff = h * h / (8.0 * osc.mass() * gamma *
                               osc.units().boltzmann * temperature);
  const double norm = 1.0 / std::sqrt(2.0 * diff);
  const Complex a = norm * Complex(0.0, 2.0 * gamma * diff / h);
  const Complex b{norm, 0.0};
  return LindbladOps({{a, b}});
}

}  // namespace dho
