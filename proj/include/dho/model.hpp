#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace dho {

using Complex = std::complex<double>;

struct UnitSystem {
  double hbar = 1.0;
  double boltzmann = 1.0;

  /// Throws ValidationError unless both constants are strictly positive.
  void check() const;
};

/// Oscillator with Hamiltonian p^2/2m + m w^2 q^2/2 + (mu/2)(qp + pq),
/// friction rate lambda. Only the underdamped regime omega > |mu| is accepted.
class OscillatorSpec {
 public:
  OscillatorSpec(double mass, double omega, double lambda, double mu,
                 UnitSystem units = {});

  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  const UnitSystem& units() const { return units_; }
  double hbar() const { return units_.hbar; }
  /// Oscillation frequency sqrt(omega^2 - mu^2).
  double big_omega() const { return big_omega_; }

  /// Weak coupling sanity flag: true when lambda >= omega.
  bool strong_damping_warning() const { return lambda_ >= omega_; }

  /// Copy with a different friction rate (same validation).
  OscillatorSpec with_lambda(double lambda) const;

 private:
  double mass_;
  double omega_;
  double lambda_;
  double mu_;
  UnitSystem units_;
  double big_omega_;
};

struct DiffusionSpec {
  double d_qq = 0.0;
  double d_pp = 0.0;
  double d_pq = 0.0;

  double determinant() const { return d_pp * d_qq - d_pq * d_pq; }
};

/// Coefficients (a_j, b_j) of environment operators V_j = a_j p + b_j q.
class LindbladOps {
 public:
  using Pair = std::pair<Complex, Complex>;

  /// Throws ValidationError unless 1 <= ops.size() <= 2.
  explicit LindbladOps(std::vector<Pair> ops);

  const std::vector<Pair>& ops() const { return ops_; }

 private:
  std::vector<Pair> ops_;
};

struct OperatorCoefficients {
  DiffusionSpec diffusion;
  double lambda = 0.0;
};

/// D_qq = (hbar/2) sum |a|^2, D_pp = (hbar/2) sum |b|^2,
/// D_pq = -(hbar/2) Re sum a* b, lambda = -Im sum a* b.
OperatorCoefficients coefficients_from_ops(const LindbladOps& ops,
                                           const UnitSystem& units);

/// Scalar c in [V, V^dagger] = c * identity for a single operator a p + b q.
double commutator_coefficient(const LindbladOps::Pair& op,
                              const UnitSystem& units);

struct ConstraintReport {
  bool d_pp_positive = false;
  bool d_qq_positive = false;
  bool determinant_ok = false;
  /// d_pp d_qq - d_pq^2 - lambda^2 hbar^2 / 4
  double margin = 0.0;

  bool ok() const { return d_pp_positive && d_qq_positive && determinant_ok; }
};

/// Relative tolerance used for the determinant constraint so that presets
/// saturating it exactly still pass after rounding.
inline constexpr double kDeterminantRelTol = 1e-12;

ConstraintReport validate(const DiffusionSpec& diff, const OscillatorSpec& osc);

/// Coefficients whose asymptotic state is the Gibbs state at `temperature`.
/// Requires lambda > |mu|.
DiffusionSpec preset_gibbs(const OscillatorSpec& osc, double temperature);

/// Coefficients under which correlated coherent states stay pure.
DiffusionSpec preset_pure_state(const OscillatorSpec& osc);

/// The single operator generating preset_pure_state (up to a phase):
/// V = sqrt(2 / (hbar D_qq)) [ (lambda hbar / 2 - i D_pq) q + i D_qq p ].
LindbladOps pure_state_operator(const OscillatorSpec& osc);

/// Quantum Brownian motion operator V = (2D)^{-1/2} (q + 2 i gamma D p / hbar)
/// with D = hbar^2 / (8 m gamma k T).
LindbladOps caldeira_leggett_operator(const OscillatorSpec& osc, double gamma,
                                      double temperature);

}  // namespace dho
