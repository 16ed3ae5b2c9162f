#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "dho/model.hpp"
#include "dho/state.hpp"

namespace dho {

/// Minimum-uncertainty smoothing window, s_qq s_pp = hbar^2/4.
class CoherentWindow {
 public:
  CoherentWindow() = default;
  /// Throws ValidationError unless s_qq, s_pp > 0 and their product equals
  /// hbar^2/4 within 1e-12 relative.
  CoherentWindow(double s_qq, double s_pp, double hbar);

  /// Window with position variance s_qq and the conjugate s_pp.
  static CoherentWindow from_position_variance(double s_qq, double hbar);
  /// Oscillator-matched window s_qq = hbar / (2 m w).
  static CoherentWindow matched(const OscillatorSpec& osc);

  double s_qq() const { return s_qq_; }
  double s_pp() const { return s_pp_; }
  double hbar() const { return hbar_; }

 private:
  double s_qq_ = 0.5;
  double s_pp_ = 0.5;
  double hbar_ = 1.0;
};

enum class Measure {
  /// dq dp, used for Wigner functions.
  Plain,
  /// dq dp / (2 pi hbar), used for Husimi distributions.
  PerCell,
};

struct GridAxes {
  double q_min = -1.0;
  double q_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;
  std::size_t n_q = 512;
  std::size_t n_p = 512;

  /// Throws ValidationError on non-finite or inverted bounds or counts < 2.
  void check() const;
  double dq() const { return (q_max - q_min) / static_cast<double>(n_q - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(n_p - 1); }
  double q(std::size_t i) const { return q_min + dq() * static_cast<double>(i); }
  double p(std::size_t j) const { return p_min + dp() * static_cast<double>(j); }
};

/// Rectangular box of `n_sigma` standard deviations around the state means.
GridAxes axes_around(const GaussianState& state, double n_sigma,
                     std::size_t n_q = 512, std::size_t n_p = 512);

/// Sampled phase-space function; values stored row-major with q as the
/// slow index: values[i * n_p + j] = f(q_i, p_j).
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(GridAxes axes, Measure measure, double hbar);

  const GridAxes& axes() const { return axes_; }
  Measure measure() const { return measure_; }
  double hbar() const { return hbar_; }
  const std::vector<double>& values() const { return values_; }
  double& at(std::size_t i, std::size_t j) { return values_[i * axes_.n_p + j]; }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * axes_.n_p + j];
  }

  /// Composite trapezoid of the stored values under the grid measure.
  double integrate() const;
  /// Trapezoid of f(value) under the grid measure.
  template <typename F>
  double integrate(F&& f) const;

  /// Largest absolute value on the outer boundary.
  double boundary_max() const;

 private:
  GridAxes axes_;
  Measure measure_;
  double hbar_;
  std::vector<double> values_;
};

template <typename F>
double PhaseSpaceGrid::integrate(F&& f) const {
  const std::size_t nq = axes_.n_q;
  const std::size_t np = axes_.n_p;
  double sum = 0.0;
  for (std::size_t i = 0; i < nq; ++i) {
    const double wq = (i == 0 || i + 1 == nq) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
      row += wp * f(values_[i * np + j]);
    }
    sum += wq * row;
  }
  double cell = axes_.dq() * axes_.dp();
  if (measure_ == Measure::PerCell) {
    cell /= 2.0 * 3.14159265358979323846 * hbar_;
  }
  return sum * cell;
}

double wigner_at(const GaussianState& state, double q, double p);

/// Husimi distribution of a Gaussian state, normalized w.r.t. dq dp/(2 pi hbar).
double husimi_at(const GaussianState& state, const CoherentWindow& window,
                 double q, double p);

/// Determinant of the Husimi covariance matrix sigma + diag(s_qq, s_pp).
double husimi_determinant(const GaussianState& state,
                          const CoherentWindow& window);

PhaseSpaceGrid sample_wigner(const GaussianState& state, const GridAxes& axes,
                             double hbar);
PhaseSpaceGrid sample_husimi(const GaussianState& state,
                             const CoherentWindow& window,
                             const GridAxes& axes);

/// Coordinate representation <x|rho|y> of the Gaussian density operator.
std::complex<double> density_kernel_at(const GaussianState& state, double x,
                                       double y, double hbar);

struct MomentumQuadrature {
  /// Half-width in momentum standard deviations around sigma_p.
  double n_sigma = 8.0;
  std::size_t points = 4096;
};

/// Trapezoid evaluation of the inverse Fourier transform
/// <x|rho|y> = int dp exp(i p (x - y) / hbar) W((x + y)/2, p).
std::complex<double> wigner_to_kernel_oracle(const GaussianState& state,
                                             double x, double y, double hbar,
                                             const MomentumQuadrature& grid = {});

/// Correlated (squeezed) coherent state. The complex displacement alpha is
/// carried through the means sigma_q, sigma_p.
class CCSpec {
 public:
  /// Throws ValidationError unless eta > 0 and |r| < 1.
  CCSpec(double eta, double r, double sigma_q, double sigma_p, double hbar);

  /// Builds from the eigenvalue alpha of the annihilation-like operator
  /// a_{r,eta} = (1 - i r / sqrt(1 - r^2)) q / (2 eta) + i eta p / hbar.
  static CCSpec from_alpha(double eta, double r, std::complex<double> alpha,
                           double hbar);
  /// Glauber coherent state of the oscillator: r = 0, eta^2 = hbar/(2 m w).
  static CCSpec coherent(const OscillatorSpec& osc, std::complex<double> alpha);

  double eta() const { return eta_; }
  double r() const { return r_; }
  double sigma_q() const { return sigma_q_; }
  double sigma_p() const { return sigma_p_; }
  double hbar() const { return hbar_; }
  std::complex<double> alpha() const;

  /// Moments at t = 0; satisfy sigma = hbar^2/4.
  GaussianState state(double t = 0.0) const;

 private:
  double eta_;
  double r_;
  double sigma_q_;
  double sigma_p_;
  double hbar_;
};

/// Normalized CCS wavefunction
/// (2 pi s_qq)^{-1/4} exp[-(1 - 2 i s_pq / hbar)(x - s_q)^2 / (4 s_qq) + i s_p x / hbar].
std::complex<double> ccs_wavefunction_at(const CCSpec& ccs, double x);

/// Wigner function of a CCS written through (eta, r).
double ccs_wigner_at(const CCSpec& ccs, double q, double p);

}  // namespace dho
