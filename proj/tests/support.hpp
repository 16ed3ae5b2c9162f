#pragma once

// Independent reference expressions used as oracles by the tests. Nothing
// here calls into the library's evaluators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "dho/model.hpp"
#include "dho/phasespace.hpp"
#include "dho/state.hpp"

namespace dho::test {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

inline double rel(double a, double b, double scale) {
  return std::abs(a - b) / scale;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

/// Worst moment discrepancy. Means are measured against their spread,
/// sigma_pq against sqrt(sigma_qq sigma_pp).
inline double moment_error(const GaussianState& a, const GaussianState& b) {
  const double cross = std::sqrt(b.sigma_qq * b.sigma_pp);
  const double sq = std::max(std::abs(b.sigma_q), std::sqrt(b.sigma_qq));
  const double sp = std::max(std::abs(b.sigma_p), std::sqrt(b.sigma_pp));
  return std::max({rel(a.sigma_q, b.sigma_q, sq), rel(a.sigma_p, b.sigma_p, sp),
                   rel(a.sigma_qq, b.sigma_qq), rel(a.sigma_pp, b.sigma_pp),
                   rel(a.sigma_pq, b.sigma_pq, cross)});
}

/// Thermal variances (hbar/2mw) coth and (hbar m w / 2) coth.
inline double thermal_coth(const OscillatorSpec& osc, double temperature) {
  return 1.0 / std::tanh(osc.hbar() * osc.omega() /
                         (2.0 * osc.units().boltzmann * temperature));
}

/// Gaussian Wigner function written out from the moments.
inline double gaussian_wigner(const GaussianState& s, double q, double p) {
  const double det = s.uncertainty();
  const double dq = q - s.sigma_q;
  const double dp = p - s.sigma_p;
  return std::exp(-(s.sigma_pp * dq * dq + s.sigma_qq * dp * dp -
                    2.0 * s.sigma_pq * dq * dp) /
                  (2.0 * det)) /
         (2.0 * kPi * std::sqrt(det));
}

/// General coordinate kernel <x|rho|y> of a Gaussian state.
inline cd general_kernel(const GaussianState& s, double x, double y,
                         double hbar) {
  const double c = 0.5 * (x + y) - s.sigma_q;
  const double d = x - y;
  const cd i(0.0, 1.0);
  const cd expo =
      -c * c / (2.0 * s.sigma_qq) -
      (s.sigma_pp - s.sigma_pq * s.sigma_pq / s.sigma_qq) * d * d /
          (2.0 * hbar * hbar) +
      i * s.sigma_pq * c * d / (hbar * s.sigma_qq) + i * s.sigma_p * d / hbar;
  return std::sqrt(1.0 / (2.0 * kPi * s.sigma_qq)) * std::exp(expo);
}

/// Stationary kernel with zero means.
inline cd steady_kernel(const GaussianState& s, double x, double y,
                        double hbar) {
  const cd i(0.0, 1.0);
  const double d = x - y;
  const cd expo =
      -(x + y) * (x + y) / (8.0 * s.sigma_qq) -
      (s.sigma_pp - s.sigma_pq * s.sigma_pq / s.sigma_qq) * d * d /
          (2.0 * hbar * hbar) +
      i * s.sigma_pq * (x * x - y * y) / (2.0 * hbar * s.sigma_qq);
  return std::sqrt(1.0 / (2.0 * kPi * s.sigma_qq)) * std::exp(expo);
}

/// Kernel of a CCS evolving under the purity-preserving environment, given
/// the mean trajectory.
inline cd pure_evolved_kernel(const OscillatorSpec& osc, double sigma_q,
                              double sigma_p, double x, double y) {
  const double h = osc.hbar();
  const double m = osc.mass();
  const double w = osc.big_omega();
  const double c = 0.5 * (x + y) - sigma_q;
  const double d = x - y;
  const cd i(0.0, 1.0);
  const cd expo = -(m * w / h) * c * c - (m * w / (4.0 * h)) * d * d -
                  i * m * osc.mu() * c * d / h + i * sigma_p * d / h;
  return std::sqrt(m * w / (kPi * h)) * std::exp(expo);
}

inline cd pure_steady_kernel(const OscillatorSpec& osc, double x, double y) {
  const double h = osc.hbar();
  const double m = osc.mass();
  const double w = osc.big_omega();
  const cd i(0.0, 1.0);
  return std::sqrt(m * w / (kPi * h)) *
         std::exp(-(m / (2.0 * h)) *
                  (w * (x * x + y * y) + i * osc.mu() * (x * x - y * y)));
}

inline double pure_steady_wigner(const OscillatorSpec& osc, double q,
                                 double p) {
  const double h = osc.hbar();
  const double m = osc.mass();
  const double w = osc.omega();
  return std::exp(-(p * p / m + m * w * w * q * q + 2.0 * osc.mu() * q * p) /
                  (h * osc.big_omega())) /
         (kPi * h);
}

/// Composite Simpson on [a, b] with an even number of panels.
template <typename F>
auto simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  auto sum = f(a) + f(b);
  for (int k = 1; k < panels; ++k) {
    sum += (k % 2 ? 4.0 : 2.0) * f(a + h * k);
  }
  return sum * (h / 3.0);
}

/// W(q, p) = (1/pi hbar) int dy psi*(q + y) psi(q - y) exp(2 i p y / hbar)
/// with psi given by a callable.
template <typename Psi>
double wigner_from_wavefunction(Psi&& psi, double q, double p, double hbar,
                                double half_width, int panels = 2000) {
  const cd v = simpson(
      [&](double y) {
        return std::conj(psi(q + y)) * psi(q - y) *
               std::exp(cd(0.0, 2.0 * p * y / hbar));
      },
      -half_width, half_width, panels);
  return v.real() / (kPi * hbar);
}

/// Five-moment RK4 written out from the equations of motion.
inline GaussianState rk4_moments(const OscillatorSpec& osc,
                                 const DiffusionSpec& d, GaussianState s,
                                 double t, int steps) {
  const double m = osc.mass();
  const double w2 = osc.omega() * osc.omega();
  const double l = osc.lambda();
  const double mu = osc.mu();
  using V = std::array<double, 5>;
  auto rhs = [&](const V& y) {
    return V{-(l - mu) * y[0] + y[1] / m,
             -m * w2 * y[0] - (l + mu) * y[1],
             -2.0 * (l - mu) * y[2] + 2.0 * y[4] / m + 2.0 * d.d_qq,
             -2.0 * (l + mu) * y[3] - 2.0 * m * w2 * y[4] + 2.0 * d.d_pp,
             -m * w2 * y[2] + y[3] / m - 2.0 * l * y[4] + 2.0 * d.d_pq};
  };
  V y{s.sigma_q, s.sigma_p, s.sigma_qq, s.sigma_pp, s.sigma_pq};
  const double h = t / steps;
  for (int n = 0; n < steps; ++n) {
    V k1 = rhs(y), tmp;
    for (int i = 0; i < 5; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    V k2 = rhs(tmp);
    for (int i = 0; i < 5; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    V k3 = rhs(tmp);
    for (int i = 0; i < 5; ++i) tmp[i] = y[i] + h * k3[i];
    V k4 = rhs(tmp);
    for (int i = 0; i < 5; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  s.sigma_q = y[0];
  s.sigma_p = y[1];
  s.sigma_qq = y[2];
  s.sigma_pp = y[3];
  s.sigma_pq = y[4];
  s.t += t;
  return s;
}

}  // namespace dho::test
