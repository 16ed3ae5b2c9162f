#include "dho/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dho/errors.hpp"

namespace dho {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

CoherentWindow::CoherentWindow(double s_qq, double s_pp, double hbar)
    : s_qq_(s_qq), s_pp_(s_pp), hbar_(hbar) {
  if (!(s_qq > 0.0) || !(s_pp > 0.0) || !(hbar > 0.0)) {
    throw ValidationError("coherent window variances must be positive");
  }
  const double target = 0.25 * hbar * hbar;
  if (std::abs(s_qq * s_pp - target) > 1e-12 * target) {
    throw ValidationError("coherent window must satisfy s_qq s_pp = hbar^2/4");
  }
}

CoherentWindow CoherentWindow::from_position_variance(double s_qq, double hbar) {
  if (!(s_qq > 0.0)) {
    throw ValidationError("coherent window variances must be positive");
  }
  return CoherentWindow(s_qq, 0.25 * hbar * hbar / s_qq, hbar);
}

CoherentWindow CoherentWindow::matched(const OscillatorSpec& osc) {
  return from_position_variance(osc.hbar() / (2.0 * osc.mass() * osc.omega()),
                                osc.hbar());
}

void GridAxes::check() const {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(p_min) ||
      !std::isfinite(p_max)) {
    throw ValidationError("grid bounds must be finite");
  }
  if (!(q_min < q_max) || !(p_min < p_max)) {
    throw ValidationError("grid bounds must satisfy min < max");
  }
  if (n_q < 2 || n_p < 2) {
    throw ValidationError("grid needs at least two points per axis");
  }
}

GridAxes axes_around(const GaussianState& s, double n_sigma, std::size_t n_q,
                     std::size_t n_p) {
  const double wq = n_sigma * std::sqrt(s.sigma_qq);
  const double wp = n_sigma * std::sqrt(s.sigma_pp);
  return {s.sigma_q - wq, s.sigma_q + wq, s.sigma_p - wp, s.sigma_p + wp,
          n_q, n_p};
}

PhaseSpaceGrid::PhaseSpaceGrid(GridAxes axes, Measure measure, double hbar)
    : axes_(axes), measure_(measure), hbar_(hbar) {
  axes_.check();
  values_.assign(axes_.n_q * axes_.n_p, 0.0);
}

double PhaseSpaceGrid::integrate() const {
  return integrate([](double v) { return v; });
}

double PhaseSpaceGrid::boundary_max() const {
  double best = 0.0;
  const std::size_t nq = axes_.n_q;
  const std::size_t np = axes_.n_p;
  for (std::size_t i = 0; i < nq; ++i) {
    best = std::max({best, std::abs(at(i, 0)), std::abs(at(i, np - 1))});
  }
  for (std::size_t j = 0; j < np; ++j) {
    best = std::max({best, std::abs(at(0, j)), std::abs(at(nq - 1, j))});
  }
  return best;
}

double wigner_at(const GaussianState& s, double q, double p) {
  const double sigma = s.uncertainty();
  const double dq = q - s.sigma_q;
  const double dp = p - s.sigma_p;
  const double quad =
      s.sigma_pp * dq * dq + s.sigma_qq * dp * dp - 2.0 * s.sigma_pq * dq * dp;
  return std::exp(-quad / (2.0 * sigma)) / (2.0 * kPi * std::sqrt(sigma));
}

double husimi_determinant(const GaussianState& s, const CoherentWindow& w) {
  return (s.sigma_qq + w.s_qq()) * (s.sigma_pp + w.s_pp()) -
         s.sigma_pq * s.sigma_pq;
}

double husimi_at(const GaussianState& s, const CoherentWindow& w, double q,
                 double p) {
  const double cqq = s.sigma_qq + w.s_qq();
  const double cpp = s.sigma_pp + w.s_pp();
  const double det = husimi_determinant(s, w);
  const double dq = q - s.sigma_q;
  const double dp = p - s.sigma_p;
  const double quad = cpp * dq * dq + cqq * dp * dp - 2.0 * s.sigma_pq * dq * dp;
  return w.hbar() / std::sqrt(det) * std::exp(-quad / (2.0 * det));
}

PhaseSpaceGrid sample_wigner(const GaussianState& s, const GridAxes& axes,
                             double hbar) {
  PhaseSpaceGrid grid(axes, Measure::Plain, hbar);
  for (std::size_t i = 0; i < axes.n_q; ++i) {
    for (std::size_t j = 0; j < axes.n_p; ++j) {
      grid.at(i, j) = wigner_at(s, axes.q(i), axes.p(j));
    }
  }
  return grid;
}

PhaseSpaceGrid sample_husimi(const GaussianState& s, const CoherentWindow& w,
                             const GridAxes& axes) {
  PhaseSpaceGrid grid(axes, Measure::PerCell, w.hbar());
  for (std::size_t i = 0; i < axes.n_q; ++i) {
    for (std::size_t j = 0; j < axes.n_p; ++j) {
      grid.at(i, j) = husimi_at(s, w, axes.q(i), axes.p(j));
    }
  }
  return grid;
}

std::complex<double> density_kernel_at(const GaussianState& s, double x,
                                       double y, double hbar) {
  const double c = 0.5 * (x + y) - s.sigma_q;
  const double d = x - y;
  const double h2 = hbar * hbar;
  const double re = -c * c / (2.0 * s.sigma_qq) -
                    (s.sigma_pp - s.sigma_pq * s.sigma_pq / s.sigma_qq) * d * d /
                        (2.0 * h2);
  const double im = s.sigma_pq / (hbar * s.sigma_qq) * c * d + s.sigma_p * d / hbar;
  const double amp = std::sqrt(1.0 / (2.0 * kPi * s.sigma_qq));
  return amp * std::exp(std::complex<double>(re, im));
}

std::complex<double> wigner_to_kernel_oracle(const GaussianState& s, double x,
                                             double y, double hbar,
                                             const MomentumQuadrature& grid) {
  if (grid.points < 2 || !(grid.n_sigma > 0.0)) {
    throw ValidationError("momentum quadrature needs >= 2 points and width > 0");
  }
  const double q = 0.5 * (x + y);
  const double center = s.sigma_p + s.sigma_pq / s.sigma_qq * (q - s.sigma_q);
  const double half = grid.n_sigma * std::sqrt(s.sigma_pp);
  const double lo = center - half;
  const double dp = 2.0 * half / static_cast<double>(grid.points - 1);
  const double d = x - y;
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < grid.points; ++k) {
    const double p = lo + dp * static_cast<double>(k);
    const double weight = (k == 0 || k + 1 == grid.points) ? 0.5 : 1.0;
    sum += weight * wigner_at(s, q, p) *
           std::exp(std::complex<double>(0.0, p * d / hbar));
  }
  return sum * dp;
}

CCSpec::CCSpec(double eta, double r, double sigma_q, double sigma_p, double hbar)
    : eta_(eta), r_(r), sigma_q_(sigma_q), sigma_p_(sigma_p), hbar_(hbar) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ValidationError("ccs width eta must be positive");
  }
  if (!(std::abs(r) < 1.0)) {
    throw ValidationError("ccs correlation coefficient must satisfy |r| < 1");
  }
  if (!(hbar > 0.0)) {
    throw ValidationError("hbar must be positive");
  }
}

// alpha = (1 - i kappa) s_q / (2 eta) + i eta s_p / hbar, kappa = r/sqrt(1-r^2)
CCSpec CCSpec::from_alpha(double eta, double r, std::complex<double> alpha,
                          double hbar) {
  if (!(std::abs(r) < 1.0)) {
    throw ValidationError("ccs correlation coefficient must satisfy |r| < 1");
  }
  const double kappa = r / std::sqrt(1.0 - r * r);
  const double q = 2.0 * eta * alpha.real();
  const double p = hbar / eta * (alpha.imag() + kappa * alpha.real());
  return CCSpec(eta, r, q, p, hbar);
}

CCSpec CCSpec::coherent(const OscillatorSpec& osc, std::complex<double> alpha) {
  const double eta = std::sqrt(osc.hbar() / (2.0 * osc.mass() * osc.omega()));
  return from_alpha(eta, 0.0, alpha, osc.hbar());
}

std::complex<double> CCSpec::alpha() const {
  const double kappa = r_ / std::sqrt(1.0 - r_ * r_);
  return {sigma_q_ / (2.0 * eta_),
          -kappa * sigma_q_ / (2.0 * eta_) + eta_ * sigma_p_ / hbar_};
}

GaussianState CCSpec::state(double t) const {
  const double one_minus = 1.0 - r_ * r_;
  GaussianState s;
  s.sigma_q = sigma_q_;
  s.sigma_p = sigma_p_;
  s.sigma_qq = eta_ * eta_;
  s.sigma_pp = hbar_ * hbar_ / (4.0 * eta_ * eta_ * one_minus);
  s.sigma_pq = hbar_ * r_ / (2.0 * std::sqrt(one_minus));
  s.t = t;
  return s;
}

std::complex<double> ccs_wavefunction_at(const CCSpec& ccs, double x) {
  const GaussianState s = ccs.state();
  const double h = ccs.hbar();
  const double u = x - s.sigma_q;
  const std::complex<double> width(1.0, -2.0 * s.sigma_pq / h);
  const std::complex<double> expo =
      -width * u * u / (4.0 * s.sigma_qq) +
      std::complex<double>(0.0, s.sigma_p * x / h);
  return std::pow(2.0 * kPi * s.sigma_qq, -0.25) * std::exp(expo);
}

double ccs_wigner_at(const CCSpec& ccs, double q, double p) {
  const double h = ccs.hbar();
  const double eta2 = ccs.eta() * ccs.eta();
  const double r = ccs.r();
  const double one_minus = 1.0 - r * r;
  const double dq = q - ccs.sigma_q();
  const double dp = p - ccs.sigma_p();
  const double expo = -2.0 * eta2 / (h * h) * dp * dp -
                      dq * dq / (2.0 * eta2 * one_minus) +
                      2.0 * r / (h * std::sqrt(one_minus)) * dq * dp;
  return std::exp(expo) / (kPi * h);
}

}  // namespace dho
