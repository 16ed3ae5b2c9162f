#include "dho/propagator.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <tuple>

#include "dho/errors.hpp"

namespace dho {
namespace {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;

// T = (1 / 2 i Omega) [[mu + iO, mu - iO, 2w], [mu - iO, mu + iO, 2w],
//                      [-w, -w, -2 mu]]. T is its own inverse.
Matrix3c transform_matrix(const OscillatorSpec& osc) {
  const double mu = osc.mu();
  const double w = osc.omega();
  const double big = osc.big_omega();
  const std::complex<double> up{mu, big};
  const std::complex<double> dn{mu, -big};
  Matrix3c t;
  t << up, dn, 2.0 * w,  //
      dn, up, 2.0 * w,   //
      -w, -w, -2.0 * mu;
  return t / std::complex<double>(0.0, 2.0 * big);
}

std::array<std::complex<double>, 3> rates(const OscillatorSpec& osc) {
  const double l = osc.lambda();
  const double big = osc.big_omega();
  return {std::complex<double>(2.0 * l, -2.0 * big),
          std::complex<double>(2.0 * l, 2.0 * big),
          std::complex<double>(2.0 * l, 0.0)};
}

Vector3c drive_vector(const OscillatorSpec& osc, const DiffusionSpec& d) {
  const double mw = osc.mass() * osc.omega();
  return Vector3c(2.0 * mw * d.d_qq, 2.0 * d.d_pp / mw, 2.0 * d.d_pq);
}

Vector3c to_vector(const ScaledCovariances& x) {
  return Vector3c(x.x1, x.x2, x.x3);
}

ScaledCovariances real_part_checked(const Vector3c& v, double scale,
                                    const char* what) {
  const double residue = v.imag().cwiseAbs().maxCoeff();
  const double ref = std::max({scale, v.real().cwiseAbs().maxCoeff(), 1e-300});
  if (residue > kImaginaryResidueTol * ref) {
    std::ostringstream msg;
    msg << what << ": imaginary residue " << residue << " exceeds tolerance";
    throw ConsistencyError(msg.str());
  }
  return {v(0).real(), v(1).real(), v(2).real()};
}

// (1 - exp(-k t)) / k, continuous at k t = 0.
std::complex<double> integrated_decay(std::complex<double> k, double t) {
  const std::complex<double> z = k * t;
  if (std::abs(z) < 1e-5) {
    return t * (1.0 - z / 2.0 + z * z / 6.0);
  }
  return (1.0 - std::exp(-z)) / k;
}

}  // namespace

ScaledCovariances ScaledCovariances::from_state(const GaussianState& s,
                                                const OscillatorSpec& osc) {
  const double mw = osc.mass() * osc.omega();
  return {mw * s.sigma_qq, s.sigma_pp / mw, s.sigma_pq};
}

void ScaledCovariances::apply_to(GaussianState& s,
                                 const OscillatorSpec& osc) const {
  const double mw = osc.mass() * osc.omega();
  s.sigma_qq = x1 / mw;
  s.sigma_pp = x2 * mw;
  s.sigma_pq = x3;
}

std::pair<double, double> evolve_means(const OscillatorSpec& osc,
                                       const GaussianState& s0, double t) {
  const double big = osc.big_omega();
  const double mu = osc.mu();
  const double m = osc.mass();
  const double w = osc.omega();
  const double damp = std::exp(-osc.lambda() * t);
  const double c = std::cos(big * t);
  const double sn = std::sin(big * t);
  const double q = damp * ((c + mu / big * sn) * s0.sigma_q +
                           sn / (m * big) * s0.sigma_p);
  const double p = damp * (-m * w * w / big * sn * s0.sigma_q +
                           (c - mu / big * sn) * s0.sigma_p);
  return {q, p};
}

ScaledCovariances steady_covariances(const OscillatorSpec& osc,
                                     const DiffusionSpec& d) {
  const double l = osc.lambda();
  if (!(l > 0.0)) {
    throw ValidationError("no steady state without friction (lambda = 0)");
  }
  const double m = osc.mass();
  const double w = osc.omega();
  const double mu = osc.mu();
  const double den = l * l + w * w - mu * mu;
  const double s_qq = (m * m * (2.0 * l * (l + mu) + w * w) * d.d_qq + d.d_pp +
                       2.0 * m * (l + mu) * d.d_pq) /
                      (2.0 * m * m * l * den);
  const double s_pp = ((m * w) * (m * w) * w * w * d.d_qq +
                       (2.0 * l * (l - mu) + w * w) * d.d_pp -
                       2.0 * m * w * w * (l - mu) * d.d_pq) /
                      (2.0 * l * den);
  const double s_pq = (-(l + mu) * (m * w) * (m * w) * d.d_qq +
                       (l - mu) * d.d_pp + 2.0 * m * (l * l - mu * mu) * d.d_pq) /
                      (2.0 * m * l * den);
  const double mw = m * w;
  return {mw * s_qq, s_pp / mw, s_pq};
}

ScaledCovariances steady_covariances_matrix(const OscillatorSpec& osc,
                                            const DiffusionSpec& d) {
  if (!(osc.lambda() > 0.0)) {
    throw ValidationError("no steady state without friction (lambda = 0)");
  }
  const Matrix3c tm = transform_matrix(osc);
  const auto k = rates(osc);
  Matrix3c kinv = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i) kinv(i, i) = 1.0 / k[i];
  const Vector3c dv = drive_vector(osc, d);
  const Vector3c x = tm * kinv * tm * dv;
  return real_part_checked(x, dv.cwiseAbs().maxCoeff() / osc.lambda(),
                           "steady covariances");
}

ScaledCovariances evolve_covariances(const OscillatorSpec& osc,
                                     const DiffusionSpec& d,
                                     const GaussianState& s0, double t) {
  if (!(t >= 0.0)) {
    throw ValidationError("evolution time must be non-negative");
  }
  const ScaledCovariances scaled0 = ScaledCovariances::from_state(s0, osc);
  if (t == 0.0) return scaled0;
  const Matrix3c tm = transform_matrix(osc);
  const auto k = rates(osc);
  Matrix3c decay = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i) decay(i, i) = std::exp(-k[i] * t);
  const Matrix3c propagator = tm * decay * tm;
  const Vector3c x0 = to_vector(scaled0);

  if (osc.lambda() > 0.0) {
    const Vector3c xinf = to_vector(steady_covariances(osc, d));
    const Vector3c x = propagator * (x0 - xinf) + xinf;
    const double scale =
        std::max(x0.cwiseAbs().maxCoeff(), xinf.cwiseAbs().maxCoeff());
    return real_part_checked(x, scale, "covariance evolution");
  }

  // Undamped: X(t) = T e^{-Kt} T X(0) + T [(1 - e^{-Kt}) K^{-1}] T D.
  Matrix3c drive = Matrix3c::Zero();
  for (int i = 0; i < 3; ++i) drive(i, i) = integrated_decay(k[i], t);
  const Vector3c dv = drive_vector(osc, d);
  const Vector3c x = propagator * x0 + tm * drive * tm * dv;
  const double scale =
      std::max(x0.cwiseAbs().maxCoeff(), dv.cwiseAbs().maxCoeff() * t);
  return real_part_checked(x, scale, "covariance evolution");
}

GaussianState evolve(const OscillatorSpec& osc, const DiffusionSpec& d,
                     const GaussianState& s0, double t) {
  if (t == 0.0) return s0;
  GaussianState out;
  std::tie(out.sigma_q, out.sigma_p) = evolve_means(osc, s0, t);
  evolve_covariances(osc, d, s0, t).apply_to(out, osc);
  out.t = s0.t + t;
  return out;
}

GaussianState steady_state(const OscillatorSpec& osc, const DiffusionSpec& d) {
  GaussianState out;
  steady_covariances(osc, d).apply_to(out, osc);
  out.t = INFINITY;
  return out;
}

std::vector<GaussianState> ode_oracle(const OscillatorSpec& osc,
                                      const DiffusionSpec& d,
                                      const GaussianState& s0,
                                      std::span<const double> times,
                                      double step) {
  if (!(step > 0.0)) {
    throw ValidationError("oracle step must be positive");
  }
  check_times(times);
  const double l = osc.lambda();
  const double mu = osc.mu();
  const double inv_m = 1.0 / osc.mass();
  const double mw2 = osc.mass() * osc.omega() * osc.omega();
  using Vec5 = std::array<double, 5>;
  auto rhs = [&](const Vec5& y) -> Vec5 {
    const auto& [q, p, qq, pp, pq] = y;
    return {-(l - mu) * q + inv_m * p,
            -mw2 * q - (l + mu) * p,
            -2.0 * (l - mu) * qq + 2.0 * inv_m * pq + 2.0 * d.d_qq,
            -2.0 * (l + mu) * pp - 2.0 * mw2 * pq + 2.0 * d.d_pp,
            -mw2 * qq + inv_m * pp - 2.0 * l * pq + 2.0 * d.d_pq};
  };
  auto axpy = [](const Vec5& y, double h, const Vec5& k) {
    Vec5 out;
    for (std::size_t i = 0; i < 5; ++i) out[i] = y[i] + h * k[i];
    return out;
  };

  std::vector<GaussianState> out;
  out.reserve(times.size());
  Vec5 y{s0.sigma_q, s0.sigma_p, s0.sigma_qq, s0.sigma_pp, s0.sigma_pq};
  double now = 0.0;
  for (double target : times) {
    const double span = target - now;
    const auto n = static_cast<long>(std::ceil(span / step - 1e-9));
    if (n > 0) {
      const double h = span / static_cast<double>(n);
      for (long it = 0; it < n; ++it) {
        const Vec5 k1 = rhs(y);
        const Vec5 k2 = rhs(axpy(y, 0.5 * h, k1));
        const Vec5 k3 = rhs(axpy(y, 0.5 * h, k2));
        const Vec5 k4 = rhs(axpy(y, h, k3));
        for (std::size_t i = 0; i < 5; ++i) {
          y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
      }
    }
    now = target;
    out.push_back({y[0], y[1], y[2], y[3], y[4], s0.t + target});
  }
  return out;
}

GaussianState ode_oracle(const OscillatorSpec& osc, const DiffusionSpec& d,
                         const GaussianState& s0, double t, double step) {
  const double times[] = {t};
  return ode_oracle(osc, d, s0, times, step).front();
}

double default_oracle_step(const OscillatorSpec& osc) {
  return 1e-4 / std::max(osc.omega(), osc.lambda());
}

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw ValidationError("sample times must be finite and non-negative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError("sample times must be strictly increasing");
    }
  }
}

Trajectory sample_trajectory(const OscillatorSpec& osc, const DiffusionSpec& d,
                             const GaussianState& s0,
                             std::span<const double> times,
                             const TrajectoryOptions& options) {
  check_times(times);
  Trajectory out;
  out.reserve(times.size());
  for (double t : times) {
    TrajectoryPoint point;
    point.state = evolve(osc, d, s0, t);
    point.scalars =
        derive_scalars(osc, d, point.state, options.window, options.thermal);
    out.push_back(point);
  }
  return out;
}

Trajectory sample_trajectory(const OscillatorSpec& osc, const DiffusionSpec& d,
                             const GaussianState& s0,
                             std::span<const double> times) {
  TrajectoryOptions options;
  options.window = CoherentWindow::matched(osc);
  return sample_trajectory(osc, d, s0, times, options);
}

}  // namespace dho
