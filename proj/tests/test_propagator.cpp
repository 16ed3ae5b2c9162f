#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dho/errors.hpp"
#include "dho/propagator.hpp"
#include "dho/sampling.hpp"
#include "support.hpp"

using namespace dho;
using dho::test::moment_error;
using dho::test::rel;

namespace {

const DiffusionSpec kGeneric{0.2, 0.4, 0.05};

GaussianState make_state(double q, double p, double qq, double pp, double pq) {
  GaussianState s;
  s.sigma_q = q;
  s.sigma_p = p;
  s.sigma_qq = qq;
  s.sigma_pp = pp;
  s.sigma_pq = pq;
  return s;
}

}  // namespace

TEST_CASE("means") {
  SUBCASE("identity at t = 0") {
    const OscillatorSpec osc(1, 1, 0.1, 0.05);
    const auto [q, p] = evolve_means(osc, make_state(0.3, -0.7, 1, 1, 0), 0.0);
    CHECK(q == 0.3);
    CHECK(p == -0.7);
  }
  SUBCASE("free quarter period") {
    const OscillatorSpec osc(1, 1, 0.0, 0.0);
    const auto [q, p] =
        evolve_means(osc, make_state(1, 0, 0.5, 0.5, 0), std::numbers::pi / 2);
    CHECK(std::abs(q) < 1e-15);
    CHECK(p == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("damped means against RK4") {
    const OscillatorSpec osc(1, 1, 0.1, 0.05);
    const auto s0 = make_state(1.0, 0.5, 0.5, 0.5, 0.0);
    const auto [q, p] = evolve_means(osc, s0, 3.0);
    const auto ref = test::rk4_moments(osc, kGeneric, s0, 3.0, 30000);
    CHECK(std::abs(q - ref.sigma_q) < 1e-8);
    CHECK(std::abs(p - ref.sigma_p) < 1e-8);
  }
  SUBCASE("decay to zero") {
    const OscillatorSpec osc(1, 1, 0.2, 0.1);
    const auto [q, p] = evolve_means(osc, make_state(2, 1, 1, 1, 0), 400.0);
    CHECK(std::abs(q) < 1e-30);
    CHECK(std::abs(p) < 1e-30);
  }
}

TEST_CASE("library RK4 agrees with the test integrator") {
  const OscillatorSpec osc(1.4, 0.8, 0.07, -0.2);
  const auto s0 = make_state(0.4, -1.0, 0.8, 0.6, 0.1);
  const auto a = ode_oracle(osc, kGeneric, s0, 2.0, 1e-3);
  const auto b = test::rk4_moments(osc, kGeneric, s0, 2.0, 2000);
  CHECK(moment_error(a, b) < 1e-13);
  CHECK(a.t == doctest::Approx(2.0));
}

TEST_CASE("steady covariances") {
  SUBCASE("explicit formulas equal the matrix form") {
    ConfigSampler rng(1);
    for (int k = 0; k < 200; ++k) {
      const auto osc = rng.oscillator();
      const auto d = rng.diffusion(osc);
      const auto a = steady_covariances(osc, d);
      const auto b = steady_covariances_matrix(osc, d);
      const double cross = std::sqrt(a.x1 * a.x2);
      REQUIRE(rel(a.x1, b.x1) < 1e-12);
      REQUIRE(rel(a.x2, b.x2) < 1e-12);
      REQUIRE(rel(a.x3, b.x3, cross) < 1e-12);
    }
  }
  SUBCASE("gibbs preset gives thermal variances") {
    const UnitSystem units{0.8, 1.3};
    const OscillatorSpec osc(1.5, 0.9, 0.2, -0.15, units);
    const double temperature = 0.7;
    const auto s = steady_state(osc, preset_gibbs(osc, temperature));
    const double c = test::thermal_coth(osc, temperature);
    CHECK(s.sigma_qq == doctest::Approx(0.8 / (2 * 1.5 * 0.9) * c).epsilon(1e-13));
    CHECK(s.sigma_pp == doctest::Approx(0.8 * 1.5 * 0.9 / 2 * c).epsilon(1e-13));
    CHECK(std::abs(s.sigma_pq) < 1e-14);
    CHECK(std::isinf(s.t));
  }
  SUBCASE("pure preset gives the pure variances") {
    const OscillatorSpec osc(0.7, 1.2, 0.1, 0.5, UnitSystem{1.1, 1.0});
    const auto s = steady_state(osc, preset_pure_state(osc));
    const double w = osc.big_omega();
    CHECK(s.sigma_qq == doctest::Approx(1.1 / (2 * 0.7 * w)).epsilon(1e-13));
    CHECK(s.sigma_pp == doctest::Approx(1.1 * 0.7 * 1.44 / (2 * w)).epsilon(1e-13));
    CHECK(s.sigma_pq == doctest::Approx(-1.1 * 0.5 / (2 * w)).epsilon(1e-13));
  }
  SUBCASE("generic configuration against the long-time RK4 limit") {
    const OscillatorSpec osc(1, 1, 0.3, 0.1);
    const auto s0 = make_state(1, 0, 0.5, 0.5, 0);
    const double t = 200.0 / 0.3;
    const auto ref = test::rk4_moments(osc, kGeneric, s0, t, 200000);
    const auto x = steady_covariances(osc, kGeneric);
    CHECK(std::abs(x.x1 - ref.sigma_qq) < 1e-8);
    CHECK(std::abs(x.x2 - ref.sigma_pp) < 1e-8);
    CHECK(std::abs(x.x3 - ref.sigma_pq) < 1e-8);
  }
  SUBCASE("no steady state without friction") {
    const OscillatorSpec osc(1, 1, 0.0, 0.0);
    CHECK_THROWS_AS(steady_covariances(osc, kGeneric), ValidationError);
    CHECK_THROWS_AS(steady_state(osc, kGeneric), ValidationError);
  }
}

TEST_CASE("covariance evolution") {
  SUBCASE("t = 0 returns the initial data") {
    const OscillatorSpec osc(1, 1, 0.15, 0.05);
    const auto s0 = make_state(0.1, 0.2, 0.6, 0.9, 0.3);
    const auto x = evolve_covariances(osc, kGeneric, s0, 0.0);
    CHECK(x.x1 == s0.sigma_qq);
    CHECK(x.x2 == s0.sigma_pp);
    CHECK(x.x3 == s0.sigma_pq);
  }
  SUBCASE("steady state is a fixed point") {
    const OscillatorSpec osc(1, 1, 0.2, 0.0);
    const auto s0 = steady_state(osc, kGeneric);
    for (double t : {0.3, 2.0, 17.0, 250.0}) {
      const auto s = evolve(osc, kGeneric, GaussianState{0, 0, s0.sigma_qq,
                                                         s0.sigma_pp, s0.sigma_pq, 0},
                            t);
      CHECK(rel(s.sigma_qq, s0.sigma_qq) < 1e-13);
      CHECK(rel(s.sigma_pp, s0.sigma_pp) < 1e-13);
      CHECK(std::abs(s.sigma_pq - s0.sigma_pq) < 1e-13);
    }
  }
  SUBCASE("ground state against RK4") {
    const OscillatorSpec osc(1, 1, 0.15, 0.05);
    const auto s0 = ground_state(1, 1, 1);
    for (double t : {0.5, 1.0, 5.0}) {
      const auto a = evolve(osc, kGeneric, s0, t);
      const auto b = ode_oracle(osc, kGeneric, s0, t, 1e-4);
      CHECK(std::abs(a.sigma_qq - b.sigma_qq) < 1e-8);
      CHECK(std::abs(a.sigma_pp - b.sigma_pp) < 1e-8);
      CHECK(std::abs(a.sigma_pq - b.sigma_pq) < 1e-8);
    }
  }
  SUBCASE("non-unit mass and hbar") {
    const OscillatorSpec osc(2.5, 0.7, 0.05, -0.3, UnitSystem{0.4, 1.0});
    const DiffusionSpec d{0.03, 0.2, -0.01};
    REQUIRE(validate(d, osc).ok());
    const auto s0 = make_state(0.5, -0.2, 0.1, 0.5, 0.02);
    const auto a = evolve(osc, d, s0, 7.0);
    const auto b = test::rk4_moments(osc, d, s0, 7.0, 70000);
    CHECK(moment_error(a, b) < 1e-10);
  }
  SUBCASE("frictionless evolution") {
    const OscillatorSpec osc(1.3, 1, 0.0, 0.4);
    const DiffusionSpec d{0.01, 0.02, 0.003};
    const auto s0 = make_state(1, 0, 0.5, 0.7, 0.1);
    const auto a = evolve(osc, d, s0, 9.0);
    const auto b = test::rk4_moments(osc, d, s0, 9.0, 90000);
    CHECK(moment_error(a, b) < 1e-10);
  }
  SUBCASE("closed evolution conserves the uncertainty product") {
    const OscillatorSpec osc(1, 1, 0.0, 0.0);
    const auto s0 = make_state(1, 0, 0.4, 1.0, 0.2);
    const auto a = ode_oracle(osc, DiffusionSpec{}, s0, 10.0, 1e-3);
    CHECK(rel(a.uncertainty(), s0.uncertainty()) < 1e-12);
    const auto b = evolve(osc, DiffusionSpec{}, s0, 10.0);
    CHECK(rel(b.uncertainty(), s0.uncertainty()) < 1e-13);
  }
}

TEST_CASE("RK4 converges at fourth order") {
  const OscillatorSpec osc(1, 1, 0.2, 0.1);
  const auto s0 = make_state(1, 0.5, 0.5, 0.5, 0);
  const auto exact = evolve(osc, kGeneric, s0, 4.0);
  const auto coarse = ode_oracle(osc, kGeneric, s0, 4.0, 0.08);
  const auto fine = ode_oracle(osc, kGeneric, s0, 4.0, 0.04);
  const double ratio = moment_error(coarse, exact) / moment_error(fine, exact);
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("pure preset keeps CCS covariances constant under RK4") {
  const OscillatorSpec osc(1, 1, 0.1, 0.3);
  const auto s = steady_state(osc, preset_pure_state(osc));
  const auto s0 = make_state(1, -1, s.sigma_qq, s.sigma_pp, s.sigma_pq);
  const auto a = ode_oracle(osc, preset_pure_state(osc), s0, 20.0, 1e-2);
  CHECK(std::abs(a.sigma_qq - s0.sigma_qq) < 1e-12);
  CHECK(std::abs(a.sigma_pp - s0.sigma_pp) < 1e-12);
  CHECK(std::abs(a.sigma_pq - s0.sigma_pq) < 1e-12);
}

TEST_CASE("asymptotics") {
  const OscillatorSpec osc(1, 1, 0.1, -0.2);
  const auto inf = steady_state(osc, kGeneric);
  SUBCASE("independent of the initial state") {
    const auto a = evolve(osc, kGeneric, make_state(2, -1, 0.5, 0.5, 0), 1000.0);
    const auto b = evolve(osc, kGeneric, make_state(-1, 3, 3.0, 0.2, 0.4), 1000.0);
    CHECK(std::abs(a.sigma_qq - b.sigma_qq) < 1e-9);
    CHECK(std::abs(a.sigma_pp - b.sigma_pp) < 1e-9);
    CHECK(std::abs(a.sigma_pq - b.sigma_pq) < 1e-9);
    CHECK(std::abs(a.sigma_qq - inf.sigma_qq) < 1e-9);
  }
  SUBCASE("exponential envelope") {
    const auto s0 = make_state(0, 0, 3.0, 0.2, 0.4);
    auto dist = [&](double t) {
      const auto s = evolve(osc, kGeneric, s0, t);
      return std::hypot(s.sigma_qq - inf.sigma_qq, s.sigma_pp - inf.sigma_pp,
                        s.sigma_pq - inf.sigma_pq);
    };
    double c = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = 10.0 * i / 200.0;
      c = std::max(c, dist(t) * std::exp(2 * osc.lambda() * t));
    }
    for (int i = 1; i <= 200; ++i) {
      const double t = 10.0 + 190.0 * i / 200.0;
      CHECK(dist(t) <= 1.01 * c * std::exp(-2 * osc.lambda() * t) + 1e-14);
    }
  }
}

TEST_CASE("trajectories") {
  const OscillatorSpec osc(1, 1, 0.2, 0.1);
  const auto d = preset_gibbs(osc, 1.0);
  const auto s0 = ground_state(1, 1, 1);
  SUBCASE("empty") {
    CHECK(sample_trajectory(osc, d, s0, {}).empty());
  }
  SUBCASE("single time zero") {
    const std::vector<double> t{0.0};
    const auto tr = sample_trajectory(osc, d, s0, t);
    REQUIRE(tr.size() == 1);
    CHECK(tr[0].state.sigma_qq == s0.sigma_qq);
    CHECK(tr[0].state.sigma_pp == s0.sigma_pp);
    CHECK(tr[0].state.sigma_pq == s0.sigma_pq);
    CHECK(tr[0].state.t == 0.0);
  }
  SUBCASE("dense grid approaches the steady state") {
    std::vector<double> t;
    for (int i = 0; i <= 500; ++i) t.push_back(50.0 / osc.lambda() * i / 500.0);
    const auto tr = sample_trajectory(osc, d, s0, t);
    const auto inf = steady_state(osc, d);
    CHECK(rel(tr.back().state.sigma_qq, inf.sigma_qq) < 1e-10);
    CHECK(rel(tr.back().state.sigma_pp, inf.sigma_pp) < 1e-10);
    CHECK(std::abs(tr.back().state.sigma_pq) < 1e-10);
    CHECK(tr.back().state.t == doctest::Approx(250.0));
  }
  SUBCASE("time validation") {
    CHECK_THROWS_AS(check_times(std::vector<double>{0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(check_times(std::vector<double>{-1.0}), ValidationError);
    CHECK_THROWS_AS(check_times(std::vector<double>{2.0, 1.0}), ValidationError);
    CHECK_NOTHROW(check_times(std::vector<double>{0.0, 1.0}));
  }
}

TEST_CASE("uncertainty is preserved along random trajectories") {
  ConfigSampler rng(21);
  for (int k = 0; k < 200; ++k) {
    const auto osc = rng.oscillator();
    const auto d = rng.diffusion(osc, k % 4 == 0 ? 0.0 : 3.0);
    const auto s0 = rng.state(1.0, k % 3 == 0 ? 0.0 : 4.0);
    for (int i = 0; i <= 30; ++i) {
      const auto s = evolve(osc, d, s0, 20.0 / osc.lambda() * i / 30.0);
      REQUIRE(s.uncertainty() >= 0.25 * (1.0 - 1e-10));
    }
  }
}
