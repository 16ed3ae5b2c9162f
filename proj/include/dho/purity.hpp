#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dho/model.hpp"
#include "dho/phasespace.hpp"
#include "dho/state.hpp"

namespace dho {

/// Relative tolerance on sigma - hbar^2/4 for a state to count as pure.
inline constexpr double kPurityRelTol = 1e-10;
/// Relative tolerance on the pure-preserving residuals.
inline constexpr double kPreservingRelTol = 1e-10;

double correlation_coefficient(const GaussianState& state);

/// Residuals of the conditions for a pure state to stay pure, each divided
/// by its natural scale.
struct PreservingResiduals {
  /// D_pp D_qq - D_pq^2 - hbar^2 lambda^2 / 4
  double determinant = 0.0;
  /// D_pp s_qq - D_pq s_pq - hbar^2 lambda / 4
  double position = 0.0;
  /// s_pq (D_pp D_qq - D_pq^2) - (hbar^2 lambda / 4) D_pq
  double correlation = 0.0;
  /// D_pp s_qq + D_qq s_pp - 2 D_pq s_pq - hbar^2 lambda / 2
  double dissipativity = 0.0;
  /// max |s_AB - D_AB / lambda| relative to the covariances
  double constancy = 0.0;
  /// s_qq s_pp - s_pq^2 - hbar^2 / 4
  double uncertainty = 0.0;
};

struct PurityReport {
  double t = 0.0;
  double sigma_det = 0.0;
  double gamma = 1.0;
  bool is_pure = false;
  double r = 0.0;
  std::optional<CCSpec> ccs;
  bool preserving = false;
  PreservingResiduals residuals;
};

PurityReport check_pure_preserving(const OscillatorSpec& osc,
                                   const DiffusionSpec& diff,
                                   const GaussianState& state);

/// The unique CCS with these moments, if the state saturates the
/// uncertainty relation.
std::optional<CCSpec> identify_ccs(const GaussianState& state, double hbar);

std::vector<PurityReport> purity_scan(const OscillatorSpec& osc,
                                      const DiffusionSpec& diff,
                                      const GaussianState& state0,
                                      std::span<const double> times);

/// Fluctuation energy held constant by a purity-preserving environment:
/// (D_pp / 2m + m w^2 D_qq / 2 + mu D_pq) / lambda.
double constant_pure_energy(const OscillatorSpec& osc, const DiffusionSpec& diff);

}  // namespace dho
