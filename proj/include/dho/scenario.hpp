#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dho/model.hpp"
#include "dho/phasespace.hpp"
#include "dho/state.hpp"

namespace dho {

enum class OutputFormat { Csv, Json };

enum class DiffusionSource { Explicit, Gibbs, Pure, Operators };

struct GridConfig {
  std::optional<GridAxes> bounds;
  double n_sigma = 8.0;
  std::size_t n_q = 128;
  std::size_t n_p = 128;
  /// Evaluation time; ignored when `steady` is set.
  double time = 0.0;
  bool steady = false;
};

/// A fully resolved run configuration. Construction goes through
/// parse_scenario, which enforces one diffusion source and one initial state.
struct Scenario {
  OscillatorSpec osc{1.0, 1.0, 0.0, 0.0};
  DiffusionSpec diffusion;
  DiffusionSource source = DiffusionSource::Explicit;
  std::optional<double> temperature;
  std::optional<LindbladOps> ops;
  GaussianState initial;
  std::vector<double> times;
  CoherentWindow window;
  GridConfig grid;
  OutputFormat format = OutputFormat::Csv;
  /// Empty or "-" means standard output.
  std::string out_path;

  bool thermal() const { return source == DiffusionSource::Gibbs; }
};

/// Values given on the command line; these win over the config file.
struct ScenarioOverrides {
  std::optional<double> hbar;
  std::optional<OutputFormat> format;
  std::optional<std::string> out_path;
  std::optional<double> grid_time;
  bool grid_steady = false;
  std::optional<std::size_t> grid_n_q;
  std::optional<std::size_t> grid_n_p;
  std::optional<double> grid_n_sigma;
};

/// Parses a JSON scenario document. Throws ValidationError on malformed
/// input, unknown keys, or physically invalid parameters.
Scenario parse_scenario(const std::string& json_text,
                        const ScenarioOverrides& overrides = {});

OutputFormat parse_format(const std::string& name);

}  // namespace dho
