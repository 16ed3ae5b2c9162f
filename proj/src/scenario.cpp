#include "dho/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <string_view>

#include "dho/errors.hpp"
#include "json.hpp"

namespace dho {
namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view name) {
  if (!j.is_object()) {
    throw ValidationError(std::string(name) + " block must be a JSON object");
  }
}

void reject_unknown(const json& j, std::string_view block,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ValidationError("unknown key '" + item.key() + "' in " +
                            std::string(block) + " block");
    }
  }
}

double number(const json& j, const char* key, std::string_view block) {
  if (!j.contains(key)) {
    throw ValidationError("missing '" + std::string(key) + "' in " +
                          std::string(block) + " block");
  }
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw ValidationError("'" + std::string(key) + "' in " + std::string(block) +
                          " block must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw ValidationError("'" + std::string(key) + "' must be finite");
  }
  return x;
}

double number_or(const json& j, const char* key, double fallback,
                 std::string_view block) {
  return j.contains(key) ? number(j, key, block) : fallback;
}

std::size_t count(const json& j, const char* key, std::string_view block) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError("'" + std::string(key) + "' in " + std::string(block) +
                          " block must be a non-negative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

Complex complex_value(const json& v, std::string_view what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError(std::string(what) +
                        " must be a number or a [re, im] pair");
}

OscillatorSpec parse_oscillator(const json& doc, const ScenarioOverrides& ov,
                                bool& lambda_given) {
  json block = doc.value("oscillator", json::object());
  require_object(block, "oscillator");
  reject_unknown(block, "oscillator",
                 {"mass", "omega", "lambda", "mu", "hbar", "boltzmann"});
  UnitSystem units;
  units.hbar = number_or(block, "hbar", 1.0, "oscillator");
  units.boltzmann = number_or(block, "boltzmann", 1.0, "oscillator");
  if (ov.hbar) units.hbar = *ov.hbar;
  lambda_given = block.contains("lambda");
  return OscillatorSpec(number_or(block, "mass", 1.0, "oscillator"),
                        number_or(block, "omega", 1.0, "oscillator"),
                        number_or(block, "lambda", 0.0, "oscillator"),
                        number_or(block, "mu", 0.0, "oscillator"), units);
}

void parse_diffusion(const json& doc, bool lambda_given, Scenario& sc) {
  if (!doc.contains("diffusion")) {
    throw ValidationError("missing diffusion block");
  }
  const json& block = doc.at("diffusion");
  require_object(block, "diffusion");
  reject_unknown(block, "diffusion",
                 {"preset", "temperature", "d_qq", "d_pp", "d_pq", "lindblad_ops"});
  const bool has_preset = block.contains("preset");
  const bool has_explicit =
      block.contains("d_qq") || block.contains("d_pp") || block.contains("d_pq");
  const bool has_ops = block.contains("lindblad_ops");
  if (int(has_preset) + int(has_explicit) + int(has_ops) != 1) {
    throw ValidationError(
        "diffusion block needs exactly one of: preset, explicit d_qq/d_pp/d_pq, "
        "lindblad_ops");
  }
  if (block.contains("temperature") &&
      !(has_preset && block.at("preset") == "gibbs")) {
    throw ValidationError("temperature is only used by the gibbs preset");
  }

  if (has_explicit) {
    sc.source = DiffusionSource::Explicit;
    sc.diffusion.d_qq = number(block, "d_qq", "diffusion");
    sc.diffusion.d_pp = number(block, "d_pp", "diffusion");
    sc.diffusion.d_pq = number_or(block, "d_pq", 0.0, "diffusion");
    return;
  }
  if (has_preset) {
    const json& name = block.at("preset");
    if (name == "gibbs") {
      sc.source = DiffusionSource::Gibbs;
      sc.temperature = number(block, "temperature", "diffusion");
      sc.diffusion = preset_gibbs(sc.osc, *sc.temperature);
    } else if (name == "pure") {
      sc.source = DiffusionSource::Pure;
      sc.diffusion = preset_pure_state(sc.osc);
    } else {
      throw ValidationError("unknown diffusion preset (expected gibbs or pure)");
    }
    return;
  }

  const json& list = block.at("lindblad_ops");
  if (!list.is_array()) {
    throw ValidationError("lindblad_ops must be an array of {a, b} objects");
  }
  std::vector<LindbladOps::Pair> pairs;
  for (const json& op : list) {
    require_object(op, "lindblad_ops entry");
    reject_unknown(op, "lindblad_ops entry", {"a", "b"});
    if (!op.contains("a") || !op.contains("b")) {
      throw ValidationError("each Lindblad operator needs 'a' and 'b'");
    }
    pairs.emplace_back(complex_value(op.at("a"), "a"),
                       complex_value(op.at("b"), "b"));
  }
  sc.source = DiffusionSource::Operators;
  sc.ops = LindbladOps(std::move(pairs));
  const OperatorCoefficients coeffs =
      coefficients_from_ops(*sc.ops, sc.osc.units());
  if (lambda_given) {
    const double given = sc.osc.lambda();
    if (std::abs(given - coeffs.lambda) >
        1e-12 * std::max(std::abs(given), std::abs(coeffs.lambda))) {
      throw ValidationError(
          "oscillator lambda disagrees with the friction implied by "
          "lindblad_ops (omit it or make them equal)");
    }
  }
  sc.osc = sc.osc.with_lambda(coeffs.lambda);
  sc.diffusion = coeffs.diffusion;
}

GaussianState parse_initial(const json& doc, const OscillatorSpec& osc) {
  if (!doc.contains("initial")) {
    return ground_state(osc.mass(), osc.omega(), osc.hbar());
  }
  const json& block = doc.at("initial");
  require_object(block, "initial");
  if (!block.contains("type") || !block.at("type").is_string()) {
    throw ValidationError("initial block needs a 'type' string");
  }
  const std::string type = block.at("type").get<std::string>();
  const double h = osc.hbar();
  GaussianState s;
  if (type == "ground") {
    reject_unknown(block, "initial", {"type"});
    s = ground_state(osc.mass(), osc.omega(), h);
  } else if (type == "coherent") {
    reject_unknown(block, "initial", {"type", "alpha"});
    const Complex alpha =
        block.contains("alpha") ? complex_value(block.at("alpha"), "alpha")
                                : Complex{};
    s = CCSpec::coherent(osc, alpha).state();
  } else if (type == "ccs") {
    reject_unknown(block, "initial", {"type", "eta", "r", "alpha"});
    const Complex alpha =
        block.contains("alpha") ? complex_value(block.at("alpha"), "alpha")
                                : Complex{};
    // Defaults: the CCS left invariant by the pure-state preset.
    const double eta = number_or(
        block, "eta",
        std::sqrt(h / (2.0 * osc.mass() * osc.big_omega())), "initial");
    const double r = number_or(block, "r", -osc.mu() / osc.omega(), "initial");
    s = CCSpec::from_alpha(eta, r, alpha, h).state();
  } else if (type == "moments") {
    reject_unknown(block, "initial",
                   {"type", "sigma_q", "sigma_p", "sigma_qq", "sigma_pp",
                    "sigma_pq"});
    s.sigma_q = number_or(block, "sigma_q", 0.0, "initial");
    s.sigma_p = number_or(block, "sigma_p", 0.0, "initial");
    s.sigma_qq = number(block, "sigma_qq", "initial");
    s.sigma_pp = number(block, "sigma_pp", "initial");
    s.sigma_pq = number_or(block, "sigma_pq", 0.0, "initial");
  } else {
    throw ValidationError(
        "unknown initial type (expected ground, coherent, ccs or moments)");
  }
  check_state(s, h);
  return s;
}

std::vector<double> parse_times(const json& doc) {
  if (!doc.contains("times")) return {0.0};
  const json& block = doc.at("times");
  require_object(block, "times");
  reject_unknown(block, "times", {"t_start", "t_end", "n_samples", "list"});
  if (block.contains("list")) {
    if (block.size() != 1) {
      throw ValidationError("times block: give either list or a range, not both");
    }
    const json& list = block.at("list");
    if (!list.is_array()) throw ValidationError("times.list must be an array");
    std::vector<double> out;
    for (const json& v : list) {
      if (!v.is_number()) throw ValidationError("times.list entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  const double start = number_or(block, "t_start", 0.0, "times");
  const std::size_t n = block.contains("n_samples") ? count(block, "n_samples", "times") : 1;
  if (n == 0) return {};
  if (n == 1) return {start};
  const double end = number(block, "t_end", "times");
  if (!(end > start)) {
    throw ValidationError("times block needs t_end > t_start");
  }
  std::vector<double> out(n);
  const double step = (end - start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = start + step * static_cast<double>(i);
  }
  out.back() = end;
  return out;
}

CoherentWindow parse_window(const json& doc, const OscillatorSpec& osc) {
  if (!doc.contains("window")) return CoherentWindow::matched(osc);
  const json& block = doc.at("window");
  require_object(block, "window");
  reject_unknown(block, "window", {"s_qq"});
  return CoherentWindow::from_position_variance(number(block, "s_qq", "window"),
                                                osc.hbar());
}

GridConfig parse_grid(const json& doc) {
  GridConfig g;
  if (!doc.contains("grid")) return g;
  const json& block = doc.at("grid");
  require_object(block, "grid");
  reject_unknown(block, "grid",
                 {"q_min", "q_max", "p_min", "p_max", "n_q", "n_p", "n_sigma",
                  "time", "steady"});
  if (block.contains("n_q")) g.n_q = count(block, "n_q", "grid");
  if (block.contains("n_p")) g.n_p = count(block, "n_p", "grid");
  g.n_sigma = number_or(block, "n_sigma", g.n_sigma, "grid");
  g.time = number_or(block, "time", g.time, "grid");
  if (block.contains("steady")) {
    if (!block.at("steady").is_boolean()) {
      throw ValidationError("grid.steady must be a boolean");
    }
    g.steady = block.at("steady").get<bool>();
  }
  const int bounds = int(block.contains("q_min")) + int(block.contains("q_max")) +
                     int(block.contains("p_min")) + int(block.contains("p_max"));
  if (bounds != 0 && bounds != 4) {
    throw ValidationError("grid bounds need all of q_min, q_max, p_min, p_max");
  }
  if (bounds == 4) {
    GridAxes axes;
    axes.q_min = number(block, "q_min", "grid");
    axes.q_max = number(block, "q_max", "grid");
    axes.p_min = number(block, "p_min", "grid");
    axes.p_max = number(block, "p_max", "grid");
    g.bounds = axes;
  }
  return g;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("unknown output format '" + name + "' (expected csv or json)");
}

namespace {

Scenario build_scenario(const std::string& text, const ScenarioOverrides& ov) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(doc, "top-level");
  reject_unknown(doc, "top-level",
                 {"oscillator", "diffusion", "initial", "times", "window", "grid",
                  "output"});

  Scenario sc;
  bool lambda_given = false;
  sc.osc = parse_oscillator(doc, ov, lambda_given);
  parse_diffusion(doc, lambda_given, sc);
  sc.initial = parse_initial(doc, sc.osc);
  sc.times = parse_times(doc);
  sc.window = parse_window(doc, sc.osc);
  sc.grid = parse_grid(doc);

  if (doc.contains("output")) {
    const json& block = doc.at("output");
    require_object(block, "output");
    reject_unknown(block, "output", {"format", "path"});
    if (block.contains("format")) {
      sc.format = parse_format(block.at("format").get<std::string>());
    }
    if (block.contains("path")) sc.out_path = block.at("path").get<std::string>();
  }

  if (ov.format) sc.format = *ov.format;
  if (ov.out_path) sc.out_path = *ov.out_path;
  if (ov.grid_time) sc.grid.time = *ov.grid_time;
  if (ov.grid_steady) sc.grid.steady = true;
  if (ov.grid_n_q) sc.grid.n_q = *ov.grid_n_q;
  if (ov.grid_n_p) sc.grid.n_p = *ov.grid_n_p;
  if (ov.grid_n_sigma) sc.grid.n_sigma = *ov.grid_n_sigma;
  return sc;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const ScenarioOverrides& ov) {
  try {
    return build_scenario(text, ov);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config: ") + e.what());
  }
}

}  // namespace dho
