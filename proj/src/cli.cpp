#include "dho/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dho/entropy.hpp"
#include "dho/errors.hpp"
#include "dho/phasespace.hpp"
#include "dho/propagator.hpp"
#include "dho/purity.hpp"

namespace dho {
namespace {

const std::vector<std::string> kScalarColumns = {
    "sigma_q", "sigma_p", "sigma_qq", "sigma_pp", "sigma_pq", "sigma", "nu",
    "S",       "T_e",     "gamma",    "S_l",      "S_l_rate", "I",    "E"};

void append_scalars(std::vector<Cell>& row, const GaussianState& s,
                    const DerivedScalars& d) {
  row.insert(row.end(), {s.sigma_q, s.sigma_p, s.sigma_qq, s.sigma_pp,
                         s.sigma_pq, d.sigma_det, d.nu, d.s_vn});
  if (d.t_eff) {
    row.emplace_back(*d.t_eff);
  } else {
    row.emplace_back(std::monostate{});
  }
  row.insert(row.end(), {d.gamma, d.s_lin, d.s_lin_rate, d.wehrl, d.energy});
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), {}};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open config file: " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void require_constraints(const Scenario& sc) {
  const ConstraintReport rep = validate(sc.diffusion, sc.osc);
  if (rep.ok()) return;
  std::ostringstream msg;
  msg << "diffusion coefficients violate";
  if (!rep.d_pp_positive) msg << " (i) d_pp > 0;";
  if (!rep.d_qq_positive) msg << " (ii) d_qq > 0;";
  if (!rep.determinant_ok) {
    msg << " (iii) d_pp d_qq - d_pq^2 >= lambda^2 hbar^2 / 4 (margin "
        << format_double(rep.margin) << ");";
  }
  throw ValidationError(msg.str());
}

GaussianState grid_state(const Scenario& sc) {
  if (sc.grid.steady) return steady_state(sc.osc, sc.diffusion);
  if (sc.grid.time < 0.0) throw ValidationError("grid time must be >= 0");
  return evolve(sc.osc, sc.diffusion, sc.initial, sc.grid.time);
}

GridAxes grid_axes(const Scenario& sc, const GaussianState& s, double pad_qq,
                   double pad_pp) {
  if (sc.grid.bounds) {
    GridAxes axes = *sc.grid.bounds;
    axes.n_q = sc.grid.n_q;
    axes.n_p = sc.grid.n_p;
    axes.check();
    return axes;
  }
  GaussianState wide = s;
  wide.sigma_qq += pad_qq;
  wide.sigma_pp += pad_pp;
  GridAxes axes = axes_around(wide, sc.grid.n_sigma, sc.grid.n_q, sc.grid.n_p);
  axes.check();
  return axes;
}

std::string measure_name(Measure m) {
  return m == Measure::Plain ? "dq dp" : "dq dp / (2 pi hbar)";
}

void write_axis_json(std::ostream& out, const char* name, std::size_t n,
                     auto&& value) {
  out << "  \"" << name << "\": [";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out << ", ";
    out << format_double(value(i));
  }
  out << "]";
}

void write_grid(const PhaseSpaceGrid& grid, const std::string& kind,
                double time, OutputFormat format, std::ostream& out) {
  const GridAxes& a = grid.axes();
  if (format == OutputFormat::Csv) {
    out << "# kind=" << kind << "; measure=" << measure_name(grid.measure())
        << "; time=" << format_double(time) << "; hbar="
        << format_double(grid.hbar()) << '\n';
    out << "q,p,value\n";
    for (std::size_t i = 0; i < a.n_q; ++i) {
      for (std::size_t j = 0; j < a.n_p; ++j) {
        out << format_double(a.q(i)) << ',' << format_double(a.p(j)) << ','
            << format_double(grid.at(i, j)) << '\n';
      }
    }
    return;
  }
  out << "{\n  \"kind\": \"" << kind << "\",\n  \"measure\": \""
      << measure_name(grid.measure()) << "\",\n  \"time\": "
      << (std::isfinite(time) ? format_double(time) : "null")
      << ",\n  \"hbar\": " << format_double(grid.hbar())
      << ",\n  \"layout\": \"row-major, q index slowest\",\n";
  write_axis_json(out, "q", a.n_q, [&](std::size_t i) { return a.q(i); });
  out << ",\n";
  write_axis_json(out, "p", a.n_p, [&](std::size_t j) { return a.p(j); });
  out << ",\n";
  write_axis_json(out, "values", grid.values().size(),
                  [&](std::size_t k) { return grid.values()[k]; });
  out << "\n}\n";
}

void write_kernel(const Scenario& sc, const GaussianState& s,
                  std::ostream& out) {
  const GridAxes axes = grid_axes(sc, s, 0.0, 0.0);
  const std::size_t n = axes.n_q;
  const double h = sc.osc.hbar();
  std::vector<std::complex<double>> values(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      values[i * n + j] = density_kernel_at(s, axes.q(i), axes.q(j), h);
    }
  }
  if (sc.format == OutputFormat::Csv) {
    out << "# kind=density_kernel; time=" << format_double(s.t)
        << "; hbar=" << format_double(h) << '\n';
    out << "x,y,re,im\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out << format_double(axes.q(i)) << ',' << format_double(axes.q(j)) << ','
            << format_double(values[i * n + j].real()) << ','
            << format_double(values[i * n + j].imag()) << '\n';
      }
    }
    return;
  }
  out << "{\n  \"kind\": \"density_kernel\",\n  \"time\": "
      << (std::isfinite(s.t) ? format_double(s.t) : "null")
      << ",\n  \"hbar\": " << format_double(h)
      << ",\n  \"layout\": \"row-major, x index slowest\",\n";
  write_axis_json(out, "x", n, [&](std::size_t i) { return axes.q(i); });
  out << ",\n";
  write_axis_json(out, "y", n, [&](std::size_t i) { return axes.q(i); });
  out << ",\n";
  write_axis_json(out, "re", values.size(),
                  [&](std::size_t k) { return values[k].real(); });
  out << ",\n";
  write_axis_json(out, "im", values.size(),
                  [&](std::size_t k) { return values[k].imag(); });
  out << "\n}\n";
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
}

void write_validation(const Scenario& sc, const ConstraintReport& rep,
                      std::ostream& out) {
  const auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
  const DiffusionSpec& d = sc.diffusion;
  if (sc.format == OutputFormat::Json) {
    out << "{\n  \"d_pp_positive\": " << (rep.d_pp_positive ? "true" : "false")
        << ",\n  \"d_qq_positive\": " << (rep.d_qq_positive ? "true" : "false")
        << ",\n  \"determinant_ok\": " << (rep.determinant_ok ? "true" : "false")
        << ",\n  \"margin\": " << format_double(rep.margin)
        << ",\n  \"d_qq\": " << format_double(d.d_qq)
        << ",\n  \"d_pp\": " << format_double(d.d_pp)
        << ",\n  \"d_pq\": " << format_double(d.d_pq)
        << ",\n  \"lambda\": " << format_double(sc.osc.lambda())
        << ",\n  \"strong_damping_warning\": "
        << (sc.osc.strong_damping_warning() ? "true" : "false")
        << ",\n  \"ok\": " << (rep.ok() ? "true" : "false") << "\n}\n";
    return;
  }
  out << "underdamped omega > |mu|: pass (Omega = "
      << format_double(sc.osc.big_omega()) << ")\n";
  out << "(i) d_pp > 0: " << verdict(rep.d_pp_positive)
      << " (d_pp = " << format_double(d.d_pp) << ")\n";
  out << "(ii) d_qq > 0: " << verdict(rep.d_qq_positive)
      << " (d_qq = " << format_double(d.d_qq) << ")\n";
  out << "(iii) d_pp d_qq - d_pq^2 >= lambda^2 hbar^2 / 4: "
      << verdict(rep.determinant_ok) << " (margin = " << format_double(rep.margin)
      << ")\n";
  if (sc.osc.strong_damping_warning()) {
    out << "warning: lambda >= omega, outside the weak-coupling regime\n";
  }
  out << "result: " << (rep.ok() ? "ok" : "violated") << '\n';
}

std::vector<const char*> to_argv(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("dho");
  for (const auto& a : args) argv.push_back(a.c_str());
  return argv;
}

}  // namespace

Table evolve_table(const Scenario& sc) {
  TrajectoryOptions options;
  options.window = sc.window;
  options.thermal = sc.thermal();
  const Trajectory traj =
      sample_trajectory(sc.osc, sc.diffusion, sc.initial, sc.times, options);
  Table table;
  table.columns.push_back("t");
  table.columns.insert(table.columns.end(), kScalarColumns.begin(),
                       kScalarColumns.end());
  for (const auto& point : traj) {
    std::vector<Cell> row{point.state.t};
    append_scalars(row, point.state, point.scalars);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table steady_table(const Scenario& sc) {
  const GaussianState s = steady_state(sc.osc, sc.diffusion);
  const DerivedScalars d =
      derive_scalars(sc.osc, sc.diffusion, s, sc.window, sc.thermal());
  Table table;
  table.columns = kScalarColumns;
  std::vector<Cell> row;
  append_scalars(row, s, d);
  table.rows.push_back(std::move(row));
  return table;
}

Table purity_table(const Scenario& sc) {
  const auto reports = purity_scan(sc.osc, sc.diffusion, sc.initial, sc.times);
  Table table;
  table.columns = {"t",
                   "sigma",
                   "gamma",
                   "is_pure",
                   "r",
                   "preserving",
                   "res_determinant",
                   "res_position",
                   "res_correlation",
                   "res_dissipativity",
                   "res_constancy",
                   "res_uncertainty",
                   "ccs_eta",
                   "ccs_r"};
  for (const auto& rep : reports) {
    const auto& res = rep.residuals;
    std::vector<Cell> row{rep.t,
                          rep.sigma_det,
                          rep.gamma,
                          rep.is_pure,
                          rep.r,
                          rep.preserving,
                          res.determinant,
                          res.position,
                          res.correlation,
                          res.dissipativity,
                          res.constancy,
                          res.uncertainty};
    row.push_back(optional_cell(rep.ccs ? std::optional(rep.ccs->eta())
                                        : std::nullopt));
    row.push_back(optional_cell(rep.ccs ? std::optional(rep.ccs->r())
                                        : std::nullopt));
    table.rows.push_back(std::move(row));
  }
  return table;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gaussian-state simulator for the damped quantum harmonic "
               "oscillator (Lindblad dynamics)",
               "dho"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format_name;
  std::string out_path;
  std::optional<double> hbar;
  std::uint64_t seed = 1;
  std::optional<double> grid_time;
  bool grid_steady = false;
  std::optional<std::size_t> n_q;
  std::optional<std::size_t> n_p;
  std::optional<double> n_sigma;

  app.add_option("--config", config_path, "Scenario JSON file ('-' for stdin)");
  app.add_option("--format", format_name, "Output format: csv or json");
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--hbar", hbar, "Override the reduced Planck constant");
  app.add_option("--seed", seed, "Seed for the selftest property sweeps");

  auto* validate_cmd =
      app.add_subcommand("validate", "Check the fundamental constraints");
  auto* evolve_cmd = app.add_subcommand("evolve", "Sample the trajectory");
  auto* steady_cmd = app.add_subcommand("steady", "Asymptotic state");
  auto* wigner_cmd = app.add_subcommand("wigner-grid", "Wigner function grid");
  auto* husimi_cmd = app.add_subcommand("husimi-grid", "Husimi distribution grid");
  auto* kernel_cmd =
      app.add_subcommand("kernel", "Coordinate density-matrix kernel grid");
  auto* purity_cmd = app.add_subcommand("purity-scan", "Purity diagnostics");
  auto* selftest_cmd =
      app.add_subcommand("selftest", "Randomized property checks");

  for (auto* sub : {wigner_cmd, husimi_cmd, kernel_cmd}) {
    sub->add_option("--time", grid_time, "Evaluation time");
    sub->add_flag("--steady", grid_steady, "Evaluate the asymptotic state");
    sub->add_option("--n-q", n_q, "Points along q (and x, y for kernel)");
    sub->add_option("--n-p", n_p, "Points along p");
    sub->add_option("--n-sigma", n_sigma, "Box half-width in standard deviations");
  }

  try {
    const auto argv = to_argv(args);
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (selftest_cmd->parsed()) return run_selftest(seed, out);

  try {
    if (config_path.empty()) throw ValidationError("--config is required");
    ScenarioOverrides ov;
    ov.hbar = hbar;
    if (!format_name.empty()) ov.format = parse_format(format_name);
    if (!out_path.empty()) ov.out_path = out_path;
    ov.grid_time = grid_time;
    ov.grid_steady = grid_steady;
    ov.grid_n_q = n_q;
    ov.grid_n_p = n_p;
    ov.grid_n_sigma = n_sigma;
    const Scenario sc = parse_scenario(read_file(config_path), ov);

    if (validate_cmd->parsed()) {
      const ConstraintReport rep = validate(sc.diffusion, sc.osc);
      write_validation(sc, rep, out);
      return rep.ok() ? kExitOk : kExitValidation;
    }

    require_constraints(sc);

    // Build everything before touching the output so failures leave no
    // partial file behind.
    std::ostringstream buffer;
    if (evolve_cmd->parsed()) {
      write_table(evolve_table(sc), sc.format, buffer);
    } else if (steady_cmd->parsed()) {
      write_table(steady_table(sc), sc.format, buffer);
    } else if (purity_cmd->parsed()) {
      write_table(purity_table(sc), sc.format, buffer);
    } else if (wigner_cmd->parsed()) {
      const GaussianState s = grid_state(sc);
      const PhaseSpaceGrid grid =
          sample_wigner(s, grid_axes(sc, s, 0.0, 0.0), sc.osc.hbar());
      write_grid(grid, "wigner", s.t, sc.format, buffer);
    } else if (husimi_cmd->parsed()) {
      const GaussianState s = grid_state(sc);
      const PhaseSpaceGrid grid = sample_husimi(
          s, sc.window, grid_axes(sc, s, sc.window.s_qq(), sc.window.s_pp()));
      write_grid(grid, "husimi", s.t, sc.format, buffer);
    } else if (kernel_cmd->parsed()) {
      write_kernel(sc, grid_state(sc), buffer);
    }

    if (sc.out_path.empty() || sc.out_path == "-") {
      out << buffer.str();
    } else {
      std::ofstream file(sc.out_path, std::ios::binary);
      if (!file) throw ValidationError("cannot open output file: " + sc.out_path);
      file << buffer.str();
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    err << "numerical consistency failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dho
