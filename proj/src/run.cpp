#include "bimot/run.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "bimot/csv.hpp"
#include "bimot/errors.hpp"
#include "bimot/kmc.hpp"
#include "bimot/rng.hpp"
#include "bimot/sweep.hpp"

namespace bimot {

namespace {

std::string with_suffix(const std::string& path, const std::string& name) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
    return path + "_" + name + ".csv";
  return path.substr(0, dot) + "_" + name + path.substr(dot);
}

void write_header(CsvWriter& out, const RunConfig& config, const char* what) {
  out.comment(std::string("bimot ") + what);
  out.comment("config-hash: " + config_hash(config));
  out.comment("sign convention: restoring force along z means accel and z have opposite signs");
  out.comment("config: " + to_json(config).dump());
}

SweepGrid resolve_grid(const RunConfig& config, const RunSetup& setup) {
  SweepGrid grid;
  if (config.grid.axis == "z") {
    grid.z = resolve_grid_axis(config.grid, false, setup);
  } else if (config.grid.axis == "v") {
    grid.v = resolve_grid_axis(config.grid, true, setup);
  } else {
    grid.z = resolve_grid_axis(config.grid, false, setup);
    grid.v = resolve_grid_axis(config.grid, true, setup);
  }
  return grid;
}

void run_sweep_mode(const RunConfig& config, std::ostream& log) {
  const RunSetup setup = materialize(config);
  const RateEvaluator rates(setup.scheme, setup.beams, setup.field);
  const SweepGrid grid = resolve_grid(config, setup);
  const SweepAxis axis = config.grid.axis == "z"   ? SweepAxis::z_at_v0
                         : config.grid.axis == "v" ? SweepAxis::v_at_z0
                                                   : SweepAxis::full_grid;
  const SolveMethod method =
      config.mode == RunMode::steady_sweep ? SolveMethod::steady : SolveMethod::kmc;

  KmcSettings kmc;
  kmc.n_traj = config.kmc.n_traj;
  kmc.seed = config.kmc.seed;
  kmc.measure_time =
      config.kmc.auto_time ? 0.0 : config.kmc.measure_time_gamma / setup.gamma_ref;

  ForceMap map = sweep_forces(rates, setup.mass, axis, grid, method, kmc, config.jobs);
  map.config_hash = config_hash(config);

  CsvWriter out(config.output);
  write_header(out, config, "force map");
  out.comment("method: " + std::string(method == SolveMethod::steady ? "steady" : "kmc"));
  if (method == SolveMethod::kmc) {
    out.comment("seed: " + std::to_string(kmc.seed));
    out.comment("n-traj: " + std::to_string(kmc.n_traj));
  }

  const bool kmc_cols = method == SolveMethod::kmc;
  if (axis == SweepAxis::z_at_v0) {
    out.comment("axis: z (v = 0)");
    out.columns(kmc_cols ? std::vector<std::string>{"z_m", "a_z_m_s2", "sigma_m_s2"}
                         : std::vector<std::string>{"z_m", "a_z_m_s2"});
    for (size_t i = 0; i < map.z.size(); ++i) {
      std::vector<double> row{map.z[i], map.accel[i]};
      if (kmc_cols) row.push_back(map.sigma[i]);
      out.row(row);
    }
  } else if (axis == SweepAxis::v_at_z0) {
    out.comment("axis: v (z = 0)");
    out.columns(kmc_cols ? std::vector<std::string>{"v_m_s", "a_z_m_s2", "sigma_m_s2"}
                         : std::vector<std::string>{"v_m_s", "a_z_m_s2"});
    for (size_t i = 0; i < map.v.size(); ++i) {
      std::vector<double> row{map.v[i], map.accel[i]};
      if (kmc_cols) row.push_back(map.sigma[i]);
      out.row(row);
    }
  } else {
    out.comment("axis: (z, v) grid, row-major over z then v");
    out.columns(kmc_cols
                    ? std::vector<std::string>{"z_m", "v_m_s", "a_z_m_s2", "sigma_m_s2"}
                    : std::vector<std::string>{"z_m", "v_m_s", "a_z_m_s2"});
    for (size_t iz = 0; iz < map.z.size(); ++iz)
      for (size_t iv = 0; iv < map.v.size(); ++iv) {
        const size_t p = iz * map.v.size() + iv;
        std::vector<double> row{map.z[iz], map.v[iv], map.accel[p]};
        if (kmc_cols) row.push_back(map.sigma[p]);
        out.row(row);
      }
  }
  log << "wrote " << config.output << " (" << map.accel.size() << " points)\n";
}

void run_point_mode(const RunConfig& config, std::ostream& log) {
  const RunSetup setup = materialize(config);
  const RateEvaluator rates(setup.scheme, setup.beams, setup.field);
  const Vec3 r = config.point.r_mm * 1e-3;
  const Vec3 v = config.point.v_m_s;

  CsvWriter out(config.output);
  write_header(out, config, "force at a point");

  if (config.mode == RunMode::steady_point) {
    const RateMatrix rm = rates.eval(r, v, 0.0);
    const PopulationVector rho = steady_populations(setup.scheme, rm);
    const Vec3 F = scattering_force(setup.scheme, setup.beams, rm, rho);
    out.columns({"x_m", "y_m", "z_m", "vx_m_s", "vy_m_s", "vz_m_s", "ax_m_s2",
                 "ay_m_s2", "az_m_s2"});
    out.row({r.x, r.y, r.z, v.x, v.y, v.z, F.x / setup.mass, F.y / setup.mass,
             F.z / setup.mass});
  } else {
    const double T =
        config.kmc.auto_time ? 0.0 : config.kmc.measure_time_gamma / setup.gamma_ref;
    const ForceEstimate est = estimate_force(r, v, rates, setup.mass, T,
                                             config.kmc.n_traj, config.kmc.seed,
                                             config.jobs);
    out.comment("seed: " + std::to_string(config.kmc.seed));
    for (const auto& d : est.diagnostics) out.comment("diagnostic: " + d);
    out.columns({"x_m", "y_m", "z_m", "vx_m_s", "vy_m_s", "vz_m_s", "ax_m_s2",
                 "ay_m_s2", "az_m_s2", "sigma_ax", "sigma_ay", "sigma_az"});
    out.row({r.x, r.y, r.z, v.x, v.y, v.z, est.a.x, est.a.y, est.a.z, est.sigma.x,
             est.sigma.y, est.sigma.z});
  }
  log << "wrote " << config.output << "\n";
}

void run_trajectory_mode(const RunConfig& config, std::ostream& log) {
  const RunSetup setup = materialize(config);
  const RateEvaluator rates(setup.scheme, setup.beams, setup.field);
  if (config.kmc.auto_time)
    throw ConfigError("kmc.measure_time_Gamma: required for trajectory mode");
  const double T = config.kmc.measure_time_gamma / setup.gamma_ref;

  KmcOptions options;
  options.sample_dt = config.kmc.sample_stride_gamma / setup.gamma_ref;

  CsvWriter out(config.output);
  write_header(out, config, "trajectories");
  out.comment("seed: " + std::to_string(config.kmc.seed));
  out.columns({"traj", "t_s", "x_m", "y_m", "z_m", "vx_m_s", "vy_m_s", "vz_m_s",
               "sublevel"});

  int first_lower = 0;
  for (int i = 0; i < setup.scheme.n(); ++i)
    if (!setup.scheme.sublevels[i].is_upper) { first_lower = i; break; }

  for (int traj = 0; traj < config.kmc.n_traj; ++traj) {
    TrajectoryState s0;
    s0.r = config.point.r_mm * 1e-3;
    s0.v = config.point.v_m_s;
    s0.sublevel = first_lower;
    const TrajectoryResult res =
        simulate_trajectory(s0, rates, setup.mass, T,
                            derive_seed(config.kmc.seed, traj), options);
    auto emit = [&](const TrajectoryState& st) {
      std::ostringstream line;
      line << traj << ',' << format_double(st.t) << ',' << format_double(st.r.x) << ','
           << format_double(st.r.y) << ',' << format_double(st.r.z) << ','
           << format_double(st.v.x) << ',' << format_double(st.v.y) << ','
           << format_double(st.v.z) << ',' << st.sublevel;
      out.raw_row(line.str());
    };
    for (const auto& st : res.samples) emit(st);
    emit(res.final_state);
  }
  log << "wrote " << config.output << " (" << config.kmc.n_traj << " trajectories)\n";
}

}  // namespace

void execute_run(const RunConfig& config, std::ostream& log) {
  switch (config.mode) {
    case RunMode::bundle:
      for (const auto& [name, sub] : config.runs) {
        RunConfig item = *sub;
        item.output = with_suffix(config.output, name);
        if (item.jobs == 1 && config.jobs > 1) item.jobs = config.jobs;
        execute_run(item, log);
      }
      return;
    case RunMode::steady_sweep:
    case RunMode::kmc_sweep:
      run_sweep_mode(config, log);
      return;
    case RunMode::steady_point:
    case RunMode::kmc_point:
      run_point_mode(config, log);
      return;
    case RunMode::trajectory:
      run_trajectory_mode(config, log);
      return;
  }
}

int run_config(const nlohmann::json& doc, const RunOverrides& overrides,
               std::ostream& log, std::ostream& err) {
  auto report = [&err](const char* type, const std::string& message) {
    nlohmann::json record = {{"error", {{"type", type}, {"message", message}}}};
    err << record.dump() << "\n";
  };

  try {
    RunConfig config = parse_config(doc);
    if (overrides.mode) {
      config.mode = run_mode_from_name(*overrides.mode);
      for (auto& [name, sub] : config.runs) sub->mode = config.mode;
    }
    if (overrides.output) config.output = *overrides.output;
    if (overrides.seed) {
      config.kmc.seed = *overrides.seed;
      for (auto& [name, sub] : config.runs) sub->kmc.seed = *overrides.seed;
    }
    if (overrides.jobs) {
      if (*overrides.jobs < 1) throw ConfigError("--jobs: must be >= 1");
      config.jobs = *overrides.jobs;
      for (auto& [name, sub] : config.runs) sub->jobs = *overrides.jobs;
    }
    execute_run(config, log);
    return kExitOk;
  } catch (const ConfigError& e) {
    report("config", e.what());
    return kExitConfigError;
  } catch (const DarkManifoldError& e) {
    report("dark_manifold", e.what());
    return kExitPhysicsDiagnostic;
  } catch (const NumericalError& e) {
    report("numerical", e.what());
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    report("error", e.what());
    return kExitNumericalFailure;
  }
}

}  // namespace bimot
