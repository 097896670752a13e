#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bimot/fields.hpp"
#include "bimot/scheme.hpp"

namespace bimot {

// Parsed, validated run description. Laboratory units as given in the
// document (detunings in Gamma, gradient in G/cm, lengths in mm); conversion
// to SI happens in materialize().
struct BeamConfig {
  Vec3 direction;                       // unit
  std::string polarization_preset;     // empty when explicit vector given
  std::optional<CVec3> polarization_vector;
  double detuning_gamma = 0.0;
  std::optional<double> saturation;
  std::optional<double> intensity_mw_cm2;
  std::string target_link;
  std::optional<double> schedule_period_gamma;
  double schedule_on_start_gamma = 0.0, schedule_on_end_gamma = 0.0;
};

struct GridConfig {
  std::string axis = "z";  // "z" | "v" | "zv"
  bool auto_range = true;
  double min = 0.0, max = 0.0;  // mm for z, m/s for v
  int n = 81;
  // full-grid second axis (v) when axis == "zv"
  double v_min = 0.0, v_max = 0.0;
  int v_n = 21;
};

struct PointConfig {
  Vec3 r_mm;
  Vec3 v_m_s;
};

struct KmcConfig {
  int n_traj = 1000;
  bool auto_time = true;
  double measure_time_gamma = 0.0;   // in 1/Gamma units when not auto
  std::uint64_t seed = 1;
  double sample_stride_gamma = 1.0;  // trajectory mode
};

enum class RunMode {
  steady_sweep,
  kmc_sweep,
  steady_point,
  kmc_point,
  trajectory,
  bundle,
};

RunMode run_mode_from_name(const std::string& name);
std::string run_mode_name(RunMode mode);

struct SchemeConfig {
  std::string preset;                         // one of the named presets, or empty
  std::map<std::string, double> g_overrides;  // level id -> Lande factor
  // Custom scheme (used when preset is empty).
  std::vector<LevelSpec> levels;
  std::vector<LinkSpec> links;
};

struct RunConfig {
  SchemeConfig scheme;
  double mass_u = kPresetMassU;
  MagneticFieldMap::Kind field_kind = MagneticFieldMap::Kind::linear_1d;
  double gradient_g_cm = 10.0;
  std::vector<BeamConfig> beams;
  RunMode mode = RunMode::steady_sweep;
  GridConfig grid;
  PointConfig point;
  KmcConfig kmc;
  std::string output = "out.csv";
  int jobs = 1;
  // bundle mode
  std::vector<std::pair<std::string, std::shared_ptr<RunConfig>>> runs;
};

// Throws ConfigError naming the offending field path.
RunConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);
std::string config_hash(const RunConfig& config);  // FNV-1a 64 over canonical JSON

// SI-ready objects.
struct RunSetup {
  LevelScheme scheme;
  std::vector<LaserBeam> beams;
  MagneticFieldMap field;
  double mass = 0.0;        // kg
  double gamma_ref = 0.0;   // rate scale used for Gamma-unit conversions
};

RunSetup materialize(const RunConfig& config);

// Grid in SI from a grid config, using +-3 Gamma Zeeman/Doppler spans when
// auto_range is set.
std::vector<double> resolve_grid_axis(const GridConfig& grid, bool velocity_axis,
                                      const RunSetup& setup);

}  // namespace bimot
