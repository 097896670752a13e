#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bimot/kmc.hpp"
#include "bimot/rates.hpp"
#include "bimot/steady.hpp"

namespace bimot {

enum class SweepAxis { z_at_v0, v_at_z0, full_grid };
enum class SolveMethod { steady, kmc };

struct SweepGrid {
  std::vector<double> z;  // m      (z_at_v0, full_grid)
  std::vector<double> v;  // m/s    (v_at_z0, full_grid)
};

// Uniform symmetric grid with an odd point count (covers the origin).
std::vector<double> linear_grid(double min, double max, int n);

struct KmcSettings {
  int n_traj = 1000;
  double measure_time = 0.0;  // <= 0: auto
  std::uint64_t seed = 1;
};

// Acceleration samples over a (position, velocity) grid. Values are the z
// component of the acceleration in m/s^2; full_grid is row-major over
// (z index, v index).
struct ForceMap {
  SweepAxis axis = SweepAxis::z_at_v0;
  SolveMethod method = SolveMethod::steady;
  std::vector<double> z, v;
  std::vector<double> accel;
  std::vector<double> sigma;      // kmc only
  double accel_scale = 0.0;       // hbar k Gamma / m, the natural magnitude
  std::string config_hash;
  std::uint64_t seed = 0;
  int n_traj = 0;
};

// One force evaluation per grid point; grid points are independent, so the
// parallel driver must reproduce the serial reference bit for bit.
ForceMap sweep_forces(const RateEvaluator& rates, double mass, SweepAxis axis,
                      const SweepGrid& grid, SolveMethod method,
                      const KmcSettings& kmc, int jobs);
ForceMap sweep_forces_serial(const RateEvaluator& rates, double mass, SweepAxis axis,
                             const SweepGrid& grid, SolveMethod method,
                             const KmcSettings& kmc);

struct TrapMetrics {
  std::optional<double> stiffness;  // -d(a_z)/dz at origin, 1/s^2
  std::optional<double> damping;    // -d(a_z)/dv at origin, 1/s
  double peak_accel = 0.0;          // max |a| over the map
  double capture_range = 0.0;       // width of the restoring interval around 0
};

// Derivatives by 5-point central differences at the origin; the map must
// cover the origin with at least five uniformly spaced points. Restoring
// means a has the sign opposite to the coordinate, tested against the
// zero threshold 1e-10 * accel_scale.
TrapMetrics trap_metrics(const ForceMap& map);

}  // namespace bimot
