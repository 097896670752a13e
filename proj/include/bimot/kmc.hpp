#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimot/rates.hpp"

namespace bimot {

struct TrajectoryState {
  Vec3 r;            // m
  Vec3 v;            // m/s
  int sublevel = 0;  // index into LevelScheme::sublevels
  double t = 0.0;    // s
};

struct EventCounts {
  std::int64_t absorptions = 0;
  std::int64_t stimulated_emissions = 0;
  std::int64_t spontaneous_emissions = 0;
  std::int64_t null_events = 0;
};

struct TrajectoryResult {
  TrajectoryState final_state;
  std::vector<TrajectoryState> samples;     // at multiples of sample_dt
  EventCounts counts;
  Vec3 recoil_velocity_sum;                 // sum of every velocity kick
  std::vector<Vec3> spontaneous_directions; // filled when requested
};

struct KmcOptions {
  double sample_dt = 0.0;           // 0: no intermediate samples
  bool record_spontaneous_directions = false;
};

// Event-driven jump process: stimulated absorption (+hbar k), stimulated
// emission (-hbar k), spontaneous emission (hbar k, isotropic direction),
// exponential waiting times by thinning against a global rate bound,
// ballistic flight between events. Identical (inputs, seed) give bit-identical
// trajectories.
TrajectoryResult simulate_trajectory(const TrajectoryState& initial,
                                     const RateEvaluator& rates, double mass,
                                     double duration, std::uint64_t seed,
                                     const KmcOptions& options = {});

// Same engine; named entry point for time-gated (switched) beam sets.
TrajectoryResult simulate_switched(const TrajectoryState& initial,
                                   const RateEvaluator& rates, double mass,
                                   double duration, std::uint64_t seed,
                                   const KmcOptions& options = {});

struct ForceEstimate {
  Vec3 a;       // acceleration, m/s^2
  Vec3 sigma;   // standard error per component
  int n_traj = 0;
  double measure_time = 0.0;      // s
  double equilibration_time = 0.0;
  std::vector<std::string> diagnostics;
};

// Displacement budgets from the Zeeman length and Doppler width; auto
// selection uses bounds/10.
struct MeasureBudget {
  double zeeman_length;   // Gamma hbar / (mu_B g'' b'), inf when undefined
  double doppler_width;   // Gamma / k, m/s
};
MeasureBudget measure_budget(const RateEvaluator& rates);
double auto_measure_time(const RateEvaluator& rates, double mass, const Vec3& v0);

// a = mean(dv)/T over n_traj independent trajectories after an internal-state
// equilibration window; per-trajectory seeds derive from (seed, index) so the
// result is independent of worker count. duration <= 0 selects T
// automatically.
ForceEstimate estimate_force(const Vec3& r0, const Vec3& v0,
                             const RateEvaluator& rates, double mass,
                             double duration, int n_traj, std::uint64_t seed,
                             int jobs);

}  // namespace bimot
