#include "bimot/kmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bimot/constants.hpp"
#include "bimot/rng.hpp"

namespace bimot {

namespace {

// Stimulated and spontaneous channels touching one sublevel, fixed order.
struct OutChannel {
  int beam = -1;          // -1: spontaneous
  int other = 0;          // partner sublevel
  int q = 0;              // M_upper - M_lower
  double prefactor = 0.0; // stimulated: (Gamma/2) s f; spontaneous: Gamma_ij
  double gamma_link = 0.0;
  double delta0 = 0.0;
  double k_recoil = 0.0;  // photon wavenumber for the momentum kick
  bool upward = false;    // absorption (lower -> upper)
  double zeeman_coeff = 0.0;  // (g'M' - g''M'') mu_B / hbar
};

struct ChannelTable {
  std::vector<std::vector<OutChannel>> by_sublevel;
  double rate_bound = 0.0;
};

ChannelTable build_channels(const RateEvaluator& rates) {
  const LevelScheme& scheme = rates.scheme();
  const auto& beams = rates.beams();
  ChannelTable table;
  table.by_sublevel.resize(scheme.n());
  table.rate_bound = rates.rate_bound();

  for (size_t L = 0; L < beams.size(); ++L) {
    for (const auto& ch : rates.beam_channels()[L]) {
      const Sublevel& up = scheme.sublevels[ch.upper];
      const Sublevel& low = scheme.sublevels[ch.lower];
      OutChannel base;
      base.beam = static_cast<int>(L);
      base.q = ch.q;
      base.prefactor = ch.prefactor;
      base.gamma_link = ch.gamma_link;
      base.delta0 = beams[L].detuning0;
      base.k_recoil = beams[L].wavenumber;
      base.zeeman_coeff =
          kBohrMagneton * (up.g * up.M.value() - low.g * low.M.value()) / kHbar;

      OutChannel absorb = base;
      absorb.other = ch.upper;
      absorb.upward = true;
      table.by_sublevel[ch.lower].push_back(absorb);

      OutChannel emit = base;
      emit.other = ch.lower;
      emit.upward = false;
      table.by_sublevel[ch.upper].push_back(emit);
    }
  }
  for (const auto& link : scheme.links) {
    for (const auto& ch : link.channels) {
      OutChannel sp;
      sp.beam = -1;
      sp.other = ch.lower;
      sp.prefactor = ch.gamma_spont;
      sp.k_recoil = link.wavenumber();
      table.by_sublevel[ch.upper].push_back(sp);
    }
  }
  return table;
}

Vec3 isotropic_direction(std::mt19937_64& gen) {
  const double cos_theta = 2.0 * uniform01(gen) - 1.0;
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const double phi = 2.0 * kPi * uniform01(gen);
  return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

}  // namespace

TrajectoryResult simulate_trajectory(const TrajectoryState& initial,
                                     const RateEvaluator& rates, double mass,
                                     double duration, std::uint64_t seed,
                                     const KmcOptions& options) {
  if (duration <= 0.0)
    throw std::invalid_argument("simulate_trajectory: duration must be positive");
  if (mass <= 0.0) throw std::invalid_argument("simulate_trajectory: nonpositive mass");
  if (initial.sublevel < 0 || initial.sublevel >= rates.scheme().n())
    throw std::invalid_argument("simulate_trajectory: sublevel index out of range");

  const LevelScheme& scheme = rates.scheme();
  const auto& beams = rates.beams();
  const MagneticFieldMap& field = rates.field_map();
  const ChannelTable table = build_channels(rates);
  const double gamma_scale = scheme.gamma_scale();

  // Flight-step cap: a fraction of the natural timescale, tightened when the
  // Zeeman detuning drifts quickly at the current speed.
  double g_max = 0.0;
  for (const auto& sub : scheme.sublevels) g_max = std::max(g_max, std::abs(sub.g));
  const double zeeman_slope =
      kBohrMagneton * g_max * std::abs(field.axial_gradient) / kHbar;  // rad/s per m

  std::mt19937_64 gen(splitmix64(seed));

  TrajectoryResult result;
  TrajectoryState s = initial;
  const double t_end = initial.t + duration;
  double next_sample =
      options.sample_dt > 0.0 ? initial.t + options.sample_dt
                              : std::numeric_limits<double>::infinity();

  const double recoil_scale = kHbar / mass;
  std::vector<double> weights;  // cumulative channel rates, reused

  while (s.t < t_end) {
    double dt_cap = 0.1 / gamma_scale;
    const double drift = zeeman_slope * s.v.norm();
    if (drift > 0.0) dt_cap = std::min(dt_cap, 0.1 * gamma_scale / drift);

    const double u = uniform01_open(gen);
    const double proposal = -std::log(u) / table.rate_bound;
    const double step = std::min({proposal, dt_cap, t_end - s.t});

    // Ballistic flight, emitting stride samples on the way.
    while (next_sample <= s.t + step) {
      TrajectoryState snap = s;
      snap.r = s.r + s.v * (next_sample - s.t);
      snap.t = next_sample;
      result.samples.push_back(snap);
      next_sample += options.sample_dt;
    }
    s.r += s.v * step;
    s.t += step;

    if (step < proposal || s.t >= t_end) continue;  // capped flight or done: no event test

    // Proposal point: accept with probability R / rate_bound.
    const Vec3 B = field.field(s.r);
    const double b_mag = B.norm();
    const Vec3 axis = quantization_axis(B);
    const CVec3 basis[3] = {helicity_basis_vector(axis, -1),
                            helicity_basis_vector(axis, 0),
                            helicity_basis_vector(axis, +1)};

    const auto& channels = table.by_sublevel[s.sublevel];
    weights.resize(channels.size());
    double total = 0.0;
    for (size_t c = 0; c < channels.size(); ++c) {
      const OutChannel& ch = channels[c];
      double rate = 0.0;
      if (ch.beam < 0) {
        rate = ch.prefactor;
      } else if (beams[ch.beam].active(s.t)) {
        const double cq = std::norm(basis[ch.q + 1].dot_conj(beams[ch.beam].polarization));
        if (cq > 0.0) {
          const double delta = ch.delta0 -
                               beams[ch.beam].wavenumber *
                                   beams[ch.beam].direction.dot(s.v) +
                               ch.zeeman_coeff * b_mag;
          const double x = 2.0 * delta / ch.gamma_link;
          rate = ch.prefactor * cq / (1.0 + x * x);
        }
      }
      total += rate;
      weights[c] = total;
    }

    const double pick = uniform01(gen) * table.rate_bound;
    if (pick >= total) {
      ++result.counts.null_events;
      continue;
    }
    const size_t c = std::upper_bound(weights.begin(), weights.end(), pick) -
                     weights.begin();
    const OutChannel& ch = channels[c];

    Vec3 kick;
    if (ch.beam < 0) {
      const Vec3 dir = isotropic_direction(gen);
      kick = dir * (recoil_scale * ch.k_recoil);
      if (options.record_spontaneous_directions)
        result.spontaneous_directions.push_back(dir);
      ++result.counts.spontaneous_emissions;
    } else if (ch.upward) {
      kick = beams[ch.beam].direction * (recoil_scale * ch.k_recoil);
      ++result.counts.absorptions;
    } else {
      kick = beams[ch.beam].direction * (-recoil_scale * ch.k_recoil);
      ++result.counts.stimulated_emissions;
    }
    s.v += kick;
    result.recoil_velocity_sum += kick;
    s.sublevel = ch.other;
  }

  result.final_state = s;
  return result;
}

TrajectoryResult simulate_switched(const TrajectoryState& initial,
                                   const RateEvaluator& rates, double mass,
                                   double duration, std::uint64_t seed,
                                   const KmcOptions& options) {
  return simulate_trajectory(initial, rates, mass, duration, seed, options);
}

MeasureBudget measure_budget(const RateEvaluator& rates) {
  const LevelScheme& scheme = rates.scheme();
  MeasureBudget b{};
  double g_max = 0.0;
  for (const auto& sub : scheme.sublevels)
    if (!sub.is_upper) g_max = std::max(g_max, std::abs(sub.g));
  const double gamma = scheme.gamma_scale();
  const double slope =
      kBohrMagneton * g_max * std::abs(rates.field_map().axial_gradient);
  b.zeeman_length =
      slope > 0.0 ? gamma * kHbar / slope : std::numeric_limits<double>::infinity();

  double k_max = 0.0;
  for (const auto& link : scheme.links) k_max = std::max(k_max, link.wavenumber());
  b.doppler_width =
      k_max > 0.0 ? gamma / k_max : std::numeric_limits<double>::infinity();
  return b;
}

double auto_measure_time(const RateEvaluator& rates, double mass, const Vec3& v0) {
  const LevelScheme& scheme = rates.scheme();
  const MeasureBudget budget = measure_budget(rates);
  const double gamma = scheme.gamma_scale();

  double k_max = 0.0;
  for (const auto& link : scheme.links) k_max = std::max(k_max, link.wavenumber());
  // Saturated two-level scattering sets the acceleration scale.
  const double a_bound = kHbar * k_max * gamma / (2.0 * mass);

  double t_z = std::numeric_limits<double>::infinity();
  if (std::isfinite(budget.zeeman_length)) {
    const double dz = budget.zeeman_length / 10.0;
    const double speed = v0.norm();
    t_z = (std::sqrt(speed * speed + 2.0 * a_bound * dz) - speed) / a_bound;
  }
  double t_v = std::numeric_limits<double>::infinity();
  if (std::isfinite(budget.doppler_width)) t_v = budget.doppler_width / (10.0 * a_bound);

  double T = std::min(t_z, t_v);
  if (!std::isfinite(T)) T = 100.0 / gamma;
  return std::max(T, 20.0 / gamma);
}

ForceEstimate estimate_force(const Vec3& r0, const Vec3& v0,
                             const RateEvaluator& rates, double mass,
                             double duration, int n_traj, std::uint64_t seed,
                             int jobs) {
  if (n_traj < 1) throw std::invalid_argument("estimate_force: n_traj must be >= 1");

  const double gamma = rates.scheme().gamma_scale();
  const double T = duration > 0.0 ? duration : auto_measure_time(rates, mass, v0);
  const double T_eq = 15.0 / gamma;

  ForceEstimate est;
  est.n_traj = n_traj;
  est.measure_time = T;
  est.equilibration_time = T_eq;

  // Flag measurement windows that clearly leave the validity region.
  const MeasureBudget budget = measure_budget(rates);
  double k_max = 0.0;
  for (const auto& link : rates.scheme().links)
    k_max = std::max(k_max, link.wavenumber());
  const double a_bound = kHbar * k_max * gamma / (2.0 * mass);
  const double t_total = T + T_eq;
  const double dz_est = v0.norm() * t_total + 0.5 * a_bound * t_total * t_total;
  const double dv_est = a_bound * t_total;
  if (dz_est > budget.zeeman_length)
    est.diagnostics.push_back("measurement window drifts beyond the Zeeman length");
  if (dv_est > budget.doppler_width)
    est.diagnostics.push_back("measurement window drifts beyond the Doppler width");

  const auto& lower_candidates = [&] {
    std::vector<int> lowers;
    for (int i = 0; i < rates.scheme().n(); ++i)
      if (!rates.scheme().sublevels[i].is_upper) lowers.push_back(i);
    return lowers;
  }();
  if (lower_candidates.empty())
    throw std::invalid_argument("estimate_force: scheme has no lower sublevels");

  std::vector<Vec3> dv(n_traj);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs))
#endif
  for (int i = 0; i < n_traj; ++i) {
    const std::uint64_t s_i = derive_seed(seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 pick(splitmix64(s_i ^ 0xC0FFEEull));
    TrajectoryState s0;
    s0.r = r0;
    s0.v = v0;
    s0.sublevel = lower_candidates[pick() % lower_candidates.size()];
    s0.t = 0.0;

    const TrajectoryResult eq =
        simulate_trajectory(s0, rates, mass, T_eq, splitmix64(s_i ^ 0xE0ull));
    const TrajectoryResult run =
        simulate_trajectory(eq.final_state, rates, mass, T, splitmix64(s_i ^ 0xF1ull));
    dv[i] = run.final_state.v - eq.final_state.v;
  }

  Vec3 mean{};
  for (int i = 0; i < n_traj; ++i) mean += dv[i];  // fixed order: reproducible
  mean = mean / static_cast<double>(n_traj);

  Vec3 var{};
  for (int i = 0; i < n_traj; ++i) {
    const Vec3 d = dv[i] - mean;
    var += Vec3{d.x * d.x, d.y * d.y, d.z * d.z};
  }
  const double norm = n_traj > 1 ? 1.0 / (n_traj - 1.0) : 0.0;

  est.a = mean / T;
  est.sigma = Vec3{std::sqrt(var.x * norm / n_traj), std::sqrt(var.y * norm / n_traj),
                   std::sqrt(var.z * norm / n_traj)} /
              T;
  return est;
}

}  // namespace bimot
