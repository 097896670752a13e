#include "bimot/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bimot/constants.hpp"
#include "bimot/errors.hpp"
#include "bimot/rng.hpp"

namespace bimot {

std::vector<double> linear_grid(double min, double max, int n) {
  if (n < 2 || max <= min) throw std::invalid_argument("linear_grid: bad range");
  std::vector<double> g(n);
  const double h = (max - min) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = min + h * i;
  return g;
}

namespace {

struct PointList {
  std::vector<Vec3> r, v;
};

PointList grid_points(SweepAxis axis, const SweepGrid& grid) {
  PointList pts;
  switch (axis) {
    case SweepAxis::z_at_v0:
      if (grid.z.empty()) throw std::invalid_argument("sweep: empty z grid");
      for (double z : grid.z) {
        pts.r.push_back({0.0, 0.0, z});
        pts.v.push_back({0.0, 0.0, 0.0});
      }
      break;
    case SweepAxis::v_at_z0:
      if (grid.v.empty()) throw std::invalid_argument("sweep: empty v grid");
      for (double v : grid.v) {
        pts.r.push_back({0.0, 0.0, 0.0});
        pts.v.push_back({0.0, 0.0, v});
      }
      break;
    case SweepAxis::full_grid:
      if (grid.z.empty() || grid.v.empty())
        throw std::invalid_argument("sweep: empty grid");
      for (double z : grid.z)
        for (double v : grid.v) {
          pts.r.push_back({0.0, 0.0, z});
          pts.v.push_back({0.0, 0.0, v});
        }
      break;
  }
  return pts;
}

double natural_accel_scale(const RateEvaluator& rates, double mass) {
  double k_max = 0.0;
  for (const auto& link : rates.scheme().links)
    k_max = std::max(k_max, link.wavenumber());
  return kHbar * k_max * rates.scheme().gamma_scale() / mass;
}

ForceMap run_sweep(const RateEvaluator& rates, double mass, SweepAxis axis,
                   const SweepGrid& grid, SolveMethod method,
                   const KmcSettings& kmc, int jobs) {
  const PointList pts = grid_points(axis, grid);
  const int n_pts = static_cast<int>(pts.r.size());

  ForceMap map;
  map.axis = axis;
  map.method = method;
  map.z = grid.z;
  map.v = grid.v;
  map.accel.assign(n_pts, 0.0);
  map.accel_scale = natural_accel_scale(rates, mass);
  if (method == SolveMethod::kmc) {
    map.sigma.assign(n_pts, 0.0);
    map.seed = kmc.seed;
    map.n_traj = kmc.n_traj;
  }

  std::exception_ptr first_error = nullptr;
  std::atomic<bool> failed{false};

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs)) if (jobs > 1)
#endif
  for (int p = 0; p < n_pts; ++p) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      if (method == SolveMethod::steady) {
        const RateMatrix rm = rates.eval(pts.r[p], pts.v[p], 0.0);
        const PopulationVector rho = steady_populations(rates.scheme(), rm);
        const Vec3 F = scattering_force(rates.scheme(), rates.beams(), rm, rho);
        map.accel[p] = F.z / mass;
      } else {
        const ForceEstimate est = estimate_force(
            pts.r[p], pts.v[p], rates, mass, kmc.measure_time, kmc.n_traj,
            derive_seed(kmc.seed, 0x9eedull + static_cast<std::uint64_t>(p)), 1);
        map.accel[p] = est.a.z;
        map.sigma[p] = est.sigma.z;
      }
    } catch (...) {
      // Annotate with the failing grid point, keep the first failure.
      std::exception_ptr annotated;
      try {
        std::ostringstream at;
        at << " [at grid point z=" << pts.r[p].z << " m, v=" << pts.v[p].z << " m/s]";
        try {
          throw;
        } catch (const DarkManifoldError& e) {
          annotated = std::make_exception_ptr(
              DarkManifoldError(e.what() + at.str(), e.trapped_sublevels));
        } catch (const std::exception& e) {
          annotated = std::make_exception_ptr(NumericalError(e.what() + at.str()));
        }
      } catch (...) {
        annotated = std::current_exception();
      }
#ifdef _OPENMP
#pragma omp critical(bimot_sweep_error)
#endif
      {
        if (!first_error) first_error = annotated;
        failed.store(true, std::memory_order_relaxed);
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return map;
}

}  // namespace

ForceMap sweep_forces_serial(const RateEvaluator& rates, double mass, SweepAxis axis,
                             const SweepGrid& grid, SolveMethod method,
                             const KmcSettings& kmc) {
  return run_sweep(rates, mass, axis, grid, method, kmc, 1);
}

ForceMap sweep_forces(const RateEvaluator& rates, double mass, SweepAxis axis,
                      const SweepGrid& grid, SolveMethod method,
                      const KmcSettings& kmc, int jobs) {
  if (jobs <= 1) return sweep_forces_serial(rates, mass, axis, grid, method, kmc);
  return run_sweep(rates, mass, axis, grid, method, kmc, jobs);
}

namespace {

// Index of the origin in a uniform grid, with spacing; throws when the grid
// cannot support 5-point central differences there.
std::pair<int, double> origin_stencil(const std::vector<double>& grid) {
  if (grid.size() < 5)
    throw std::invalid_argument("trap_metrics: need at least 5 grid points");
  int c = -1;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < grid.size(); ++i)
    if (std::abs(grid[i]) < best) {
      best = std::abs(grid[i]);
      c = static_cast<int>(i);
    }
  const double h = grid[1] - grid[0];
  if (best > 1e-9 * std::abs(h))
    throw std::invalid_argument("trap_metrics: grid does not cover the origin");
  if (c < 2 || c + 2 >= static_cast<int>(grid.size()))
    throw std::invalid_argument("trap_metrics: origin too close to the grid edge");
  for (size_t i = 1; i < grid.size(); ++i)
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-9 * std::abs(h))
      throw std::invalid_argument("trap_metrics: grid is not uniform");
  return {c, h};
}

double five_point_slope(const std::vector<double>& f, int c, double h) {
  return (-f[c + 2] + 8.0 * f[c + 1] - 8.0 * f[c - 1] + f[c - 2]) / (12.0 * h);
}

// Width of the contiguous restoring interval around the origin.
double restoring_range(const std::vector<double>& coord, const std::vector<double>& a,
                       int c, double threshold) {
  double hi = 0.0, lo = 0.0;
  for (int i = c + 1; i < static_cast<int>(coord.size()); ++i) {
    if (a[i] < -threshold) hi = coord[i];
    else break;
  }
  for (int i = c - 1; i >= 0; --i) {
    if (a[i] > threshold) lo = coord[i];
    else break;
  }
  return hi - lo;
}

}  // namespace

TrapMetrics trap_metrics(const ForceMap& map) {
  if (map.axis == SweepAxis::full_grid)
    throw std::invalid_argument("trap_metrics: pass a single-axis map");

  const std::vector<double>& coord = map.axis == SweepAxis::z_at_v0 ? map.z : map.v;
  if (coord.size() != map.accel.size())
    throw std::invalid_argument("trap_metrics: inconsistent map");

  const auto [c, h] = origin_stencil(coord);
  const double slope = five_point_slope(map.accel, c, h);
  const double threshold = 1e-10 * map.accel_scale;

  TrapMetrics m;
  if (map.axis == SweepAxis::z_at_v0)
    m.stiffness = -slope;
  else
    m.damping = -slope;
  for (double a : map.accel) m.peak_accel = std::max(m.peak_accel, std::abs(a));
  m.capture_range = restoring_range(coord, map.accel, c, threshold);
  return m;
}

}  // namespace bimot
