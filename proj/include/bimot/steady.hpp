#pragma once

#include <string>
#include <vector>

#include "bimot/rates.hpp"

namespace bimot {

struct PopulationVector {
  std::vector<double> rho;  // occupation per sublevel, sums to 1
};

// Exact stationary solution of the rate equations with the normalization
// Sum(rho) = 1. Throws DarkManifoldError when the nonzero-rate graph does not
// connect all sublevels (trapped population, answer not unique/meaningful),
// NumericalError on solver breakdown.
PopulationVector steady_populations(const LevelScheme& scheme, const RateMatrix& rm);

// F = sum_L hbar k_L sum_{ij} gamma^L_ij (rho_j - rho_i), newtons.
Vec3 scattering_force(const LevelScheme& scheme, const std::vector<LaserBeam>& beams,
                      const RateMatrix& rm, const PopulationVector& rho);

// Low-saturation 1D force: F ~ hbar k sum_j w_j sum_i Gamma_ij rho_i with
// w_j = (gamma_j+ - gamma_j-) / (gamma_j+ + gamma_j-), evaluated with the
// steady populations of the full system. Beams must propagate along +-z.
// Valid for s << 1 (not enforced). Returns the z force component.
double force_low_sat(const RateEvaluator& rates, double z, double v,
                     std::vector<std::string>* diagnostics = nullptr);

// Stationarity residual max_i |d rho_i / dt| for diagnostics/tests.
double stationarity_residual(const LevelScheme& scheme, const RateMatrix& rm,
                             const PopulationVector& rho);

}  // namespace bimot
