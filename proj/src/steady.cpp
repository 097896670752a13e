#include "bimot/steady.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "bimot/constants.hpp"
#include "bimot/errors.hpp"

namespace bimot {

namespace {

// dRho/dt = A rho assembled from stimulated and spontaneous rates.
Eigen::MatrixXd rate_generator(const LevelScheme& scheme, const RateMatrix& rm) {
  const int n = scheme.n();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!scheme.sublevels[i].is_upper) continue;
    for (int j = 0; j < n; ++j) {
      const double g_sp = rm.spont_at(i, j);
      const double g_st = rm.stim_total(i, j);
      if (g_sp == 0.0 && g_st == 0.0) continue;
      // upper i: -Gamma_ij rho_i + gamma_ij (rho_j - rho_i)
      A(i, i) -= g_sp + g_st;
      A(i, j) += g_st;
      // lower j: +Gamma_ij rho_i + gamma_ij (rho_i - rho_j)
      A(j, i) += g_sp + g_st;
      A(j, j) -= g_st;
    }
  }
  return A;
}

// Sublevels belonging to closed classes when the rate graph is not one
// strongly connected component.
std::vector<int> trapped_sublevels(const LevelScheme& scheme, const RateMatrix& rm) {
  const int n = scheme.n();
  // reach[i][j]: a rate path leads from i to j.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) {
    reach[i][i] = true;
    if (!scheme.sublevels[i].is_upper) continue;
    for (int j = 0; j < n; ++j) {
      if (rm.spont_at(i, j) > 0.0 || rm.stim_total(i, j) > 0.0) reach[i][j] = true;
      if (rm.stim_total(i, j) > 0.0) reach[j][i] = true;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  bool single_scc = true;
  for (int i = 0; i < n && single_scc; ++i)
    for (int j = 0; j < n && single_scc; ++j)
      if (!(reach[i][j] && reach[j][i])) single_scc = false;
  if (single_scc) return {};

  // A sublevel is trapped if nothing escapes its communicating class.
  std::vector<int> trapped;
  for (int i = 0; i < n; ++i) {
    bool escapes = false;
    for (int j = 0; j < n && !escapes; ++j)
      if (reach[i][j] && !reach[j][i]) escapes = true;
    if (!escapes) trapped.push_back(i);
  }
  return trapped;
}

}  // namespace

PopulationVector steady_populations(const LevelScheme& scheme, const RateMatrix& rm) {
  const int n = scheme.n();
  const double gamma_scale = scheme.gamma_scale();

  const auto trapped = trapped_sublevels(scheme, rm);
  if (!trapped.empty()) {
    std::ostringstream msg;
    msg << "dark manifold: rate graph does not connect all sublevels; population "
           "trapped in {";
    for (size_t k = 0; k < trapped.size(); ++k) {
      const auto& sub = scheme.sublevels[trapped[k]];
      msg << (k ? ", " : "") << sub.level_id << " M=" << sub.M.str();
    }
    msg << "}";
    throw DarkManifoldError(msg.str(), trapped);
  }

  const Eigen::MatrixXd A = rate_generator(scheme, rm);
  Eigen::MatrixXd M = A;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  M.row(n - 1).setOnes();  // normalization replaces one dependent balance row
  b(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw NumericalError("steady_populations: singular rate system despite connected graph");
  Eigen::VectorXd rho = lu.solve(b);

  // Round-off housekeeping.
  double min_rho = rho.minCoeff();
  if (min_rho < -1e-12)
    throw NumericalError("steady_populations: negative population " +
                         std::to_string(min_rho));
  for (int i = 0; i < n; ++i)
    if (rho(i) < 0.0) rho(i) = 0.0;
  rho /= rho.sum();

  const double residual = (A * rho).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10 * gamma_scale)
    throw NumericalError("steady_populations: stationarity residual " +
                         std::to_string(residual / gamma_scale) + " Gamma");

  PopulationVector out;
  out.rho.assign(rho.data(), rho.data() + n);
  return out;
}

double stationarity_residual(const LevelScheme& scheme, const RateMatrix& rm,
                             const PopulationVector& rho) {
  const Eigen::MatrixXd A = rate_generator(scheme, rm);
  Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(rho.rho.data(), rho.rho.size());
  return (A * r).lpNorm<Eigen::Infinity>();
}

Vec3 scattering_force(const LevelScheme& scheme, const std::vector<LaserBeam>& beams,
                      const RateMatrix& rm, const PopulationVector& rho) {
  Vec3 F{};
  for (int L = 0; L < rm.n_beams; ++L) {
    double flux = 0.0;  // net photon absorption rate from this beam
    for (int i = 0; i < rm.n; ++i) {
      if (!scheme.sublevels[i].is_upper) continue;
      for (int j = 0; j < rm.n; ++j) {
        const double g = rm.stim_at(L, i, j);
        if (g != 0.0) flux += g * (rho.rho[j] - rho.rho[i]);
      }
    }
    F += beams[L].direction * (kHbar * beams[L].wavenumber * flux);
  }
  return F;
}

double force_low_sat(const RateEvaluator& rates, double z, double v,
                     std::vector<std::string>* diagnostics) {
  const LevelScheme& scheme = rates.scheme();
  const auto& beams = rates.beams();
  for (const auto& beam : beams)
    if (std::abs(beam.direction.z) < 1.0 - 1e-12)
      throw std::invalid_argument("force_low_sat: beams must propagate along +-z");

  const Vec3 r{0.0, 0.0, z};
  const Vec3 vel{0.0, 0.0, v};
  const RateMatrix rm = rates.eval(r, vel, 0.0);
  const PopulationVector rho = steady_populations(scheme, rm);

  double F = 0.0;
  for (int j = 0; j < scheme.n(); ++j) {
    if (scheme.sublevels[j].is_upper) continue;
    double g_plus = 0.0, g_minus = 0.0;
    for (int L = 0; L < rm.n_beams; ++L) {
      double g = 0.0;
      for (int i = 0; i < scheme.n(); ++i)
        if (scheme.sublevels[i].is_upper) g += rm.stim_at(L, i, j);
      (beams[L].direction.z > 0.0 ? g_plus : g_minus) += g;
    }
    double spont_in = 0.0;
    for (int i = 0; i < scheme.n(); ++i)
      if (scheme.sublevels[i].is_upper) spont_in += rm.spont_at(i, j) * rho.rho[i];

    if (g_plus + g_minus == 0.0) {
      if (spont_in > 0.0 && diagnostics)
        diagnostics->push_back("force_low_sat: sublevel " + std::to_string(j) +
                               " is populated but driven by no beam; term dropped");
      continue;
    }
    const double w = (g_plus - g_minus) / (g_plus + g_minus);

    // Photon momentum of the link feeding this sublevel.
    double k = 0.0;
    for (const auto& link : scheme.links) {
      for (const auto& ch : link.channels)
        if (ch.lower == j) { k = link.wavenumber(); break; }
      if (k != 0.0) break;
    }
    F += kHbar * k * w * spont_in;
  }
  return F;
}

}  // namespace bimot
