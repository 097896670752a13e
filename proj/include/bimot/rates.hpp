#pragma once

#include <vector>

#include "bimot/fields.hpp"
#include "bimot/scheme.hpp"
#include "bimot/vec3.hpp"

namespace bimot {

// Per-beam stimulated rates and spontaneous rates at one phase-space point.
struct RateMatrix {
  int n = 0;        // sublevels
  int n_beams = 0;
  std::vector<double> stim;   // [beam][upper][lower], rad/s
  std::vector<double> spont;  // [upper][lower], rad/s

  void resize(int n_sub, int beams) {
    n = n_sub;
    n_beams = beams;
    stim.assign(static_cast<size_t>(n_beams) * n * n, 0.0);
    spont.assign(static_cast<size_t>(n) * n, 0.0);
  }
  double stim_at(int beam, int upper, int lower) const {
    return stim[(static_cast<size_t>(beam) * n + upper) * n + lower];
  }
  double& stim_at(int beam, int upper, int lower) {
    return stim[(static_cast<size_t>(beam) * n + upper) * n + lower];
  }
  double spont_at(int upper, int lower) const {
    return spont[static_cast<size_t>(upper) * n + lower];
  }
  double& spont_at(int upper, int lower) {
    return spont[static_cast<size_t>(upper) * n + lower];
  }
  double stim_total(int upper, int lower) const {
    double sum = 0.0;
    for (int L = 0; L < n_beams; ++L) sum += stim_at(L, upper, lower);
    return sum;
  }
};

// delta = delta0 - k.v + mu_B |B| (g' M' - g'' M'') / hbar, with M quantized
// along the local field direction. The beam must target the link containing
// the (upper, lower) pair.
double beam_detuning(const LaserBeam& beam, const LevelScheme& scheme,
                     int upper, int lower, const Vec3& v, const Vec3& B);

// gamma = (Gamma/2) s c_q f / (1 + 4 delta^2 / Gamma^2), q = M' - M''.
double excitation_rate(const LaserBeam& beam, const LevelScheme& scheme,
                       int upper, int lower, const Vec3& v, const Vec3& B);

// Precomputes beam->channel bindings once; eval() is pure and thread-safe.
class RateEvaluator {
 public:
  struct BoundChannel {
    int upper = -1, lower = -1;
    int q = 0;
    double strength = 0.0;       // raw line strength
    double gamma_spont = 0.0;    // scheme channel rate (for bookkeeping)
    double gamma_link = 0.0;     // Gamma of the target link
    double prefactor = 0.0;      // (Gamma/2) * s * strength
  };

  RateEvaluator(LevelScheme scheme, std::vector<LaserBeam> beams,
                MagneticFieldMap field);

  const LevelScheme& scheme() const { return scheme_; }
  const std::vector<LaserBeam>& beams() const { return beams_; }
  const MagneticFieldMap& field_map() const { return field_; }
  const std::vector<std::vector<BoundChannel>>& beam_channels() const {
    return beam_channels_;
  }

  void eval(const Vec3& r, const Vec3& v, double t, RateMatrix& out) const;
  RateMatrix eval(const Vec3& r, const Vec3& v, double t) const;

  // Upper bound on the total event rate seen by any sublevel at any phase
  // point (used by the KMC thinning loop).
  double rate_bound() const;

 private:
  LevelScheme scheme_;
  std::vector<LaserBeam> beams_;
  MagneticFieldMap field_;
  std::vector<std::vector<BoundChannel>> beam_channels_;
};

// One-shot assembly (spec surface; RateEvaluator is the hot path).
RateMatrix rate_matrix(const LevelScheme& scheme, const std::vector<LaserBeam>& beams,
                       const MagneticFieldMap& field, const Vec3& r, const Vec3& v,
                       double t);

}  // namespace bimot
