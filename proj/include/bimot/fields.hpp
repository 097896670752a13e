#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bimot/vec3.hpp"

namespace bimot {

// Square-wave on/off gate: the beam is active while fmod(t, period) lies in
// [on_start, on_end).
struct Schedule {
  double period = 0.0;
  double on_start = 0.0;
  double on_end = 0.0;

  bool active(double t) const;
  double duty() const { return (on_end - on_start) / period; }
};

// One monochromatic traveling wave. detuning0 is relative to the target
// link's transition at B = 0, v = 0.
struct LaserBeam {
  Vec3 direction;            // unit propagation direction
  double wavenumber = 0.0;   // rad/m
  double detuning0 = 0.0;    // rad/s
  double saturation = 0.0;   // s = 2|Omega|^2 / Gamma^2
  CVec3 polarization;        // unit, transverse to direction
  std::string target_link;
  std::optional<Schedule> schedule;
  std::string label;

  bool active(double t) const { return !schedule || schedule->active(t); }
};

// Named polarization states. sigma_plus / sigma_minus / pi_linear are defined
// relative to the lab z axis (they drive dM = +1 / -1 / 0 when the
// quantization axis is +z); helicity_plus / helicity_minus are circular about
// the beam's own propagation direction.
enum class PolarizationPreset {
  sigma_plus,
  sigma_minus,
  pi_linear,
  helicity_plus,
  helicity_minus,
};

PolarizationPreset polarization_preset_from_name(const std::string& name);
CVec3 make_polarization(PolarizationPreset preset, const Vec3& beam_direction);

// Spherical unit vector e_q about the given axis, q in {-1, 0, +1}
// (Condon-Shortley phases; the transverse pair is chosen deterministically).
CVec3 helicity_basis_vector(const Vec3& axis, int q);

// Fraction of the beam's intensity driving dM = -1, 0, +1 transitions about
// the given quantization axis; the triplet sums to 1.
std::array<double, 3> polarization_components(const LaserBeam& beam, const Vec3& axis);

struct MagneticFieldMap {
  enum class Kind { linear_1d, quadrupole_3d };
  Kind kind = Kind::linear_1d;
  double axial_gradient = 0.0;  // T/m along z

  // linear_1d: (0, 0, b'z);  quadrupole_3d: b'(-x/2, -y/2, z).
  Vec3 field(const Vec3& r) const;
};

// Quantization axis used throughout: along B, or lab +z where B vanishes.
Vec3 quantization_axis(const Vec3& B);

}  // namespace bimot
