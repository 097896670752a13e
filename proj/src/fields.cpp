#include "bimot/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace bimot {

namespace {
constexpr double kAxisEpsilon = 1e-300;  // |B| below this counts as zero field
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

bool Schedule::active(double t) const {
  if (period <= 0.0) throw std::invalid_argument("Schedule: nonpositive period");
  double phase = std::fmod(t, period);
  if (phase < 0.0) phase += period;
  return phase >= on_start && phase < on_end;
}

PolarizationPreset polarization_preset_from_name(const std::string& name) {
  if (name == "sigma+" || name == "sigma_plus") return PolarizationPreset::sigma_plus;
  if (name == "sigma-" || name == "sigma_minus") return PolarizationPreset::sigma_minus;
  if (name == "pi" || name == "pi_linear") return PolarizationPreset::pi_linear;
  if (name == "helicity+" || name == "helicity_plus") return PolarizationPreset::helicity_plus;
  if (name == "helicity-" || name == "helicity_minus") return PolarizationPreset::helicity_minus;
  throw std::invalid_argument("unknown polarization preset '" + name + "'");
}

CVec3 helicity_basis_vector(const Vec3& axis, int q) {
  const Vec3 n = axis.normalized();
  if (q == 0) return {{n.x, 0.0}, {n.y, 0.0}, {n.z, 0.0}};
  // Deterministic transverse pair (u, v, n) right-handed.
  Vec3 u{0.0, 0.0, 0.0};
  if (std::abs(n.z) < 0.9) {
    u = Vec3{0.0, 0.0, 1.0}.cross(n).normalized();
  } else {
    u = Vec3{1.0, 0.0, 0.0};
    u = (u - n * u.dot(n)).normalized();
  }
  const Vec3 v = n.cross(u);
  if (q == +1)
    return {{-kInvSqrt2 * u.x, -kInvSqrt2 * v.x},
            {-kInvSqrt2 * u.y, -kInvSqrt2 * v.y},
            {-kInvSqrt2 * u.z, -kInvSqrt2 * v.z}};
  if (q == -1)
    return {{kInvSqrt2 * u.x, -kInvSqrt2 * v.x},
            {kInvSqrt2 * u.y, -kInvSqrt2 * v.y},
            {kInvSqrt2 * u.z, -kInvSqrt2 * v.z}};
  throw std::invalid_argument("helicity_basis_vector: q must be -1, 0 or +1");
}

CVec3 make_polarization(PolarizationPreset preset, const Vec3& beam_direction) {
  const Vec3 d = beam_direction.normalized();
  CVec3 pol;
  switch (preset) {
    case PolarizationPreset::sigma_plus:
      pol = helicity_basis_vector({0.0, 0.0, 1.0}, +1);
      break;
    case PolarizationPreset::sigma_minus:
      pol = helicity_basis_vector({0.0, 0.0, 1.0}, -1);
      break;
    case PolarizationPreset::pi_linear:
      pol = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}};
      break;
    case PolarizationPreset::helicity_plus:
      pol = helicity_basis_vector(d, +1);
      break;
    case PolarizationPreset::helicity_minus:
      pol = helicity_basis_vector(d, -1);
      break;
  }
  // Transversality of the resulting wave.
  const double along = std::abs(pol.dot_conj(d));
  if (along > 1e-9)
    throw std::invalid_argument(
        "polarization preset is not transverse to the beam direction "
        "(pi light needs a beam propagating perpendicular to z)");
  return pol;
}

std::array<double, 3> polarization_components(const LaserBeam& beam, const Vec3& axis) {
  std::array<double, 3> c{};
  for (int q = -1; q <= 1; ++q) {
    const CVec3 e = helicity_basis_vector(axis, q);
    c[q + 1] = std::norm(e.dot_conj(beam.polarization));
  }
  return c;
}

Vec3 MagneticFieldMap::field(const Vec3& r) const {
  switch (kind) {
    case Kind::linear_1d: return {0.0, 0.0, axial_gradient * r.z};
    case Kind::quadrupole_3d:
      return {-0.5 * axial_gradient * r.x, -0.5 * axial_gradient * r.y,
              axial_gradient * r.z};
  }
  return {};
}

Vec3 quantization_axis(const Vec3& B) {
  const double b = B.norm();
  if (b <= kAxisEpsilon) return {0.0, 0.0, 1.0};
  return B / b;
}

}  // namespace bimot
