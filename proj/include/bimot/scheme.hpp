#pragma once

#include <string>
#include <vector>

#include "bimot/halfint.hpp"

namespace bimot {

struct Sublevel {
  std::string level_id;
  HalfInt J, M;
  double g = 0.0;              // Lande factor
  double energy_offset = 0.0;  // rad/s relative to the scheme reference
  bool is_upper = false;
};

// One sublevel-to-sublevel dipole channel of a radiative link.
struct TransitionChannel {
  int upper = -1, lower = -1;  // indices into LevelScheme::sublevels
  int q = 0;                   // M_upper - M_lower
  double strength = 0.0;       // raw |<J'' M'', 1 q | J' M'>|^2
  double gamma_spont = 0.0;    // spontaneous decay rate of this channel, rad/s
};

struct RadiativeLink {
  std::string id;
  std::string upper_level, lower_level;
  double gamma_total = 0.0;      // Gamma of the upper state, rad/s
  double wavelength = 0.0;       // m
  double manifold_weight = 1.0;  // share of Gamma decaying through this link
  std::vector<TransitionChannel> channels;

  double wavenumber() const;  // 2 pi / wavelength
};

struct LevelScheme {
  std::vector<Sublevel> sublevels;
  std::vector<RadiativeLink> links;

  int n() const { return static_cast<int>(sublevels.size()); }
  int index_of(const std::string& level_id, HalfInt M) const;  // -1 if absent
  std::vector<int> level_indices(const std::string& level_id) const;
  const RadiativeLink* find_link(const std::string& id) const;  // nullptr if absent

  // Largest total decay rate of any upper sublevel (the natural rate scale).
  double gamma_scale() const;
  // Sum of all spontaneous channel rates (used for KMC rate bounds).
  double gamma_channel_sum() const;
  // Total spontaneous decay rate out of upper sublevel i.
  double gamma_out(int upper_index) const;
};

// Declarative inputs for scheme construction. Branching is derived from
// line_strength; excluded M sublevels redistribute their share so that each
// upper sublevel keeps a total decay rate Gamma.
struct LevelSpec {
  std::string id;
  HalfInt J;
  double g = 0.0;
  double energy_offset = 0.0;
  bool is_upper = false;
  std::vector<int> exclude_twice_m;  // omitted sublevels (twice-M values)
};

struct LinkSpec {
  std::string id;
  std::string upper, lower;
  double gamma_total = 0.0;  // rad/s
  double wavelength = 0.0;   // m
};

LevelScheme build_scheme(const std::vector<LevelSpec>& levels,
                         const std::vector<LinkSpec>& links);

enum class SchemePreset {
  type1_0to1,
  lambda_1to0,
  lambda_1to0_with_M0,
  j_half_to_half,
  c2minus_i,
  c2minus_ii,
  c2minus_iii,
};

SchemePreset scheme_preset_from_name(const std::string& name);
std::vector<std::string> scheme_preset_names();
LevelScheme build_preset(SchemePreset preset);

// Empty when all scheme invariants hold, otherwise human-readable violations.
std::vector<std::string> validate(const LevelScheme& scheme);

// Optical parameters shared by the built-in presets (C2- B-X scale):
// lifetime 75 ns, wavelength 541 nm, mass 2 x 12.011 u.
inline constexpr double kPresetGamma = 1.0 / 75e-9;     // rad/s
inline constexpr double kPresetWavelength = 541e-9;     // m
inline constexpr double kPresetMassU = 24.022;          // u

}  // namespace bimot
