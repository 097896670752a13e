#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace bimot {

// Ready-to-run configuration documents for the standard scenarios (the 1D
// null-force check, bichromatic trap/cool maps, the J=1/2 -> 1/2 case, the
// C2- schemes, switched operation, the 3D MOT). `bimot presets show <name>`
// prints them.
std::vector<std::string> config_preset_names();
nlohmann::json config_preset(const std::string& name);

namespace presets {

// One beam along +-z; polarization names follow the lab-z convention.
nlohmann::json beam(const std::array<double, 3>& dir, const std::string& pol,
                    double detuning_gamma, double saturation,
                    const std::string& link = "main");

// Counter-propagating pair on one link with opposite circular polarizations.
// lminus_drives_dm_plus selects which side drives dM = +1; the restoring
// choice depends on the sign of the lower-state g factor.
nlohmann::json counter_pair(const std::string& link, double detuning_gamma,
                            double saturation, bool lminus_drives_dm_plus);

// Red-detuned pair plus opposite-polarization pair at detuning2 (the
// bichromatic configuration) for the Lambda system, g'' < 0.
nlohmann::json lambda_bichromatic_beams(double detuning2_gamma, double saturation);

// Single red-detuned pair on the J''=0 -> J'=1 reference system, g' < 0.
nlohmann::json type1_beams(double saturation);

// J''=1/2 -> J'=1/2, g'' > 0: single pair / bichromatic pairs.
nlohmann::json jhalf_mono_beams(double saturation);
nlohmann::json jhalf_bichromatic_beams(double detuning2_gamma, double saturation);

// C2- scheme variants 1..3: red-detuned cooling pair(s) on the chosen
// transition(s) plus resonant pairs on both transitions.
nlohmann::json c2minus_beams(int variant, double intensity_mw_cm2);

// Six-arm 3D configuration, both frequencies, handedness mirrored on the
// transverse arms to match the quadrupole gradient signs.
nlohmann::json mot3d_beams(double detuning2_gamma, double saturation);

// Two alternating beam sets: red pair in the first half-period, the
// opposite-polarization resonant pair in the second. Window saturations are
// doubled so the duty-averaged power matches the continuous bichromatic
// configuration.
nlohmann::json switched_beams(double period_gamma, double saturation_continuous);

}  // namespace presets

}  // namespace bimot
