#include "bimot/config_presets.hpp"

#include <stdexcept>

namespace bimot {

namespace presets {

using nlohmann::json;

json beam(const std::array<double, 3>& dir, const std::string& pol,
          double detuning_gamma, double saturation, const std::string& link) {
  return json{{"direction", dir},
              {"polarization", pol},
              {"detuning_Gamma", detuning_gamma},
              {"saturation", saturation},
              {"target_link", link}};
}

json counter_pair(const std::string& link, double detuning_gamma, double saturation,
                  bool lminus_drives_dm_plus) {
  json beams = json::array();
  const std::string pol_plus = lminus_drives_dm_plus ? "sigma-" : "sigma+";
  const std::string pol_minus = lminus_drives_dm_plus ? "sigma+" : "sigma-";
  beams.push_back(beam({0, 0, 1}, pol_plus, detuning_gamma, saturation, link));
  beams.push_back(beam({0, 0, -1}, pol_minus, detuning_gamma, saturation, link));
  return beams;
}

namespace {

json concat(std::initializer_list<json> arrays) {
  json out = json::array();
  for (const auto& a : arrays)
    for (const auto& b : a) out.push_back(b);
  return out;
}

}  // namespace

json lambda_bichromatic_beams(double detuning2_gamma, double saturation) {
  // g'' < 0: red pair with L+ driving dM=+1, second pair mirrored.
  return concat({counter_pair("main", -1.0, saturation, false),
                 counter_pair("main", detuning2_gamma, saturation, true)});
}

json type1_beams(double saturation) {
  return counter_pair("main", -1.0, saturation, false);
}

json jhalf_mono_beams(double saturation) {
  return counter_pair("main", -1.0, saturation, true);
}

json jhalf_bichromatic_beams(double detuning2_gamma, double saturation) {
  // g'' > 0: handedness swapped relative to the Lambda case.
  return concat({counter_pair("main", -1.0, saturation, true),
                 counter_pair("main", detuning2_gamma, saturation, false)});
}

json c2minus_beams(int variant, double intensity_mw_cm2) {
  if (variant < 1 || variant > 3)
    throw std::invalid_argument("c2minus_beams: variant must be 1, 2 or 3");
  auto pair = [&](const std::string& link, double detuning, bool lminus_plus) {
    json beams = counter_pair(link, detuning, 1.0, lminus_plus);
    for (auto& b : beams) {
      b.erase("saturation");
      b["intensity_mW_cm2"] = intensity_mw_cm2;
    }
    return beams;
  };
  // Handedness per link follows the sign of the lower-state g factor:
  // g(J''=1/2) > 0, g(J''=3/2) < 0.
  const json red_j12 = pair("J12", -1.0, true);
  const json red_j32 = pair("J32", -1.0, false);
  const json res_j12 = pair("J12", 0.0, false);
  const json res_j32 = pair("J32", 0.0, true);
  switch (variant) {
    case 1: return concat({red_j12, res_j12, res_j32});
    case 2: return concat({red_j32, res_j12, res_j32});
    default: return concat({red_j12, red_j32, res_j12, res_j32});
  }
}

json mot3d_beams(double detuning2_gamma, double saturation) {
  json beams = json::array();
  const std::array<std::array<double, 3>, 6> arms = {{{0, 0, 1},
                                                      {0, 0, -1},
                                                      {1, 0, 0},
                                                      {-1, 0, 0},
                                                      {0, 1, 0},
                                                      {0, -1, 0}}};
  for (const auto& d : arms) {
    const bool axial = d[2] != 0.0;
    // Transverse quadrupole gradient has the opposite sign and so needs the
    // opposite handedness about the beam axis.
    const std::string red_pol = axial ? "helicity+" : "helicity-";
    const std::string res_pol = axial ? "helicity-" : "helicity+";
    beams.push_back(beam(d, red_pol, -1.0, saturation));
    beams.push_back(beam(d, res_pol, detuning2_gamma, saturation));
  }
  return beams;
}

json switched_beams(double period_gamma, double saturation_continuous) {
  const double half = 0.5 * period_gamma;
  const double s_window = 2.0 * saturation_continuous;
  json window_a = counter_pair("main", -1.0, s_window, false);
  json window_b = counter_pair("main", 0.0, s_window, true);
  for (auto& b : window_a)
    b["schedule"] = {{"period_Gamma", period_gamma}, {"on_Gamma", {0.0, half}}};
  for (auto& b : window_b)
    b["schedule"] = {{"period_Gamma", period_gamma}, {"on_Gamma", {half, period_gamma}}};
  return concat({window_a, window_b});
}

}  // namespace presets

namespace {

using nlohmann::json;

json grid_z_mm(double span_mm, int n) {
  return json{{"axis", "z"}, {"min_mm", -span_mm}, {"max_mm", span_mm}, {"n", n}};
}

json grid_v(double span, int n) {
  return json{{"axis", "v"}, {"min_m_s", -span}, {"max_m_s", span}, {"n", n}};
}

json auto_grid(const std::string& axis, int n) {
  return json{{"axis", axis}, {"auto", true}, {"n", n}};
}

json base_run(const std::string& scheme, const json& beams, const json& grid,
              const std::string& mode) {
  return json{{"scheme", scheme},
              {"field", {{"kind", "linear_1d"}, {"gradient_G_per_cm", 10.0}}},
              {"beams", beams},
              {"mode", mode},
              {"grid", grid}};
}

json bundle(std::initializer_list<std::pair<std::string, json>> runs,
            const std::string& output) {
  json doc;
  doc["mode"] = "bundle";
  doc["output"] = output;
  json items = json::array();
  for (const auto& [name, cfg] : runs) items.push_back({{"name", name}, {"config", cfg}});
  doc["runs"] = items;
  return doc;
}

json preset_null_force() {
  json run = base_run("lambda_1to0", presets::counter_pair("main", -1.0, 1.0, false),
                      auto_grid("zv", 21), "steady_sweep");
  run["grid"]["v_n"] = 21;
  run["output"] = "null_force.csv";
  return run;
}

json preset_fig2() {
  const json bi = presets::lambda_bichromatic_beams(0.0, 1.0);
  const json t1 = presets::type1_beams(1.0);
  json trap_bi = base_run("lambda_1to0", bi, auto_grid("z", 81), "steady_sweep");
  json cool_bi = base_run("lambda_1to0", bi, auto_grid("v", 81), "steady_sweep");
  json trap_t1 = base_run("type1_0to1", t1, auto_grid("z", 81), "steady_sweep");
  json cool_t1 = base_run("type1_0to1", t1, auto_grid("v", 81), "steady_sweep");
  return bundle({{"trap_bichromatic", trap_bi},
                 {"cool_bichromatic", cool_bi},
                 {"trap_type1", trap_t1},
                 {"cool_type1", cool_t1}},
                "fig2.csv");
}

json preset_fig2_kmc() {
  json doc = preset_fig2();
  for (auto& item : doc["runs"]) {
    item["config"]["mode"] = "kmc_sweep";
    item["config"]["grid"]["n"] = 11;
    item["config"]["kmc"] = {{"n_traj", 1000}, {"seed", 20260809}};
  }
  doc["output"] = "fig2_kmc.csv";
  return doc;
}

json preset_fig3() {
  auto runs = json::array();
  json doc;
  doc["mode"] = "bundle";
  doc["output"] = "fig3.csv";
  const std::pair<const char*, double> detunings[] = {
      {"red", -1.0}, {"resonant", 0.0}, {"blue", 1.0}};
  for (const auto& [tag, d2] : detunings) {
    const json beams = presets::lambda_bichromatic_beams(d2, 1.0);
    runs.push_back({{"name", std::string("trap_") + tag},
                    {"config", base_run("lambda_1to0", beams, auto_grid("z", 81),
                                        "steady_sweep")}});
    runs.push_back({{"name", std::string("cool_") + tag},
                    {"config", base_run("lambda_1to0", beams, auto_grid("v", 81),
                                        "steady_sweep")}});
  }
  doc["runs"] = runs;
  return doc;
}

json preset_fig4() {
  const json mono = presets::jhalf_mono_beams(1.0);
  const json bi = presets::jhalf_bichromatic_beams(0.0, 1.0);
  return bundle(
      {{"mono_trap", base_run("j_half_to_half", mono, auto_grid("z", 81), "steady_sweep")},
       {"trap", base_run("j_half_to_half", bi, auto_grid("z", 81), "steady_sweep")},
       {"cool", base_run("j_half_to_half", bi, auto_grid("v", 81), "steady_sweep")}},
      "fig4.csv");
}

json preset_c2minus(int variant) {
  const json beams = presets::c2minus_beams(variant, 1.8);
  const char* scheme = variant == 1   ? "c2minus_i"
                       : variant == 2 ? "c2minus_ii"
                                      : "c2minus_iii";
  json trap = base_run(scheme, beams, grid_z_mm(10.0, 81), "steady_sweep");
  json cool = base_run(scheme, beams, grid_v(15.0, 81), "steady_sweep");
  const std::string tag = variant == 1 ? "i" : variant == 2 ? "ii" : "iii";
  return bundle({{"trap", trap}, {"cool", cool}}, "c2minus_" + tag + ".csv");
}

json preset_switched() {
  json run = base_run("lambda_1to0", presets::switched_beams(0.01, 1.0),
                      auto_grid("z", 11), "kmc_sweep");
  run["kmc"] = {{"n_traj", 1000}, {"seed", 20260809}};
  run["output"] = "switched.csv";
  return run;
}

json preset_mot3d() {
  json run = base_run("lambda_1to0_with_M0", presets::mot3d_beams(0.0, 1.0),
                      auto_grid("z", 11), "kmc_sweep");
  run["field"] = {{"kind", "quadrupole_3d"}, {"gradient_G_per_cm", 10.0}};
  run["kmc"] = {{"n_traj", 2000}, {"seed", 20260809}};
  run["output"] = "mot3d.csv";
  return run;
}

}  // namespace

std::vector<std::string> config_preset_names() {
  return {"null-force", "fig2",       "fig2-kmc",   "fig3",     "fig4",
          "c2minus-i",  "c2minus-ii", "c2minus-iii", "switched", "mot3d"};
}

nlohmann::json config_preset(const std::string& name) {
  if (name == "null-force") return preset_null_force();
  if (name == "fig2") return preset_fig2();
  if (name == "fig2-kmc") return preset_fig2_kmc();
  if (name == "fig3") return preset_fig3();
  if (name == "fig4") return preset_fig4();
  if (name == "c2minus-i") return preset_c2minus(1);
  if (name == "c2minus-ii") return preset_c2minus(2);
  if (name == "c2minus-iii") return preset_c2minus(3);
  if (name == "switched") return preset_switched();
  if (name == "mot3d") return preset_mot3d();
  throw std::invalid_argument("unknown config preset '" + name + "'");
}

}  // namespace bimot
