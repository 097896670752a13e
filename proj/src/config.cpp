#include "bimot/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bimot/constants.hpp"
#include "bimot/errors.hpp"
#include "bimot/sweep.hpp"

namespace bimot {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown field");
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

// "3/2", "-1/2", "2" or an exactly representable number (2, 0.5, -1.5).
HalfInt as_halfint(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return HalfInt::integer(std::stoi(s));
      if (s.substr(slash + 1) != "2") fail(path, "half-integers use denominator 2");
      return HalfInt::from_twice(std::stoi(s.substr(0, slash)));
    } catch (const ConfigError&) {
      throw;
    } catch (...) {
      fail(path, "cannot parse angular momentum '" + s + "'");
    }
  }
  if (j.is_number()) {
    const double v = j.get<double>();
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-9)
      fail(path, "angular momentum must be integer or half-integer");
    return HalfInt::from_twice(static_cast<int>(std::round(twice)));
  }
  fail(path, "expected an angular momentum value");
}

Vec3 as_direction(const json& j, const std::string& path) {
  Vec3 d;
  if (j.is_array()) {
    if (j.size() != 3) fail(path, "direction needs 3 components");
    d = {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"),
         as_number(j[2], path + "[2]")};
  } else if (j.is_object()) {
    check_keys(j, path, {"theta_deg", "phi_deg"});
    const double th = as_number(require(j, path, "theta_deg"), path + ".theta_deg") *
                      kPi / 180.0;
    const double ph = j.contains("phi_deg")
                          ? as_number(j["phi_deg"], path + ".phi_deg") * kPi / 180.0
                          : 0.0;
    d = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
  } else {
    fail(path, "expected [x,y,z] or {theta_deg, phi_deg}");
  }
  const double n = d.norm();
  if (n < 1e-12) fail(path, "zero direction");
  return d / n;
}

std::string canonical_polarization_name(PolarizationPreset p) {
  switch (p) {
    case PolarizationPreset::sigma_plus: return "sigma+";
    case PolarizationPreset::sigma_minus: return "sigma-";
    case PolarizationPreset::pi_linear: return "pi";
    case PolarizationPreset::helicity_plus: return "helicity+";
    case PolarizationPreset::helicity_minus: return "helicity-";
  }
  return "";
}

BeamConfig parse_beam(const json& j, const std::string& path,
                      const std::string& only_link) {
  if (!j.is_object()) fail(path, "expected a beam object");
  check_keys(j, path,
             {"direction", "polarization", "detuning_Gamma", "saturation",
              "intensity_mW_cm2", "target_link", "schedule"});
  BeamConfig b;
  b.direction = as_direction(require(j, path, "direction"), path + ".direction");

  const json& pol = require(j, path, "polarization");
  if (pol.is_string()) {
    try {
      b.polarization_preset = canonical_polarization_name(
          polarization_preset_from_name(pol.get<std::string>()));
    } catch (const std::exception& e) {
      fail(path + ".polarization", e.what());
    }
  } else if (pol.is_array() && pol.size() == 3) {
    CVec3 v;
    auto comp = [&](int i) -> std::complex<double> {
      const json& c = pol[i];
      const std::string p = path + ".polarization[" + std::to_string(i) + "]";
      if (c.is_number()) return {c.get<double>(), 0.0};
      if (c.is_array() && c.size() == 2)
        return {as_number(c[0], p + "[0]"), as_number(c[1], p + "[1]")};
      fail(p, "expected number or [re, im]");
    };
    v.x = comp(0);
    v.y = comp(1);
    v.z = comp(2);
    const double n = std::sqrt(v.squared_norm());
    if (n < 1e-12) fail(path + ".polarization", "zero polarization vector");
    v.x /= n;
    v.y /= n;
    v.z /= n;
    if (std::abs(v.dot_conj(b.direction)) > 1e-9)
      fail(path + ".polarization", "polarization must be transverse to the beam");
    b.polarization_vector = v;
  } else {
    fail(path + ".polarization", "expected preset name or 3-component vector");
  }

  b.detuning_gamma = as_number(require(j, path, "detuning_Gamma"), path + ".detuning_Gamma");

  const bool has_s = j.contains("saturation");
  const bool has_i = j.contains("intensity_mW_cm2");
  if (has_s == has_i)
    fail(path, "specify exactly one of saturation, intensity_mW_cm2");
  if (has_s) {
    b.saturation = as_number(j["saturation"], path + ".saturation");
    if (*b.saturation < 0.0) fail(path + ".saturation", "must be >= 0");
  } else {
    b.intensity_mw_cm2 = as_number(j["intensity_mW_cm2"], path + ".intensity_mW_cm2");
    if (*b.intensity_mw_cm2 < 0.0) fail(path + ".intensity_mW_cm2", "must be >= 0");
  }

  if (j.contains("target_link")) {
    b.target_link = as_string(j["target_link"], path + ".target_link");
  } else if (!only_link.empty()) {
    b.target_link = only_link;
  } else {
    fail(path + ".target_link", "required when the scheme has several links");
  }

  if (j.contains("schedule")) {
    const json& sc = j["schedule"];
    const std::string sp = path + ".schedule";
    if (!sc.is_object()) fail(sp, "expected an object");
    check_keys(sc, sp, {"period_Gamma", "on_Gamma"});
    b.schedule_period_gamma = as_number(require(sc, sp, "period_Gamma"), sp + ".period_Gamma");
    if (*b.schedule_period_gamma <= 0.0) fail(sp + ".period_Gamma", "must be > 0");
    const json& on = require(sc, sp, "on_Gamma");
    if (!on.is_array() || on.size() != 2) fail(sp + ".on_Gamma", "expected [start, end]");
    b.schedule_on_start_gamma = as_number(on[0], sp + ".on_Gamma[0]");
    b.schedule_on_end_gamma = as_number(on[1], sp + ".on_Gamma[1]");
    if (!(0.0 <= b.schedule_on_start_gamma &&
          b.schedule_on_start_gamma < b.schedule_on_end_gamma &&
          b.schedule_on_end_gamma <= *b.schedule_period_gamma))
      fail(sp + ".on_Gamma", "need 0 <= start < end <= period");
  }
  return b;
}

SchemeConfig parse_scheme(const json& j, const std::string& path) {
  SchemeConfig s;
  if (j.is_string()) {
    s.preset = j.get<std::string>();
    try {
      scheme_preset_from_name(s.preset);
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
    return s;
  }
  if (!j.is_object()) fail(path, "expected preset name or scheme object");
  check_keys(j, path, {"preset", "g_overrides", "custom"});
  if (j.contains("preset") == j.contains("custom"))
    fail(path, "specify exactly one of preset, custom");

  if (j.contains("preset")) {
    s.preset = as_string(j["preset"], path + ".preset");
    try {
      scheme_preset_from_name(s.preset);
    } catch (const std::exception& e) {
      fail(path + ".preset", e.what());
    }
    if (j.contains("g_overrides")) {
      const json& g = j["g_overrides"];
      if (!g.is_object()) fail(path + ".g_overrides", "expected { level: g }");
      for (auto it = g.begin(); it != g.end(); ++it)
        s.g_overrides[it.key()] = as_number(it.value(), path + ".g_overrides." + it.key());
    }
    return s;
  }

  const json& c = j["custom"];
  const std::string cp = path + ".custom";
  if (!c.is_object()) fail(cp, "expected an object");
  check_keys(c, cp, {"levels", "links"});
  const json& levels = require(c, cp, "levels");
  const json& links = require(c, cp, "links");
  if (!levels.is_array() || levels.empty()) fail(cp + ".levels", "expected non-empty array");
  if (!links.is_array() || links.empty()) fail(cp + ".links", "expected non-empty array");

  for (size_t i = 0; i < levels.size(); ++i) {
    const json& lv = levels[i];
    const std::string lp = cp + ".levels[" + std::to_string(i) + "]";
    if (!lv.is_object()) fail(lp, "expected an object");
    check_keys(lv, lp, {"id", "j", "g", "offset_Gamma", "upper", "exclude_m"});
    LevelSpec spec;
    spec.id = as_string(require(lv, lp, "id"), lp + ".id");
    spec.J = as_halfint(require(lv, lp, "j"), lp + ".j");
    spec.g = lv.contains("g") ? as_number(lv["g"], lp + ".g") : 0.0;
    spec.energy_offset = lv.contains("offset_Gamma")
                             ? as_number(lv["offset_Gamma"], lp + ".offset_Gamma")
                             : 0.0;  // converted to rad/s in materialize
    spec.is_upper = as_bool(require(lv, lp, "upper"), lp + ".upper");
    if (lv.contains("exclude_m")) {
      const json& ex = lv["exclude_m"];
      if (!ex.is_array()) fail(lp + ".exclude_m", "expected an array");
      for (size_t k = 0; k < ex.size(); ++k)
        spec.exclude_twice_m.push_back(
            as_halfint(ex[k], lp + ".exclude_m[" + std::to_string(k) + "]").twice());
    }
    s.levels.push_back(std::move(spec));
  }
  for (size_t i = 0; i < links.size(); ++i) {
    const json& lk = links[i];
    const std::string lp = cp + ".links[" + std::to_string(i) + "]";
    if (!lk.is_object()) fail(lp, "expected an object");
    check_keys(lk, lp, {"id", "upper", "lower", "lifetime_ns", "gamma_per_s", "wavelength_nm"});
    LinkSpec spec;
    spec.id = as_string(require(lk, lp, "id"), lp + ".id");
    spec.upper = as_string(require(lk, lp, "upper"), lp + ".upper");
    spec.lower = as_string(require(lk, lp, "lower"), lp + ".lower");
    if (lk.contains("lifetime_ns") == lk.contains("gamma_per_s"))
      fail(lp, "specify exactly one of lifetime_ns, gamma_per_s");
    if (lk.contains("lifetime_ns")) {
      const double tau = as_number(lk["lifetime_ns"], lp + ".lifetime_ns");
      if (tau <= 0.0) fail(lp + ".lifetime_ns", "must be > 0");
      spec.gamma_total = 1.0 / (tau * 1e-9);
    } else {
      spec.gamma_total = as_number(lk["gamma_per_s"], lp + ".gamma_per_s");
      if (spec.gamma_total <= 0.0) fail(lp + ".gamma_per_s", "must be > 0");
    }
    const double wl = as_number(require(lk, lp, "wavelength_nm"), lp + ".wavelength_nm");
    if (wl <= 0.0) fail(lp + ".wavelength_nm", "must be > 0");
    spec.wavelength = wl * 1e-9;
    s.links.push_back(std::move(spec));
  }
  return s;
}

GridConfig parse_grid(const json& j, const std::string& path) {
  GridConfig g;
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path,
             {"axis", "auto", "min_mm", "max_mm", "min_m_s", "max_m_s", "n",
              "v_min_m_s", "v_max_m_s", "v_n"});
  g.axis = j.contains("axis") ? as_string(j["axis"], path + ".axis") : "z";
  if (g.axis != "z" && g.axis != "v" && g.axis != "zv")
    fail(path + ".axis", "expected 'z', 'v' or 'zv'");
  if (j.contains("n")) g.n = as_int(j["n"], path + ".n");
  if (g.n < 2) fail(path + ".n", "need at least 2 points");
  g.auto_range = j.contains("auto") ? as_bool(j["auto"], path + ".auto") : true;

  const bool z_like = g.axis != "v";
  const char* min_key = z_like ? "min_mm" : "min_m_s";
  const char* max_key = z_like ? "max_mm" : "max_m_s";
  if (j.contains(min_key) || j.contains(max_key)) {
    g.auto_range = false;
    g.min = as_number(require(j, path, min_key), path + "." + min_key);
    g.max = as_number(require(j, path, max_key), path + "." + max_key);
    if (g.max <= g.min) fail(path, "grid max must exceed min");
  } else if (!g.auto_range) {
    fail(path, "explicit grid needs min/max");
  }
  if (g.axis == "zv") {
    if (j.contains("v_n")) g.v_n = as_int(j["v_n"], path + ".v_n");
    if (j.contains("v_min_m_s") || j.contains("v_max_m_s")) {
      g.v_min = as_number(require(j, path, "v_min_m_s"), path + ".v_min_m_s");
      g.v_max = as_number(require(j, path, "v_max_m_s"), path + ".v_max_m_s");
      if (g.v_max <= g.v_min) fail(path, "v grid max must exceed min");
    } else if (!g.auto_range) {
      fail(path, "explicit zv grid needs v_min_m_s/v_max_m_s");
    }
  }
  return g;
}

PointConfig parse_point(const json& j, const std::string& path) {
  PointConfig p;
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path, {"r_mm", "z_mm", "v_m_s", "v_z_m_s"});
  if (j.contains("r_mm") == j.contains("z_mm"))
    fail(path, "specify exactly one of r_mm, z_mm");
  if (j.contains("r_mm")) {
    const json& r = j["r_mm"];
    if (!r.is_array() || r.size() != 3) fail(path + ".r_mm", "expected [x,y,z]");
    p.r_mm = {as_number(r[0], path + ".r_mm[0]"), as_number(r[1], path + ".r_mm[1]"),
              as_number(r[2], path + ".r_mm[2]")};
  } else {
    p.r_mm = {0.0, 0.0, as_number(j["z_mm"], path + ".z_mm")};
  }
  if (j.contains("v_m_s") == j.contains("v_z_m_s"))
    fail(path, "specify exactly one of v_m_s, v_z_m_s");
  if (j.contains("v_m_s")) {
    const json& v = j["v_m_s"];
    if (!v.is_array() || v.size() != 3) fail(path + ".v_m_s", "expected [vx,vy,vz]");
    p.v_m_s = {as_number(v[0], path + ".v_m_s[0]"), as_number(v[1], path + ".v_m_s[1]"),
               as_number(v[2], path + ".v_m_s[2]")};
  } else {
    p.v_m_s = {0.0, 0.0, as_number(j["v_z_m_s"], path + ".v_z_m_s")};
  }
  return p;
}

KmcConfig parse_kmc(const json& j, const std::string& path) {
  KmcConfig k;
  if (!j.is_object()) fail(path, "expected an object");
  check_keys(j, path,
             {"n_traj", "measure_time_Gamma", "seed", "sample_stride_Gamma"});
  if (j.contains("n_traj")) k.n_traj = as_int(j["n_traj"], path + ".n_traj");
  if (k.n_traj < 1) fail(path + ".n_traj", "must be >= 1");
  if (j.contains("measure_time_Gamma")) {
    k.auto_time = false;
    k.measure_time_gamma = as_number(j["measure_time_Gamma"], path + ".measure_time_Gamma");
    if (k.measure_time_gamma <= 0.0) fail(path + ".measure_time_Gamma", "must be > 0");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail(path + ".seed", "expected a non-negative integer");
    const auto s = j["seed"].get<std::int64_t>();
    if (s < 0) fail(path + ".seed", "expected a non-negative integer");
    k.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("sample_stride_Gamma")) {
    k.sample_stride_gamma = as_number(j["sample_stride_Gamma"], path + ".sample_stride_Gamma");
    if (k.sample_stride_gamma <= 0.0) fail(path + ".sample_stride_Gamma", "must be > 0");
  }
  return k;
}

}  // namespace

RunMode run_mode_from_name(const std::string& name) {
  if (name == "steady_sweep") return RunMode::steady_sweep;
  if (name == "kmc_sweep") return RunMode::kmc_sweep;
  if (name == "steady_point") return RunMode::steady_point;
  if (name == "kmc_point") return RunMode::kmc_point;
  if (name == "trajectory") return RunMode::trajectory;
  if (name == "bundle") return RunMode::bundle;
  throw ConfigError("mode: unknown mode '" + name + "'");
}

std::string run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::steady_sweep: return "steady_sweep";
    case RunMode::kmc_sweep: return "kmc_sweep";
    case RunMode::steady_point: return "steady_point";
    case RunMode::kmc_point: return "kmc_point";
    case RunMode::trajectory: return "trajectory";
    case RunMode::bundle: return "bundle";
  }
  return "";
}

RunConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  check_keys(doc, "config",
             {"scheme", "mass_u", "mass_kg", "field", "beams", "mode", "grid",
              "point", "kmc", "output", "jobs", "runs"});

  RunConfig c;
  c.mode = doc.contains("mode")
               ? run_mode_from_name(as_string(doc["mode"], "config.mode"))
               : RunMode::steady_sweep;

  if (c.mode == RunMode::bundle) {
    const json& runs = require(doc, "config", "runs");
    if (!runs.is_array() || runs.empty()) fail("config.runs", "expected non-empty array");
    for (size_t i = 0; i < runs.size(); ++i) {
      const json& r = runs[i];
      const std::string rp = "config.runs[" + std::to_string(i) + "]";
      if (!r.is_object()) fail(rp, "expected an object");
      check_keys(r, rp, {"name", "config"});
      const std::string name = as_string(require(r, rp, "name"), rp + ".name");
      try {
        auto sub = std::make_shared<RunConfig>(parse_config(require(r, rp, "config")));
        if (sub->mode == RunMode::bundle) fail(rp, "nested bundles are not supported");
        c.runs.emplace_back(name, std::move(sub));
      } catch (const ConfigError& e) {
        throw ConfigError(rp + " > " + e.what());
      }
    }
    if (doc.contains("output")) c.output = as_string(doc["output"], "config.output");
    if (doc.contains("jobs")) c.jobs = as_int(doc["jobs"], "config.jobs");
    if (c.jobs < 1) fail("config.jobs", "must be >= 1");
    return c;
  }

  c.scheme = parse_scheme(require(doc, "config", "scheme"), "config.scheme");

  if (doc.contains("mass_u") && doc.contains("mass_kg"))
    fail("config", "specify at most one of mass_u, mass_kg");
  if (doc.contains("mass_u")) {
    c.mass_u = as_number(doc["mass_u"], "config.mass_u");
  } else if (doc.contains("mass_kg")) {
    c.mass_u = as_number(doc["mass_kg"], "config.mass_kg") / kAtomicMassUnit;
  }
  if (c.mass_u <= 0.0) fail("config.mass_u", "must be > 0");

  if (doc.contains("field")) {
    const json& f = doc["field"];
    if (!f.is_object()) fail("config.field", "expected an object");
    check_keys(f, "config.field", {"kind", "gradient_G_per_cm"});
    const std::string kind = as_string(require(f, "config.field", "kind"), "config.field.kind");
    if (kind == "linear_1d") c.field_kind = MagneticFieldMap::Kind::linear_1d;
    else if (kind == "quadrupole_3d") c.field_kind = MagneticFieldMap::Kind::quadrupole_3d;
    else fail("config.field.kind", "expected 'linear_1d' or 'quadrupole_3d'");
    c.gradient_g_cm = as_number(require(f, "config.field", "gradient_G_per_cm"),
                                "config.field.gradient_G_per_cm");
  }

  // One-link schemes let beams omit target_link.
  std::string only_link;
  if (!c.scheme.preset.empty()) {
    const LevelScheme s = build_preset(scheme_preset_from_name(c.scheme.preset));
    if (s.links.size() == 1) only_link = s.links[0].id;
  } else if (c.scheme.links.size() == 1) {
    only_link = c.scheme.links[0].id;
  }

  const json& beams = require(doc, "config", "beams");
  if (!beams.is_array() || beams.empty()) fail("config.beams", "expected non-empty array");
  for (size_t i = 0; i < beams.size(); ++i)
    c.beams.push_back(
        parse_beam(beams[i], "config.beams[" + std::to_string(i) + "]", only_link));

  if (doc.contains("grid")) c.grid = parse_grid(doc["grid"], "config.grid");
  if (doc.contains("point")) c.point = parse_point(doc["point"], "config.point");
  if (doc.contains("kmc")) c.kmc = parse_kmc(doc["kmc"], "config.kmc");
  if (doc.contains("output")) c.output = as_string(doc["output"], "config.output");
  if (doc.contains("jobs")) c.jobs = as_int(doc["jobs"], "config.jobs");
  if (c.jobs < 1) fail("config.jobs", "must be >= 1");

  if ((c.mode == RunMode::steady_point || c.mode == RunMode::kmc_point ||
       c.mode == RunMode::trajectory) &&
      !doc.contains("point"))
    fail("config.point", "required for point/trajectory modes");

  return c;
}

nlohmann::json to_json(const RunConfig& c) {
  json doc;
  doc["mode"] = run_mode_name(c.mode);
  doc["output"] = c.output;
  doc["jobs"] = c.jobs;

  if (c.mode == RunMode::bundle) {
    json runs = json::array();
    for (const auto& [name, sub] : c.runs)
      runs.push_back({{"name", name}, {"config", to_json(*sub)}});
    doc["runs"] = runs;
    return doc;
  }

  if (!c.scheme.preset.empty()) {
    if (c.scheme.g_overrides.empty()) {
      doc["scheme"] = c.scheme.preset;
    } else {
      json g;
      for (const auto& [k, v] : c.scheme.g_overrides) g[k] = v;
      doc["scheme"] = {{"preset", c.scheme.preset}, {"g_overrides", g}};
    }
  } else {
    json levels = json::array();
    for (const auto& lv : c.scheme.levels) {
      json l = {{"id", lv.id}, {"j", lv.J.str()}, {"g", lv.g},
                {"offset_Gamma", lv.energy_offset}, {"upper", lv.is_upper}};
      if (!lv.exclude_twice_m.empty()) {
        json ex = json::array();
        for (int tm : lv.exclude_twice_m) ex.push_back(HalfInt::from_twice(tm).str());
        l["exclude_m"] = ex;
      }
      levels.push_back(l);
    }
    json links = json::array();
    for (const auto& lk : c.scheme.links)
      links.push_back({{"id", lk.id}, {"upper", lk.upper}, {"lower", lk.lower},
                       {"gamma_per_s", lk.gamma_total},
                       {"wavelength_nm", lk.wavelength * 1e9}});
    doc["scheme"] = {{"custom", {{"levels", levels}, {"links", links}}}};
  }

  doc["mass_u"] = c.mass_u;
  doc["field"] = {{"kind", c.field_kind == MagneticFieldMap::Kind::linear_1d
                               ? "linear_1d"
                               : "quadrupole_3d"},
                  {"gradient_G_per_cm", c.gradient_g_cm}};

  json beams = json::array();
  for (const auto& b : c.beams) {
    json jb;
    jb["direction"] = {b.direction.x, b.direction.y, b.direction.z};
    if (!b.polarization_preset.empty()) {
      jb["polarization"] = b.polarization_preset;
    } else {
      const CVec3& p = *b.polarization_vector;
      jb["polarization"] = {{p.x.real(), p.x.imag()},
                            {p.y.real(), p.y.imag()},
                            {p.z.real(), p.z.imag()}};
    }
    jb["detuning_Gamma"] = b.detuning_gamma;
    if (b.saturation) jb["saturation"] = *b.saturation;
    if (b.intensity_mw_cm2) jb["intensity_mW_cm2"] = *b.intensity_mw_cm2;
    jb["target_link"] = b.target_link;
    if (b.schedule_period_gamma)
      jb["schedule"] = {{"period_Gamma", *b.schedule_period_gamma},
                        {"on_Gamma", {b.schedule_on_start_gamma, b.schedule_on_end_gamma}}};
    beams.push_back(jb);
  }
  doc["beams"] = beams;

  json grid;
  grid["axis"] = c.grid.axis;
  grid["n"] = c.grid.n;
  if (c.grid.auto_range) {
    grid["auto"] = true;
  } else if (c.grid.axis == "v") {
    grid["min_m_s"] = c.grid.min;
    grid["max_m_s"] = c.grid.max;
  } else {
    grid["min_mm"] = c.grid.min;
    grid["max_mm"] = c.grid.max;
  }
  if (c.grid.axis == "zv") {
    grid["v_n"] = c.grid.v_n;
    if (!c.grid.auto_range) {
      grid["v_min_m_s"] = c.grid.v_min;
      grid["v_max_m_s"] = c.grid.v_max;
    }
  }
  doc["grid"] = grid;

  doc["point"] = {{"r_mm", {c.point.r_mm.x, c.point.r_mm.y, c.point.r_mm.z}},
                  {"v_m_s", {c.point.v_m_s.x, c.point.v_m_s.y, c.point.v_m_s.z}}};

  json kmc;
  kmc["n_traj"] = c.kmc.n_traj;
  if (!c.kmc.auto_time) kmc["measure_time_Gamma"] = c.kmc.measure_time_gamma;
  kmc["seed"] = c.kmc.seed;
  kmc["sample_stride_Gamma"] = c.kmc.sample_stride_gamma;
  doc["kmc"] = kmc;

  return doc;
}

std::string config_hash(const RunConfig& config) {
  const std::string dump = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

RunSetup materialize(const RunConfig& c) {
  if (c.mode == RunMode::bundle)
    throw ConfigError("materialize: bundle configs have no single setup");

  RunSetup setup;
  if (!c.scheme.preset.empty()) {
    setup.scheme = build_preset(scheme_preset_from_name(c.scheme.preset));
  } else {
    // Custom level offsets arrive in Gamma units of the largest link rate.
    double gamma_ref = 0.0;
    for (const auto& lk : c.scheme.links) gamma_ref = std::max(gamma_ref, lk.gamma_total);
    auto levels = c.scheme.levels;
    for (auto& lv : levels) lv.energy_offset *= gamma_ref;
    setup.scheme = build_scheme(levels, c.scheme.links);
  }
  for (const auto& [level, g] : c.scheme.g_overrides) {
    bool found = false;
    for (auto& sub : setup.scheme.sublevels)
      if (sub.level_id == level) {
        sub.g = g;
        found = true;
      }
    if (!found) throw ConfigError("scheme.g_overrides: unknown level '" + level + "'");
  }

  const auto diags = validate(setup.scheme);
  if (!diags.empty()) {
    std::string msg = "scheme: invalid scheme:";
    for (const auto& d : diags) msg += "\n  - " + d;
    throw ConfigError(msg);
  }

  setup.mass = c.mass_u * kAtomicMassUnit;
  setup.field.kind = c.field_kind;
  setup.field.axial_gradient = c.gradient_g_cm * kGaussPerCmToTeslaPerM;
  setup.gamma_ref = setup.scheme.gamma_scale();

  for (size_t i = 0; i < c.beams.size(); ++i) {
    const BeamConfig& bc = c.beams[i];
    const RadiativeLink* link = setup.scheme.find_link(bc.target_link);
    if (!link)
      throw ConfigError("beams[" + std::to_string(i) + "].target_link: unknown link '" +
                        bc.target_link + "'");
    LaserBeam beam;
    beam.direction = bc.direction;
    beam.wavenumber = link->wavenumber();
    beam.detuning0 = bc.detuning_gamma * link->gamma_total;
    if (bc.saturation) {
      beam.saturation = *bc.saturation;
    } else {
      const double intensity = *bc.intensity_mw_cm2 * kMilliWattPerCm2ToWattPerM2;
      beam.saturation =
          intensity / saturation_intensity(link->gamma_total, link->wavelength);
    }
    if (!bc.polarization_preset.empty()) {
      try {
        beam.polarization = make_polarization(
            polarization_preset_from_name(bc.polarization_preset), beam.direction);
      } catch (const std::exception& e) {
        throw ConfigError("beams[" + std::to_string(i) + "].polarization: " + e.what());
      }
    } else {
      beam.polarization = *bc.polarization_vector;
    }
    beam.target_link = bc.target_link;
    if (bc.schedule_period_gamma) {
      Schedule sched;
      sched.period = *bc.schedule_period_gamma / setup.gamma_ref;
      sched.on_start = bc.schedule_on_start_gamma / setup.gamma_ref;
      sched.on_end = bc.schedule_on_end_gamma / setup.gamma_ref;
      beam.schedule = sched;
    }
    beam.label = "beam" + std::to_string(i);
    setup.beams.push_back(std::move(beam));
  }
  return setup;
}

std::vector<double> resolve_grid_axis(const GridConfig& grid, bool velocity_axis,
                                      const RunSetup& setup) {
  const int n = velocity_axis && grid.axis == "zv" ? grid.v_n : grid.n;
  if (!grid.auto_range) {
    if (velocity_axis && grid.axis == "zv")
      return linear_grid(grid.v_min, grid.v_max, n);
    if (velocity_axis) return linear_grid(grid.min, grid.max, n);
    return linear_grid(grid.min * 1e-3, grid.max * 1e-3, n);
  }

  const double gamma = setup.gamma_ref;
  if (velocity_axis) {
    double k_max = 0.0;
    for (const auto& link : setup.scheme.links)
      k_max = std::max(k_max, link.wavenumber());
    const double span = 3.0 * gamma / k_max;  // Doppler shift of 3 Gamma
    return linear_grid(-span, span, n);
  }
  double g_max = 0.0;
  for (const auto& sub : setup.scheme.sublevels)
    if (!sub.is_upper) g_max = std::max(g_max, std::abs(sub.g));
  const double slope = kBohrMagneton * g_max * std::abs(setup.field.axial_gradient);
  if (slope <= 0.0) return linear_grid(-10e-3, 10e-3, n);
  const double span = 3.0 * gamma * kHbar / slope;  // Zeeman shift of 3 Gamma
  return linear_grid(-span, span, n);
}

}  // namespace bimot
