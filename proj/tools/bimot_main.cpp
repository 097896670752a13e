#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bimot/config.hpp"
#include "bimot/config_presets.hpp"
#include "bimot/errors.hpp"
#include "bimot/run.hpp"
#include "bimot/scheme.hpp"

namespace {

int load_document(const std::string& config_path, const std::string& preset,
                  nlohmann::json& doc) {
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config file '" << config_path << "'\n";
      return bimot::kExitConfigError;
    }
    try {
      in >> doc;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      return bimot::kExitConfigError;
    }
    return bimot::kExitOk;
  }
  try {
    doc = bimot::config_preset(preset);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return bimot::kExitConfigError;
  }
  return bimot::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bimot - rate-equation and kinetic Monte Carlo simulator for "
               "multilevel magneto-optical traps"};
  app.require_subcommand(1);

  std::string config_path, preset_name, out_path, mode_name, axis;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool has_seed = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration document (JSON)");
    cmd->add_option("--preset", preset_name, "built-in configuration preset");
    cmd->add_option("--out", out_path, "output path override");
    cmd->add_option("--seed", seed, "RNG seed override")->each([&](const std::string&) {
      has_seed = true;
    });
    cmd->add_option("--jobs", jobs, "parallel worker count override");
    cmd->add_option("--mode", mode_name, "run mode override");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute a configuration");
  add_common(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "force-map sweep (grid overrides)");
  add_common(sweep_cmd);
  double grid_min = 0.0, grid_max = 0.0;
  int grid_n = 0;
  sweep_cmd->add_option("--axis", axis, "sweep axis: z | v | zv");
  sweep_cmd->add_option("--min", grid_min, "grid minimum (mm for z, m/s for v)");
  sweep_cmd->add_option("--max", grid_max, "grid maximum (mm for z, m/s for v)");
  sweep_cmd->add_option("--n", grid_n, "grid point count");

  CLI::App* presets_cmd = app.add_subcommand("presets", "list or show presets");
  CLI::App* presets_list = presets_cmd->add_subcommand("list", "list preset names");
  CLI::App* presets_show = presets_cmd->add_subcommand("show", "print a config preset");
  std::string show_name;
  presets_show->add_option("name", show_name, "config preset name")->required();
  presets_cmd->require_subcommand(1);

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a configuration");
  add_common(validate_cmd);

  CLI11_PARSE(app, argc, argv);

  if (presets_list->parsed()) {
    std::cout << "scheme presets:\n";
    for (const auto& n : bimot::scheme_preset_names()) std::cout << "  " << n << "\n";
    std::cout << "config presets:\n";
    for (const auto& n : bimot::config_preset_names()) std::cout << "  " << n << "\n";
    return bimot::kExitOk;
  }
  if (presets_show->parsed()) {
    try {
      std::cout << bimot::config_preset(show_name).dump(2) << "\n";
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return bimot::kExitConfigError;
    }
    return bimot::kExitOk;
  }

  if (config_path.empty() == preset_name.empty()) {
    std::cerr << "specify exactly one of --config, --preset\n";
    return bimot::kExitConfigError;
  }

  nlohmann::json doc;
  if (int rc = load_document(config_path, preset_name, doc); rc != bimot::kExitOk)
    return rc;

  if (validate_cmd->parsed()) {
    try {
      const bimot::RunConfig config = bimot::parse_config(doc);
      if (config.mode == bimot::RunMode::bundle) {
        for (const auto& [name, sub] : config.runs) bimot::materialize(*sub);
      } else {
        bimot::materialize(config);
      }
    } catch (const bimot::ConfigError& e) {
      std::cerr << e.what() << "\n";
      return bimot::kExitConfigError;
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return bimot::kExitConfigError;
    }
    std::cout << "configuration is valid\n";
    return bimot::kExitOk;
  }

  if (sweep_cmd->parsed()) {
    if (!axis.empty()) doc["grid"]["axis"] = axis;
    if (grid_n > 0) doc["grid"]["n"] = grid_n;
    if (grid_min != 0.0 || grid_max != 0.0) {
      const std::string ax = doc.value("grid", nlohmann::json::object())
                                 .value("axis", std::string("z"));
      const char* min_key = ax == "v" ? "min_m_s" : "min_mm";
      const char* max_key = ax == "v" ? "max_m_s" : "max_mm";
      doc["grid"][min_key] = grid_min;
      doc["grid"][max_key] = grid_max;
      doc["grid"].erase("auto");
    }
    if (mode_name.empty()) {
      const std::string current = doc.value("mode", std::string("steady_sweep"));
      if (current != "steady_sweep" && current != "kmc_sweep") mode_name = "steady_sweep";
    }
  }

  bimot::RunOverrides overrides;
  if (!out_path.empty()) overrides.output = out_path;
  if (has_seed) overrides.seed = seed;
  if (jobs > 0) overrides.jobs = jobs;
  if (!mode_name.empty()) overrides.mode = mode_name;

  return bimot::run_config(doc, overrides, std::cout, std::cerr);
}
