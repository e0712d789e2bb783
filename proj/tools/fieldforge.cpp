// Command-line front end: fieldforge <subcommand> [--config FILE | FILE] [options]

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fieldforge/app.hpp"
#include "fieldforge/errors.hpp"

namespace app = fieldforge::app;

namespace {

struct ConfigArgs {
  std::string flag;
  std::string positional;
};

void add_common(CLI::App* sub, ConfigArgs& cfg, std::string& out_dir, std::string& format) {
  sub->add_option("--config", cfg.flag, "Chamber configuration file");
  sub->add_option("config_file", cfg.positional, "Chamber configuration file (alternative to --config)");
  sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
  sub->add_option("--format", format, "Output file format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Dual-channel magnetic hyperthermia chamber design and simulation"};
  cli.require_subcommand(1);

  ConfigArgs cfg;
  std::string out_dir = "out";
  std::string format = "csv";

  auto* validate = cli.add_subcommand("validate", "Check a configuration and list every violation");
  auto* design_caps = cli.add_subcommand("design-caps", "Size compensation capacitor banks");
  auto* field_map = cli.add_subcommand("field-map", "Compute the field over the chamber grid");
  auto* simulate = cli.add_subcommand("simulate", "Run the coupled transient simulation");
  auto* sweep = cli.add_subcommand("sweep", "Sweep drive frequency around resonance");
  auto* heat = cli.add_subcommand("heat", "Nanoparticle, coil and wall heating");
  auto* report = cli.add_subcommand("report", "Consolidated design report");
  for (auto* s : {validate, design_caps, field_map, simulate, sweep, heat, report}) add_common(s, cfg, out_dir, format);

  app::FieldMapOptions fm;
  field_map->add_option("--channel", fm.channel, "Channel id")->check(CLI::IsMember({1, 2}));
  double fm_current = 0.0;
  auto* fm_current_opt = field_map->add_option("--current", fm_current, "Coil current in A (default max current)");

  app::SimulateOptions so;
  double duty = 0.0, duration = 0.0, step = 0.0;
  simulate->add_option("--channel", so.channel, "Driven channel")
      ->check(CLI::IsMember({"1", "2", "both"}))
      ->capture_default_str();
  auto* duty_opt = simulate->add_option("--duty", duty, "Duty cycle in [0, 1] (default max duty)")->check(CLI::Range(0.0, 1.0));
  auto* dur_opt = simulate->add_option("--duration", duration, "Simulated time in s")->check(CLI::PositiveNumber);
  auto* step_opt = simulate->add_option("--step", step, "Integrator step in s")->check(CLI::PositiveNumber);

  app::SweepOptions sw;
  double f_lo = 0.0, f_hi = 0.0;
  sweep->add_option("--channel", sw.channel, "Channel id")->check(CLI::IsMember({1, 2}));
  auto* lo_opt = sweep->add_option("--f-lo", f_lo, "Lower sweep frequency in Hz")->check(CLI::PositiveNumber);
  auto* hi_opt = sweep->add_option("--f-hi", f_hi, "Upper sweep frequency in Hz")->check(CLI::PositiveNumber);
  sweep->add_option("--steps", sw.steps, "Number of frequencies")->check(CLI::Range(2, 10000))->capture_default_str();

  app::HeatOptions ho;
  heat->add_option("--sample", ho.sample, "Sample name")->required();
  heat->add_option("--channel", ho.channel, "Channel id")->check(CLI::IsMember({1, 2}));
  heat->add_option("--duration", ho.duration, "Exposure in s")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? app::kExitOk : app::kExitValidation;
  }

  if (!cfg.flag.empty() && !cfg.positional.empty() && cfg.flag != cfg.positional) {
    std::cerr << "error: conflicting config paths '" << cfg.flag << "' and '" << cfg.positional << "'\n";
    return app::kExitValidation;
  }
  app::CommonOptions common;
  common.config = cfg.flag.empty() ? cfg.positional : cfg.flag;
  if (common.config.empty()) {
    std::cerr << "error: --config is required\n";
    return app::kExitValidation;
  }
  common.out_dir = out_dir;
  common.format = format == "json" ? app::Format::json : app::Format::csv;

  if (*fm_current_opt) fm.current = fm_current;
  if (*duty_opt) so.duty = duty;
  if (*dur_opt) so.duration = duration;
  if (*step_opt) so.step = step;
  if (*lo_opt) sw.f_lo = f_lo;
  if (*hi_opt) sw.f_hi = f_hi;

  try {
    app::ScenarioResult result;
    if (*validate) {
      result = app::cmd_validate(common, std::cout);
    } else if (*design_caps) {
      result = app::cmd_design_caps(common, std::cout);
    } else if (*field_map) {
      result = app::cmd_field_map(common, fm, std::cout);
    } else if (*simulate) {
      result = app::cmd_simulate(common, so, std::cout);
    } else if (*sweep) {
      result = app::cmd_sweep(common, sw, std::cout);
    } else if (*heat) {
      result = app::cmd_heat(common, ho, std::cout);
    } else {
      result = app::cmd_report(common, std::cout);
    }
    if (!*validate) {
      app::export_result(result, common.out_dir);
      for (const auto& p : result.outputs) std::cerr << "wrote " << p.string() << '\n';
    }
    return result.exit_code;
  } catch (const fieldforge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return app::kExitValidation;
  } catch (const fieldforge::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return app::kExitValidation;
  } catch (const fieldforge::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return app::kExitSolver;
  } catch (const fieldforge::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << '\n';
    return app::kExitSolver;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return app::kExitValidation;
  }
}
