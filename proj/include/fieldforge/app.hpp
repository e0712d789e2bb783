#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fieldforge/core_model.hpp"
#include "fieldforge/drive.hpp"
#include "fieldforge/magnetics.hpp"

namespace fieldforge::app {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitSolver = 2 };

enum class Format { csv, json };

struct CommonOptions {
  std::filesystem::path config;
  std::filesystem::path out_dir = "out";
  Format format = Format::csv;
};

struct ScenarioResult {
  std::string name;
  std::string inputs_digest;  // FNV-1a 64 of the config bytes, hex
  std::vector<std::filesystem::path> outputs;
  std::map<std::string, double> metrics;
  std::map<std::string, bool> flags;
  int exit_code = kExitOk;
};

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Reads the config file and returns its digest alongside the parsed config.
struct LoadedConfig {
  ChamberConfig config;
  std::string digest;
};
LoadedConfig load(const std::filesystem::path& path);

/// Writes <out_dir>/<name>_result.json describing the scenario and appends it to the outputs.
void export_result(ScenarioResult& result, const std::filesystem::path& out_dir);

/// Drive of a channel at the first half's predicted resonance with the configured bus, interleave and phase.
drive::DriveWaveformSpec channel_drive(const ChamberConfig& config, int channel, double duty);

/// Coupling between the channels' equivalent loops, from the winding geometry.
double geometry_coupling(const ChamberConfig& config);

struct SimulateOptions {
  std::string channel = "1";  // "1", "2" or "both"
  std::optional<double> duty;
  std::optional<double> duration;  // s
  std::optional<double> step;      // s
};

struct SimulationRun {
  drive::SimTrace trace;
  drive::SteadyStateMetrics metrics;
  double coupling = 0.0;
};

/// Simulates both channels (the unselected one idle) with geometry-derived coupling.
SimulationRun run_simulation(const ChamberConfig& config, const SimulateOptions& options);

struct SweepOptions {
  int channel = 1;
  std::optional<double> f_lo;
  std::optional<double> f_hi;
  int steps = 41;
};

struct HeatOptions {
  std::string sample;
  int channel = 1;
  double duration = 2.0;
};

struct FieldMapOptions {
  int channel = 1;
  std::optional<double> current;  // A, defaults to the channel's max current
};

ScenarioResult cmd_validate(const CommonOptions& common, std::ostream& out);
ScenarioResult cmd_design_caps(const CommonOptions& common, std::ostream& out);
ScenarioResult cmd_field_map(const CommonOptions& common, const FieldMapOptions& options, std::ostream& out);
ScenarioResult cmd_simulate(const CommonOptions& common, const SimulateOptions& options, std::ostream& out);
ScenarioResult cmd_sweep(const CommonOptions& common, const SweepOptions& options, std::ostream& out);
ScenarioResult cmd_heat(const CommonOptions& common, const HeatOptions& options, std::ostream& out);
ScenarioResult cmd_report(const CommonOptions& common, std::ostream& out);

}  // namespace fieldforge::app
