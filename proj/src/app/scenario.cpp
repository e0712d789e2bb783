#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fieldforge/app.hpp"
#include "fieldforge/config_io.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/resonance.hpp"

namespace fieldforge::app {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

LoadedConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  const std::string bytes = text.str();
  return {parse_config(bytes), fnv1a_hex(bytes)};
}

void export_result(ScenarioResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / (result.name + "_result.json");
  nlohmann::ordered_json j;
  j["scenario"] = result.name;
  j["inputs_digest"] = result.inputs_digest;
  j["outputs"] = nlohmann::json::array();
  for (const auto& p : result.outputs) j["outputs"].push_back(p.filename().string());
  j["metrics"] = result.metrics;
  j["flags"] = result.flags;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  result.outputs.push_back(path);
}

drive::DriveWaveformSpec channel_drive(const ChamberConfig& config, int channel, double duty) {
  const ResonantNetwork& net = config.network(channel);
  drive::DriveWaveformSpec d;
  d.frequency = resonance::predicted_resonance(net, 0);
  d.duty = duty;
  d.bus_voltage = net.dc_bus_voltage;
  const auto it = config.drive.interleave.find(channel);
  d.interleave_submodules = it == config.drive.interleave.end() ? 1 : it->second;
  d.phase = channel == config.channels.front().id ? 0.0 : config.drive.phase;
  return d;
}

double geometry_coupling(const ChamberConfig& config) {
  if (config.channels.size() != 2) throw InputError("coupling needs two channels");
  const auto m = magnetics::inductance_matrix(config.windings, magnetics::FerriteModel::for_config(config));
  return magnetics::channel_coupling(m, config.channels[0].id, config.channels[1].id);
}

SimulationRun run_simulation(const ChamberConfig& config, const SimulateOptions& options) {
  if (config.channels.size() != 2) throw InputError("simulation needs two channels");
  const int ch_a = config.channels[0].id;
  const int ch_b = config.channels[1].id;
  bool drive_a = false;
  bool drive_b = false;
  if (options.channel == "both") {
    drive_a = drive_b = true;
  } else if (options.channel == std::to_string(ch_a)) {
    drive_a = true;
  } else if (options.channel == std::to_string(ch_b)) {
    drive_b = true;
  } else {
    throw InputError("channel must be " + std::to_string(ch_a) + ", " + std::to_string(ch_b) + " or both");
  }

  std::vector<ResonantNetwork> nets{config.network(ch_a), config.network(ch_b)};
  std::vector<drive::DriveWaveformSpec> drives;
  double duration = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    const ChannelSpec& ch = config.channels[i];
    const bool on = i == 0 ? drive_a : drive_b;
    const double duty = on ? options.duty.value_or(ch.max_duty) : 0.0;
    drives.push_back(channel_drive(config, ch.id, duty));
    if (!on) continue;
    double tau = 0.0;
    for (int h = 0; h < 2; ++h) {
      const double r = nets[i].series_resistance[static_cast<std::size_t>(h)];
      if (r > 0.0) tau = std::max(tau, 2.0 * nets[i].equivalent_inductance(h) / r);
    }
    duration = std::max({duration, 20.0 / drives.back().frequency, 8.0 * tau});
  }
  if (options.duration) duration = *options.duration;
  const double step = options.step.value_or(drive::default_step(drives));

  SimulationRun run;
  run.coupling = geometry_coupling(config);
  drive::TransientOptions topt;
  const double nsteps = std::ceil(duration / step);
  topt.record_stride = static_cast<std::size_t>(std::max(1.0, std::ceil(nsteps / 200000.0)));
  run.trace = drive::simulate_transient(nets, drives, run.coupling, duration, step, topt);
  run.metrics = drive::steady_state(run.trace, 10);
  return run;
}

}  // namespace fieldforge::app
