#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "fieldforge/app.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/resonance.hpp"
#include "fieldforge/thermal.hpp"
#include "fieldforge/units.hpp"
#include "fieldforge/validate.hpp"

namespace fieldforge::app {
namespace {

using nlohmann::ordered_json;
using units::format_double;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::ofstream open_output(ScenarioResult& r, const std::filesystem::path& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  const auto path = dir / file;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  r.outputs.push_back(path);
  return out;
}

std::string csv_quote(const std::string& s) { return '"' + s + '"'; }

struct CapRow {
  int channel;
  int half;
  double c_calc;
  resonance::CapacitorBank bank;
  bool implemented;
  double f_predicted;
};

std::vector<CapRow> capacitor_rows(const ChamberConfig& config) {
  std::vector<CapRow> rows;
  for (const auto& net : config.networks) {
    const ChannelSpec& ch = config.channel(net.channel);
    const NetworkDesign* design = config.design(net.channel);
    for (int h = 0; h < 2; ++h) {
      const auto hs = static_cast<std::size_t>(h);
      CapRow row{net.channel, h + 1, 0.0, {}, false, 0.0};
      row.c_calc = resonance::compensation_capacitance(ch.nominal_frequency, net.self_inductance[hs], net.mutual);
      if (design != nullptr && !design->implemented_bank[hs].empty()) {
        row.bank = resonance::bank_from_parts(design->implemented_bank[hs]);
        row.implemented = true;
      } else if (design != nullptr && !design->capacitor_stock[hs].empty()) {
        row.bank = resonance::compose_bank(row.c_calc, design->capacitor_stock[hs], design->max_parts_per_group);
      }
      const double c = row.bank.group.empty() ? net.compensation[hs] : row.bank.effective();
      row.f_predicted = resonance::resonance_frequency(net.equivalent_inductance(h), c);
      rows.push_back(row);
    }
  }
  return rows;
}

ordered_json bank_json(const resonance::CapacitorBank& b) {
  ordered_json parts = ordered_json::array();
  for (const auto& p : b.group) parts.push_back({{"count", p.count}, {"value_F", p.value}});
  return parts;
}

double bank_value(const CapRow& r) { return r.bank.group.empty() ? 0.0 : r.bank.effective(); }

}  // namespace

ScenarioResult cmd_validate(const CommonOptions& common, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const ValidationReport report = validate_config(loaded.config);
  for (const auto& v : report.violations) out << v.to_string() << '\n';
  out << report.violations.size() << " violations\n";
  ScenarioResult r;
  r.name = "validate";
  r.inputs_digest = loaded.digest;
  r.metrics["violations"] = static_cast<double>(report.violations.size());
  r.flags["valid"] = report.ok();
  r.exit_code = report.ok() ? kExitOk : kExitValidation;
  return r;
}

ScenarioResult cmd_design_caps(const CommonOptions& common, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  ScenarioResult r;
  r.name = "design_caps";
  r.inputs_digest = loaded.digest;
  const auto rows = capacitor_rows(loaded.config);

  out << "channel  half  C_calc [nF]  bank                                   C_bank [nF]  f_pred [kHz]\n";
  for (const auto& row : rows) {
    char line[256];
    std::snprintf(line, sizeof line, "%7d  %4d  %11.1f  %-37s  %11.1f  %12.2f\n", row.channel, row.half,
                  row.c_calc * 1e9, row.bank.group.empty() ? "-" : row.bank.describe().c_str(), bank_value(row) * 1e9,
                  row.f_predicted * 1e-3);
    out << line;
    const std::string key = "ch" + std::to_string(row.channel) + "_half" + std::to_string(row.half);
    r.metrics[key + "_C_calc_F"] = row.c_calc;
    r.metrics[key + "_C_bank_F"] = bank_value(row);
    r.metrics[key + "_f_predicted_Hz"] = row.f_predicted;
  }

  if (common.format == Format::json) {
    ordered_json j = ordered_json::array();
    for (const auto& row : rows) {
      j.push_back({{"channel", row.channel},
                   {"half", row.half},
                   {"C_calc_F", row.c_calc},
                   {"bank_parts", bank_json(row.bank)},
                   {"C_bank_F", bank_value(row)},
                   {"f_predicted_Hz", row.f_predicted}});
    }
    open_output(r, common.out_dir, "design_caps.json") << j.dump(2) << '\n';
  } else {
    auto f = open_output(r, common.out_dir, "design_caps.csv");
    f << "channel,half,C_calc_F,bank_parts,C_bank_F,f_predicted_Hz\n";
    for (const auto& row : rows) {
      f << row.channel << ',' << row.half << ',' << format_double(row.c_calc) << ','
        << csv_quote(row.bank.group.empty() ? "" : row.bank.describe()) << ',' << format_double(bank_value(row))
        << ',' << format_double(row.f_predicted) << '\n';
    }
  }
  return r;
}

ScenarioResult cmd_field_map(const CommonOptions& common, const FieldMapOptions& options, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const ChamberConfig& config = loaded.config;
  const double current = options.current.value_or(config.channel(options.channel).max_current);
  const auto map = magnetics::compute_field_map(config, options.channel, current);
  const auto stats = magnetics::uniformity(map);
  const auto coils = config.windings_of(options.channel);
  const std::vector<double> currents(coils.size(), current);
  const Vec3 center =
      magnetics::field_at_point(coils, currents, {0.0, 0.0, 0.0}, magnetics::FerriteModel::for_config(config));

  ScenarioResult r;
  r.name = "field_map_ch" + std::to_string(options.channel);
  r.inputs_digest = loaded.digest;
  r.metrics["current_A"] = current;
  r.metrics["center_T"] = norm(center);
  r.metrics["median_T"] = stats.median_magnitude;
  r.metrics["min_T"] = stats.min;
  r.metrics["max_T"] = stats.max;
  r.metrics["band_fraction"] = stats.band_fraction;
  r.metrics["flagged"] = static_cast<double>(map.flagged());

  out << "channel " << options.channel << " at " << fixed(current, 1) << " A\n";
  out << "  center |B|      " << fixed(norm(center) * 1e3, 2) << " mT\n";
  out << "  median |B|      " << fixed(stats.median_magnitude * 1e3, 2) << " mT\n";
  out << "  range           " << fixed(stats.min * 1e3, 2) << " .. " << fixed(stats.max * 1e3, 2) << " mT\n";
  out << "  within +-" << fixed(stats.band_halfwidth * 100, 0) << "%    " << fixed(stats.band_fraction * 100, 1)
      << "% of " << stats.count << " samples\n";

  if (common.format == Format::json) {
    ordered_json j;
    j["grid_origin_m"] = {map.grid_origin.x, map.grid_origin.y, map.grid_origin.z};
    j["grid_spacing_m"] = {map.grid_spacing.x, map.grid_spacing.y, map.grid_spacing.z};
    j["dims"] = map.dims;
    j["excitation_A"] = map.excitation;
    ordered_json samples = ordered_json::array();
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (!map.valid[i]) {
        samples.push_back(nullptr);
        continue;
      }
      samples.push_back({map.samples[i].x, map.samples[i].y, map.samples[i].z});
    }
    j["samples_T"] = std::move(samples);
    j["uniformity"] = {{"median_magnitude_T", stats.median_magnitude}, {"min_T", stats.min},
                       {"max_T", stats.max},  {"band_fraction", stats.band_fraction},
                       {"band_halfwidth", stats.band_halfwidth}};
    open_output(r, common.out_dir, r.name + ".json") << j.dump() << '\n';
  } else {
    auto f = open_output(r, common.out_dir, r.name + ".csv");
    magnetics::write_field_map_csv(f, map, stats);
  }
  return r;
}

ScenarioResult cmd_simulate(const CommonOptions& common, const SimulateOptions& options, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const SimulationRun run = run_simulation(loaded.config, options);
  ScenarioResult r;
  r.name = "simulate_" + options.channel;
  r.inputs_digest = loaded.digest;
  r.metrics["coupling"] = run.coupling;
  r.metrics["crosstalk_ratio"] = run.metrics.crosstalk_ratio;
  out << "coupling k = " << format_double(run.coupling) << '\n';
  for (const auto& cm : run.metrics.channels) {
    const std::string key = "ch" + std::to_string(cm.channel);
    r.metrics[key + "_peak_current_A"] = cm.peak_current;
    r.metrics[key + "_peak_coil_voltage_V"] = std::max(cm.peak_coil_voltage[0], cm.peak_coil_voltage[1]);
    r.metrics[key + "_settle_cycles"] = cm.settle_cycles;
    out << "channel " << cm.channel << ": peak current " << fixed(cm.half_peak_current[0], 2) << " / "
        << fixed(cm.half_peak_current[1], 2) << " A, peak coil voltage " << fixed(cm.peak_coil_voltage[0], 1)
        << " / " << fixed(cm.peak_coil_voltage[1], 1) << " V, settled after " << cm.settle_cycles << " cycles\n";
  }
  out << "crosstalk ratio " << format_double(run.metrics.crosstalk_ratio) << '\n';

  if (common.format == Format::json) {
    ordered_json j;
    j["step_s"] = run.trace.step;
    j["sample_interval_s"] = run.trace.sample_interval();
    j["t_s"] = run.trace.time;
    for (const auto& c : run.trace.channels) {
      const std::string k = std::to_string(c.channel);
      j["I" + k + "_A"] = c.current[0];
      j["V" + k + "_V"] = c.coil_voltage[0];
      j["Vdrive" + k + "_V"] = c.drive_voltage;
    }
    open_output(r, common.out_dir, "trace_" + options.channel + ".json") << j.dump() << '\n';
  } else {
    auto f = open_output(r, common.out_dir, "trace_" + options.channel + ".csv");
    drive::write_trace_csv(f, run.trace);
  }
  return r;
}

ScenarioResult cmd_sweep(const CommonOptions& common, const SweepOptions& options, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const ChamberConfig& config = loaded.config;
  const ChannelSpec& ch = config.channel(options.channel);
  const ResonantNetwork& net = config.network(options.channel);
  const double lo = options.f_lo.value_or(0.9 * ch.nominal_frequency);
  const double hi = options.f_hi.value_or(1.1 * ch.nominal_frequency);
  const auto sweep =
      resonance::sweep_resonance(net, channel_drive(config, options.channel, ch.max_duty), lo, hi, options.steps);
  const double predicted = resonance::predicted_resonance(net, 0);

  ScenarioResult r;
  r.name = "sweep_ch" + std::to_string(options.channel);
  r.inputs_digest = loaded.digest;
  r.metrics["argmax_Hz"] = sweep.argmax;
  r.metrics["predicted_Hz"] = predicted;
  r.metrics["sweep_step_Hz"] = sweep.step;
  r.flags["within_one_step"] = std::abs(sweep.argmax - predicted) <= sweep.step;
  out << "sweep " << fixed(lo * 1e-3, 2) << " .. " << fixed(hi * 1e-3, 2) << " kHz in " << options.steps
      << " steps\n";
  out << "  argmax     " << fixed(sweep.argmax * 1e-3, 3) << " kHz\n";
  out << "  predicted  " << fixed(predicted * 1e-3, 3) << " kHz\n";

  if (common.format == Format::json) {
    ordered_json j;
    j["frequency_Hz"] = sweep.frequency;
    j["amplitude_A"] = sweep.amplitude;
    j["argmax_Hz"] = sweep.argmax;
    open_output(r, common.out_dir, r.name + ".json") << j.dump(2) << '\n';
  } else {
    auto f = open_output(r, common.out_dir, r.name + ".csv");
    f << "frequency_Hz,amplitude_A\n";
    for (std::size_t i = 0; i < sweep.frequency.size(); ++i) {
      f << format_double(sweep.frequency[i]) << ',' << format_double(sweep.amplitude[i]) << '\n';
    }
  }
  return r;
}

ScenarioResult cmd_heat(const CommonOptions& common, const HeatOptions& options, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const ChamberConfig& config = loaded.config;
  const NanoparticleSample& sample = config.sample(options.sample);
  const auto curve = thermal::heating_curve(sample, options.channel, options.duration, 101);

  ScenarioResult r;
  r.name = "heat_ch" + std::to_string(options.channel);
  r.inputs_digest = loaded.digest;
  r.metrics["sample_rate_degC_per_s"] = curve.rate;
  r.metrics["sample_delta_T_degC"] = curve.delta_t;

  out << "sample " << sample.name << ", channel " << options.channel << ", " << format_double(options.duration)
      << " s\n";
  out << "  channel  SAR [W/g]  rate [degC/s]  dT [degC]\n";
  for (const auto& [ch, s] : sample.sar_per_channel) {
    const auto h = thermal::heating_curve(sample, ch, options.duration);
    char line[128];
    std::snprintf(line, sizeof line, "  %7d  %9.1f  %13.3f  %9.3f\n", ch, s * 1e-3, h.rate, h.delta_t);
    out << line;
  }

  const ChannelSpec& ch = config.channel(options.channel);
  const ResonantNetwork& net = config.network(options.channel);
  std::vector<thermal::HeatingResult> coils;
  for (const auto* w : config.windings_of(options.channel)) {
    coils.push_back(thermal::coil_temperature_rise(net, w->wire, *w, ch.max_current, options.duration, config.thermal));
    const auto& c = coils.back();
    out << "  coil " << c.subject << " at " << fixed(ch.max_current, 0) << " A: dT " << fixed(c.delta_t, 2)
        << " degC\n";
    r.metrics["coil_" + c.subject + "_delta_T_degC"] = c.delta_t;
  }
  bool safe = true;
  for (const auto& obs : config.wall_observations) {
    if (obs.channel != options.channel) continue;
    const auto wall = thermal::observed_heating("wall", obs.delta_t, obs.duration);
    const auto verdict = thermal::safety_check(wall, config.thermal);
    safe = safe && verdict.pass;
    out << "safety: wall rate " << fixed(verdict.rate, 3) << " degC/s vs limit " << fixed(verdict.limit, 3)
        << " -> " << (verdict.pass ? "PASS" : "FAIL") << " (margin " << fixed(verdict.margin, 3) << ")\n";
    r.metrics["wall_rate_degC_per_s"] = verdict.rate;
  }
  r.flags["wall_safe"] = safe;

  if (common.format == Format::json) {
    ordered_json j;
    j["sample"] = sample.name;
    j["channel"] = options.channel;
    j["t_s"] = curve.time;
    j["sample_dT_degC"] = curve.temperature;
    for (const auto& c : coils) j["coil_" + c.subject + "_T_degC"] = c.temperature;
    j["coil_t_s"] = coils.empty() ? std::vector<double>{} : coils.front().time;
    open_output(r, common.out_dir, r.name + ".json") << j.dump() << '\n';
  } else {
    auto f = open_output(r, common.out_dir, r.name + "_sample.csv");
    f << "t_s,dT_degC\n";
    for (std::size_t i = 0; i < curve.time.size(); ++i) {
      f << format_double(curve.time[i]) << ',' << format_double(curve.temperature[i]) << '\n';
    }
    if (!coils.empty()) {
      auto g = open_output(r, common.out_dir, r.name + "_coils.csv");
      g << "t_s";
      for (const auto& c : coils) g << ",T_" << c.subject << "_degC";
      g << '\n';
      for (std::size_t i = 0; i < coils.front().time.size(); ++i) {
        g << format_double(coils.front().time[i]);
        for (const auto& c : coils) g << ',' << format_double(c.temperature[i]);
        g << '\n';
      }
    }
  }
  return r;
}

ScenarioResult cmd_report(const CommonOptions& common, std::ostream& out) {
  const LoadedConfig loaded = load(common.config);
  const ChamberConfig& config = loaded.config;
  ScenarioResult r;
  r.name = "report";
  r.inputs_digest = loaded.digest;
  ordered_json j;

  const ValidationReport report = validate_config(config);
  out << "validation: " << report.violations.size() << " violations\n";
  j["violations"] = report.violations.size();

  out << "\ncompensation\n";
  ordered_json caps = ordered_json::array();
  for (const auto& row : capacitor_rows(config)) {
    char line[256];
    std::snprintf(line, sizeof line, "  ch%d half %d: C_calc %.1f nF, bank %s = %.1f nF, f %.2f kHz\n", row.channel,
                  row.half, row.c_calc * 1e9, row.bank.group.empty() ? "-" : row.bank.describe().c_str(),
                  bank_value(row) * 1e9, row.f_predicted * 1e-3);
    out << line;
    caps.push_back({{"channel", row.channel},
                    {"half", row.half},
                    {"C_calc_F", row.c_calc},
                    {"bank_parts", bank_json(row.bank)},
                    {"C_bank_F", bank_value(row)},
                    {"f_predicted_Hz", row.f_predicted}});
  }
  j["design_caps"] = caps;

  out << "\nresonance and coil voltage at rated current\n";
  for (const auto& net : config.networks) {
    const ChannelSpec& ch = config.channel(net.channel);
    const double f = resonance::predicted_resonance(net, 0);
    const double v = resonance::peak_coil_voltage(f, net.equivalent_inductance(0), ch.max_current);
    out << "  ch" << net.channel << ": f " << fixed(f * 1e-3, 2) << " kHz, omega(L+M)I " << fixed(v * 1e-3, 3)
        << " kV, R " << fixed(net.series_resistance[0] * 1e3, 2) << " mOhm\n";
    const std::string key = "ch" + std::to_string(net.channel);
    r.metrics[key + "_f_predicted_Hz"] = f;
    r.metrics[key + "_coil_voltage_V"] = v;
    j[key]["f_predicted_Hz"] = f;
    j[key]["coil_voltage_V"] = v;
    j[key]["series_resistance_ohm"] = net.series_resistance;
  }

  const auto ferrite = magnetics::FerriteModel::for_config(config);
  const auto lm = magnetics::inductance_matrix(config.windings, ferrite);
  out << "\ninductance from geometry [uH]\n";
  for (std::size_t i = 0; i < lm.size(); ++i) {
    out << "  " << lm.labels[i];
    for (std::size_t k = 0; k < lm.size(); ++k) out << "  " << fixed(lm(i, k) * 1e6, 4);
    out << '\n';
  }
  const double k_ch = config.channels.size() == 2
                          ? magnetics::channel_coupling(lm, config.channels[0].id, config.channels[1].id)
                          : 0.0;
  out << "  channel coupling k " << format_double(k_ch) << '\n';
  j["inductance_H"] = ordered_json::array();
  for (std::size_t i = 0; i < lm.size(); ++i) {
    std::vector<double> row;
    for (std::size_t k = 0; k < lm.size(); ++k) row.push_back(lm(i, k));
    j["inductance_H"].push_back(row);
  }
  j["inductance_labels"] = lm.labels;
  j["channel_coupling"] = k_ch;
  r.metrics["channel_coupling"] = k_ch;

  out << "\nfield at rated current\n";
  for (const auto& ch : config.channels) {
    const auto coils = config.windings_of(ch.id);
    const std::vector<double> currents(coils.size(), ch.max_current);
    const double center = norm(magnetics::field_at_point(coils, currents, {0.0, 0.0, 0.0}, ferrite));
    const auto stats = magnetics::uniformity(magnetics::compute_field_map(config, ch.id, ch.max_current));
    out << "  ch" << ch.id << ": center " << fixed(center * 1e3, 2) << " mT, median " << fixed(stats.median_magnitude * 1e3, 2)
        << " mT, range " << fixed(stats.min * 1e3, 2) << " .. " << fixed(stats.max * 1e3, 2) << " mT, "
        << fixed(stats.band_fraction * 100, 1) << "% within +-10%\n";
    const std::string key = "ch" + std::to_string(ch.id);
    r.metrics[key + "_center_field_T"] = center;
    r.metrics[key + "_band_fraction"] = stats.band_fraction;
    j[key]["center_field_T"] = center;
    j[key]["median_field_T"] = stats.median_magnitude;
    j[key]["band_fraction"] = stats.band_fraction;
  }

  out << "\nsingle-channel drive at rated duty\n";
  for (const auto& ch : config.channels) {
    SimulateOptions so;
    so.channel = std::to_string(ch.id);
    const SimulationRun run = run_simulation(config, so);
    const auto& cm = run.metrics.at(ch.id);
    const auto power = drive::estimate_input_power(cm, config.network(ch.id), config.drive.line_voltage,
                                                   config.drive.efficiency);
    out << "  ch" << ch.id << ": peak current " << fixed(cm.peak_current, 1) << " A, coil voltage "
        << fixed(std::max(cm.peak_coil_voltage[0], cm.peak_coil_voltage[1]), 0) << " V, crosstalk "
        << fixed(run.metrics.crosstalk_ratio * 100, 4) << "%, input " << fixed(power.apparent * 1e-3, 2) << " kVA ("
        << fixed(power.line_current, 1) << " A line)\n";
    const std::string key = "ch" + std::to_string(ch.id);
    r.metrics[key + "_peak_current_A"] = cm.peak_current;
    r.metrics[key + "_crosstalk_ratio"] = run.metrics.crosstalk_ratio;
    r.metrics[key + "_apparent_power_VA"] = power.apparent;
    r.flags[key + "_crosstalk_below_1pct"] = run.metrics.crosstalk_ratio < 0.01;
    j[key]["peak_current_A"] = cm.peak_current;
    j[key]["peak_coil_voltage_V"] = cm.peak_coil_voltage;
    j[key]["crosstalk_ratio"] = run.metrics.crosstalk_ratio;
    j[key]["apparent_power_VA"] = power.apparent;
    j[key]["line_current_A"] = power.line_current;
  }

  out << "\nnanoparticle heating\n";
  ordered_json sar = ordered_json::array();
  for (const auto& s : config.samples) {
    for (const auto& [ch, v] : s.sar_per_channel) {
      const auto h = thermal::heating_curve(s, ch, 1.0);
      out << "  " << s.name << " ch" << ch << ": SAR " << fixed(v * 1e-3, 1) << " W/g, rate " << fixed(h.rate, 3)
          << " degC/s\n";
      sar.push_back({{"sample", s.name}, {"channel", ch}, {"sar_W_per_kg", v}, {"rate_degC_per_s", h.rate}});
    }
  }
  j["sar"] = sar;

  out << "\ncoil and wall heating over 2 s at rated current\n";
  for (const auto& ch : config.channels) {
    const auto coils = config.windings_of(ch.id);
    if (coils.empty()) continue;
    const auto* w = coils.front();
    const auto rise =
        thermal::coil_temperature_rise(config.network(ch.id), w->wire, *w, ch.max_current, 2.0, config.thermal);
    out << "  ch" << ch.id << " coil " << w->coil_id << ": dT " << fixed(rise.delta_t, 2) << " degC\n";
    j["ch" + std::to_string(ch.id)]["coil_delta_T_degC"] = rise.delta_t;
    r.metrics["ch" + std::to_string(ch.id) + "_coil_delta_T_degC"] = rise.delta_t;
  }
  for (const auto& obs : config.wall_observations) {
    const auto v = thermal::safety_check(thermal::observed_heating("wall", obs.delta_t, obs.duration), config.thermal);
    out << "  ch" << obs.channel << " wall: " << fixed(v.rate, 3) << " degC/s -> " << (v.pass ? "PASS" : "FAIL")
        << '\n';
    r.flags["ch" + std::to_string(obs.channel) + "_wall_safe"] = v.pass;
  }

  if (common.format == Format::json) {
    open_output(r, common.out_dir, "report.json") << j.dump(2) << '\n';
  } else {
    auto f = open_output(r, common.out_dir, "report.csv");
    f << "metric,value\n";
    for (const auto& [k, v] : r.metrics) f << k << ',' << format_double(v) << '\n';
  }
  return r;
}

}  // namespace fieldforge::app
