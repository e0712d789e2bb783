#include "fieldforge/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fieldforge/drive.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/resonance.hpp"
#include "fieldforge/thermal.hpp"
#include "fieldforge/units.hpp"
#include "fieldforge/winding.hpp"

namespace fieldforge {
namespace {

using units::Dimension;

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.is_null()) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& msg) { throw ConfigError(msg + where(n)); }

void allow_keys(const YAML::Node& map, std::initializer_list<const char*> keys, const std::string& context) {
  if (!map.IsMap()) fail(map, context + " must be a mapping");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + context);
  }
}

YAML::Node need(const YAML::Node& map, const char* key, const std::string& context) {
  const YAML::Node n = map[key];
  if (!n) fail(map, context + " is missing '" + key + "'");
  return n;
}

std::string scalar_text(const YAML::Node& n) {
  if (!n.IsScalar()) fail(n, "expected a scalar value");
  return n.Scalar();
}

double quantity(const YAML::Node& n, Dimension d) {
  try {
    return units::parse_quantity(scalar_text(n), d);
  } catch (const ConfigError& e) {
    fail(n, e.what());
  }
}

double quantity_or(const YAML::Node& map, const char* key, Dimension d, double fallback) {
  const YAML::Node n = map[key];
  return n ? quantity(n, d) : fallback;
}

int integer(const YAML::Node& n) {
  try {
    return n.as<int>();
  } catch (const YAML::Exception&) {
    fail(n, "expected an integer");
  }
}

bool boolean(const YAML::Node& n) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    fail(n, "expected true or false");
  }
}

Vec3 vec3(const YAML::Node& n, Dimension d) {
  if (!n.IsSequence() || n.size() != 3) fail(n, "expected a list of 3 quantities");
  return {quantity(n[0], d), quantity(n[1], d), quantity(n[2], d)};
}

std::array<double, 2> pair(const YAML::Node& n, Dimension d) {
  if (!n.IsSequence() || n.size() != 2) fail(n, "expected a list of 2 quantities (one per coil half)");
  return {quantity(n[0], d), quantity(n[1], d)};
}

int axis_of(const YAML::Node& n) {
  const std::string s = scalar_text(n);
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  fail(n, "axis must be x, y or z");
}

const char* axis_name(int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; }

ChannelSpec parse_channel(const YAML::Node& n) {
  allow_keys(n, {"id", "nominal_frequency", "target_field", "max_current", "max_duty"}, "channel");
  ChannelSpec c;
  c.id = integer(need(n, "id", "channel"));
  c.nominal_frequency = quantity(need(n, "nominal_frequency", "channel"), Dimension::frequency);
  c.target_field = quantity(need(n, "target_field", "channel"), Dimension::flux_density);
  c.max_current = quantity(need(n, "max_current", "channel"), Dimension::current);
  c.max_duty = quantity(need(n, "max_duty", "channel"), Dimension::dimensionless);
  return c;
}

LitzWireSpec parse_wire(const YAML::Node& n) {
  allow_keys(n, {"strand_diameter", "strand_count", "parallel_bundles", "resistivity", "packing_factor", "distribution"},
             "wire");
  LitzWireSpec w;
  w.strand_diameter = quantity(need(n, "strand_diameter", "wire"), Dimension::length);
  w.strand_count = integer(need(n, "strand_count", "wire"));
  if (n["parallel_bundles"]) w.parallel_bundles = integer(n["parallel_bundles"]);
  w.resistivity = quantity_or(n, "resistivity", Dimension::resistivity, w.resistivity);
  w.packing_factor = quantity_or(n, "packing_factor", Dimension::dimensionless, w.packing_factor);
  if (n["distribution"]) {
    const std::string d = scalar_text(n["distribution"]);
    if (d == "uniform") {
      w.distribution = CurrentDistribution::uniform;
    } else if (d == "surface") {
      w.distribution = CurrentDistribution::surface;
    } else {
      fail(n["distribution"], "distribution must be uniform or surface");
    }
  }
  return w;
}

WindingGeometry parse_winding(const YAML::Node& n) {
  allow_keys(n, {"id", "channel", "wire", "layout", "segments", "turns"}, "winding");
  const std::string id = scalar_text(need(n, "id", "winding"));
  const int channel = integer(need(n, "channel", "winding"));
  const LitzWireSpec wire = parse_wire(need(n, "wire", "winding"));
  const YAML::Node layout = n["layout"];
  const YAML::Node segs = n["segments"];
  if (layout && segs) fail(n, "winding " + id + " gives both layout and segments");
  if (layout) {
    allow_keys(layout, {"axis", "center", "width", "height", "turns", "pitch", "lead_offset"}, "layout");
    if (n["turns"]) fail(n["turns"], "turns belongs inside the layout");
    RectHelixLayout l;
    l.axis = axis_of(need(layout, "axis", "layout"));
    if (layout["center"]) l.center = vec3(layout["center"], Dimension::length);
    l.width = quantity(need(layout, "width", "layout"), Dimension::length);
    l.height = quantity(need(layout, "height", "layout"), Dimension::length);
    l.turns = integer(need(layout, "turns", "layout"));
    l.pitch = quantity_or(layout, "pitch", Dimension::length, 0.0);
    l.lead_offset = quantity_or(layout, "lead_offset", Dimension::length, 0.0);
    try {
      return build_winding(l, id, channel, wire);
    } catch (const InputError& e) {
      fail(layout, e.what());
    }
  }
  if (!segs) fail(n, "winding " + id + " needs a layout or segments");
  if (!segs.IsSequence()) fail(segs, "segments must be a list");
  WindingGeometry w;
  w.coil_id = id;
  w.channel = channel;
  w.wire = wire;
  w.turns = n["turns"] ? integer(n["turns"]) : 1;
  for (const auto& s : segs) {
    if (!s.IsSequence() || s.size() != 2) fail(s, "a segment is a list of two points");
    w.segments.push_back({vec3(s[0], Dimension::length), vec3(s[1], Dimension::length)});
  }
  return w;
}

ChamberSpec parse_chamber(const YAML::Node& n) {
  allow_keys(n, {"inner_dimensions", "ferrite", "grid_resolution"}, "chamber");
  ChamberSpec c;
  c.inner_dimensions = vec3(need(n, "inner_dimensions", "chamber"), Dimension::length);
  if (const YAML::Node f = n["ferrite"]) {
    allow_keys(f, {"enabled", "gap", "calibration"}, "ferrite");
    c.ferrite_enabled = boolean(need(f, "enabled", "ferrite"));
    c.ferrite_gap = quantity_or(f, "gap", Dimension::length, 0.0);
    c.ferrite_calibration = quantity_or(f, "calibration", Dimension::dimensionless, 1.0);
  } else {
    c.ferrite_enabled = false;
  }
  if (const YAML::Node g = n["grid_resolution"]) {
    if (!g.IsSequence() || g.size() != 3) fail(g, "grid_resolution is a list of 3 integers");
    for (std::size_t i = 0; i < 3; ++i) c.grid_resolution[i] = integer(g[i]);
  }
  return c;
}

std::vector<BankPart> parse_bank(const YAML::Node& n) {
  const std::string text = scalar_text(n);
  std::vector<BankPart> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t plus = text.find('+', pos);
    const std::string term = text.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    const std::size_t x = term.find(" x ");
    if (x == std::string::npos) fail(n, "bank term '" + term + "' must read '<count> x <capacitance>'");
    BankPart p;
    try {
      p.count = static_cast<int>(units::parse_quantity(term.substr(0, x), Dimension::dimensionless));
      p.value = units::parse_quantity(term.substr(x + 3), Dimension::capacitance);
    } catch (const ConfigError& e) {
      fail(n, e.what());
    }
    parts.push_back(p);
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return parts;
}

std::string format_bank(const std::vector<BankPart>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += " + ";
    out += std::to_string(parts[i].count) + " x " + units::format_quantity(parts[i].value, Dimension::capacitance);
  }
  return out;
}

void parse_network(const YAML::Node& n, ChamberConfig& config) {
  allow_keys(n,
             {"channel", "self_inductance", "mutual_inductance", "dc_bus_voltage", "compensation", "bank",
              "capacitor_stock", "max_parts_per_group", "series_resistance", "esr_lump"},
             "network");
  ResonantNetwork net;
  NetworkDesign design;
  net.channel = integer(need(n, "channel", "network"));
  design.channel = net.channel;
  net.self_inductance = pair(need(n, "self_inductance", "network"), Dimension::inductance);
  net.mutual = quantity(need(n, "mutual_inductance", "network"), Dimension::inductance);
  net.dc_bus_voltage = quantity_or(n, "dc_bus_voltage", Dimension::voltage, net.dc_bus_voltage);

  if (const YAML::Node stock = n["capacitor_stock"]) {
    if (!stock.IsSequence() || stock.size() != 2) fail(stock, "capacitor_stock lists one stock per coil half");
    for (std::size_t h = 0; h < 2; ++h) {
      if (!stock[h].IsSequence()) fail(stock[h], "a stock is a list of capacitances");
      for (const auto& v : stock[h]) design.capacitor_stock[h].push_back(quantity(v, Dimension::capacitance));
    }
  }
  if (const YAML::Node bank = n["bank"]) {
    if (!bank.IsSequence() || bank.size() != 2) fail(bank, "bank lists one composition per coil half");
    for (std::size_t h = 0; h < 2; ++h) design.implemented_bank[h] = parse_bank(bank[h]);
  }
  if (n["max_parts_per_group"]) design.max_parts_per_group = integer(n["max_parts_per_group"]);
  if (n["esr_lump"]) design.esr_lump = pair(n["esr_lump"], Dimension::resistance);

  if (const YAML::Node c = n["compensation"]) {
    net.compensation = pair(c, Dimension::capacitance);
  } else {
    for (std::size_t h = 0; h < 2; ++h) {
      if (design.implemented_bank[h].empty()) {
        fail(n, "network " + std::to_string(net.channel) + " needs compensation or a bank for each half");
      }
      double group = 0.0;
      for (const auto& p : design.implemented_bank[h]) group += p.value * p.count;
      net.compensation[h] = 0.5 * group;
    }
  }

  const YAML::Node r = need(n, "series_resistance", "network");
  if (r.IsScalar() && r.Scalar() == "calibrated") {
    design.resistance_model = ResistanceModel::calibrated;
  } else if (r.IsScalar() && r.Scalar() == "litz") {
    design.resistance_model = ResistanceModel::litz_plus_lump;
  } else {
    design.resistance_model = ResistanceModel::explicit_values;
    net.series_resistance = pair(r, Dimension::resistance);
  }
  config.networks.push_back(net);
  config.designs.push_back(design);
}

NanoparticleSample parse_sample(const YAML::Node& n) {
  allow_keys(n, {"name", "metal_concentration", "medium_heat_capacity", "medium_density", "heating_rate", "sar"},
             "sample");
  NanoparticleSample s;
  s.name = scalar_text(need(n, "name", "sample"));
  s.metal_concentration = quantity(need(n, "metal_concentration", "sample"), Dimension::mass_density);
  s.medium_heat_capacity = quantity_or(n, "medium_heat_capacity", Dimension::specific_heat, s.medium_heat_capacity);
  s.medium_density = quantity_or(n, "medium_density", Dimension::mass_density, s.medium_density);
  const YAML::Node rates = n["heating_rate"];
  const YAML::Node sars = n["sar"];
  if (rates && sars) fail(n, "sample " + s.name + " gives both heating_rate and sar");
  if (rates) {
    if (!rates.IsMap()) fail(rates, "heating_rate maps channel id to a rate");
    for (const auto& kv : rates) {
      const double rate = quantity(kv.second, Dimension::heating_rate);
      if (!(s.metal_concentration > 0.0)) fail(n, "metal concentration must be positive");
      s.sar_per_channel[integer(kv.first)] = thermal::sar(s, rate, 1.0);
    }
  }
  if (sars) {
    if (!sars.IsMap()) fail(sars, "sar maps channel id to a specific power");
    for (const auto& kv : sars) s.sar_per_channel[integer(kv.first)] = quantity(kv.second, Dimension::specific_power);
  }
  return s;
}

void parse_thermal(const YAML::Node& n, ChamberConfig& config) {
  allow_keys(n,
             {"copper_resistivity", "copper_specific_heat", "copper_density", "coolant_sink_conductance", "ambient",
              "wall_rate_limit", "proximity_factor", "wall_observations"},
             "thermal");
  ThermalParams& t = config.thermal;
  t.copper_resistivity = quantity_or(n, "copper_resistivity", Dimension::resistivity, t.copper_resistivity);
  t.copper_specific_heat = quantity_or(n, "copper_specific_heat", Dimension::specific_heat, t.copper_specific_heat);
  t.copper_density = quantity_or(n, "copper_density", Dimension::mass_density, t.copper_density);
  t.coolant_sink_conductance =
      quantity_or(n, "coolant_sink_conductance", Dimension::thermal_conductance, t.coolant_sink_conductance);
  t.ambient = quantity_or(n, "ambient", Dimension::temperature, t.ambient);
  t.wall_rate_limit = quantity_or(n, "wall_rate_limit", Dimension::heating_rate, t.wall_rate_limit);
  t.proximity_factor = quantity_or(n, "proximity_factor", Dimension::dimensionless, t.proximity_factor);
  if (const YAML::Node obs = n["wall_observations"]) {
    if (!obs.IsSequence()) fail(obs, "wall_observations must be a list");
    for (const auto& o : obs) {
      allow_keys(o, {"channel", "delta_t", "duration"}, "wall observation");
      WallObservation w;
      w.channel = integer(need(o, "channel", "wall observation"));
      w.delta_t = quantity(need(o, "delta_t", "wall observation"), Dimension::temperature);
      w.duration = quantity(need(o, "duration", "wall observation"), Dimension::time);
      config.wall_observations.push_back(w);
    }
  }
}

void parse_drive(const YAML::Node& n, DriveSettings& d) {
  allow_keys(n, {"phase", "interleave", "line_voltage", "efficiency"}, "drive");
  d.phase = quantity_or(n, "phase", Dimension::angle, d.phase);
  d.line_voltage = quantity_or(n, "line_voltage", Dimension::voltage, d.line_voltage);
  d.efficiency = quantity_or(n, "efficiency", Dimension::dimensionless, d.efficiency);
  if (const YAML::Node il = n["interleave"]) {
    if (!il.IsMap()) fail(il, "interleave maps channel id to a submodule count");
    for (const auto& kv : il) d.interleave[integer(kv.first)] = integer(kv.second);
  }
}

template <typename Fn>
void each(const YAML::Node& root, const char* key, Fn fn) {
  const YAML::Node list = root[key];
  if (!list) return;
  if (!list.IsSequence()) fail(list, std::string(key) + " must be a list");
  for (const auto& item : list) fn(item);
}

// ---- writing ----

std::string q(double v, Dimension d) { return units::format_quantity(v, d); }

void emit_pair(YAML::Emitter& out, const std::array<double, 2>& v, Dimension d) {
  out << YAML::Flow << YAML::BeginSeq << q(v[0], d) << q(v[1], d) << YAML::EndSeq;
}

void emit_vec3(YAML::Emitter& out, const Vec3& v, Dimension d) {
  out << YAML::Flow << YAML::BeginSeq << q(v.x, d) << q(v.y, d) << q(v.z, d) << YAML::EndSeq;
}

void emit_wire(YAML::Emitter& out, const LitzWireSpec& w) {
  out << YAML::BeginMap;
  out << YAML::Key << "strand_diameter" << YAML::Value << q(w.strand_diameter, Dimension::length);
  out << YAML::Key << "strand_count" << YAML::Value << w.strand_count;
  out << YAML::Key << "parallel_bundles" << YAML::Value << w.parallel_bundles;
  out << YAML::Key << "resistivity" << YAML::Value << q(w.resistivity, Dimension::resistivity);
  out << YAML::Key << "packing_factor" << YAML::Value << units::format_double(w.packing_factor);
  out << YAML::Key << "distribution" << YAML::Value
      << (w.distribution == CurrentDistribution::uniform ? "uniform" : "surface");
  out << YAML::EndMap;
}

}  // namespace

void resolve_series_resistance(ChamberConfig& config) {
  for (auto& net : config.networks) {
    const NetworkDesign* design = config.design(net.channel);
    if (design == nullptr || design->resistance_model == ResistanceModel::explicit_values) continue;
    const ChannelSpec& ch = config.channel(net.channel);
    if (design->resistance_model == ResistanceModel::calibrated) {
      const double r = drive::calibrated_resistance(ch.max_duty, net.dc_bus_voltage, ch.max_current);
      net.series_resistance = {r, r};
      continue;
    }
    const auto coils = config.windings_of(net.channel);
    if (coils.size() != 2) throw ConfigError("litz resistance needs exactly 2 windings on channel " +
                                             std::to_string(net.channel));
    for (int h = 0; h < 2; ++h) {
      const auto hs = static_cast<std::size_t>(h);
      const WindingGeometry& w = *coils[hs];
      const double f = resonance::predicted_resonance(net, h);
      net.series_resistance[hs] =
          thermal::litz_resistance(w.wire, w.conductor_length(), f) * config.thermal.proximity_factor +
          design->esr_lump[hs];
    }
  }
}

ChamberConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  if (!root || root.IsNull()) throw ConfigError("empty configuration");
  allow_keys(root, {"channels", "windings", "chamber", "networks", "samples", "thermal", "drive"}, "configuration");

  ChamberConfig config;
  try {
    each(root, "channels", [&](const YAML::Node& n) { config.channels.push_back(parse_channel(n)); });
    each(root, "windings", [&](const YAML::Node& n) { config.windings.push_back(parse_winding(n)); });
    config.chamber = parse_chamber(need(root, "chamber", "configuration"));
    each(root, "networks", [&](const YAML::Node& n) { parse_network(n, config); });
    each(root, "samples", [&](const YAML::Node& n) { config.samples.push_back(parse_sample(n)); });
    if (root["thermal"]) parse_thermal(root["thermal"], config);
    if (root["drive"]) parse_drive(root["drive"], config.drive);
    resolve_series_resistance(config);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return config;
}

ChamberConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize_config(const ChamberConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;

  out << YAML::Key << "channels" << YAML::Value << YAML::BeginSeq;
  for (const auto& ch : c.channels) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << ch.id;
    out << YAML::Key << "nominal_frequency" << YAML::Value << q(ch.nominal_frequency, Dimension::frequency);
    out << YAML::Key << "target_field" << YAML::Value << q(ch.target_field, Dimension::flux_density);
    out << YAML::Key << "max_current" << YAML::Value << q(ch.max_current, Dimension::current);
    out << YAML::Key << "max_duty" << YAML::Value << units::format_double(ch.max_duty);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "windings" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : c.windings) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << YAML::DoubleQuoted << w.coil_id;
    out << YAML::Key << "channel" << YAML::Value << w.channel;
    out << YAML::Key << "wire" << YAML::Value;
    emit_wire(out, w.wire);
    if (w.layout) {
      const auto& l = *w.layout;
      out << YAML::Key << "layout" << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "axis" << YAML::Value << axis_name(l.axis);
      out << YAML::Key << "center" << YAML::Value;
      emit_vec3(out, l.center, Dimension::length);
      out << YAML::Key << "width" << YAML::Value << q(l.width, Dimension::length);
      out << YAML::Key << "height" << YAML::Value << q(l.height, Dimension::length);
      out << YAML::Key << "turns" << YAML::Value << l.turns;
      out << YAML::Key << "pitch" << YAML::Value << q(l.pitch, Dimension::length);
      out << YAML::Key << "lead_offset" << YAML::Value << q(l.lead_offset, Dimension::length);
      out << YAML::EndMap;
    } else {
      out << YAML::Key << "turns" << YAML::Value << w.turns;
      out << YAML::Key << "segments" << YAML::Value << YAML::BeginSeq;
      for (const auto& s : w.segments) {
        out << YAML::Flow << YAML::BeginSeq;
        emit_vec3(out, s.start, Dimension::length);
        emit_vec3(out, s.end, Dimension::length);
        out << YAML::EndSeq;
      }
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "chamber" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "inner_dimensions" << YAML::Value;
  emit_vec3(out, c.chamber.inner_dimensions, Dimension::length);
  out << YAML::Key << "ferrite" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "enabled" << YAML::Value << c.chamber.ferrite_enabled;
  out << YAML::Key << "gap" << YAML::Value << q(c.chamber.ferrite_gap, Dimension::length);
  out << YAML::Key << "calibration" << YAML::Value << units::format_double(c.chamber.ferrite_calibration);
  out << YAML::EndMap;
  out << YAML::Key << "grid_resolution" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (int g : c.chamber.grid_resolution) out << g;
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "networks" << YAML::Value << YAML::BeginSeq;
  for (const auto& n : c.networks) {
    const NetworkDesign* d = c.design(n.channel);
    out << YAML::BeginMap;
    out << YAML::Key << "channel" << YAML::Value << n.channel;
    out << YAML::Key << "self_inductance" << YAML::Value;
    emit_pair(out, n.self_inductance, Dimension::inductance);
    out << YAML::Key << "mutual_inductance" << YAML::Value << q(n.mutual, Dimension::inductance);
    out << YAML::Key << "dc_bus_voltage" << YAML::Value << q(n.dc_bus_voltage, Dimension::voltage);
    out << YAML::Key << "compensation" << YAML::Value;
    emit_pair(out, n.compensation, Dimension::capacitance);
    const ResistanceModel model = d ? d->resistance_model : ResistanceModel::explicit_values;
    out << YAML::Key << "series_resistance" << YAML::Value;
    if (model == ResistanceModel::calibrated) {
      out << "calibrated";
    } else if (model == ResistanceModel::litz_plus_lump) {
      out << "litz";
    } else {
      emit_pair(out, n.series_resistance, Dimension::resistance);
    }
    if (d != nullptr) {
      out << YAML::Key << "capacitor_stock" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (const auto& stock : d->capacitor_stock) {
        out << YAML::Flow << YAML::BeginSeq;
        for (double v : stock) out << q(v, Dimension::capacitance);
        out << YAML::EndSeq;
      }
      out << YAML::EndSeq;
      if (!d->implemented_bank[0].empty() || !d->implemented_bank[1].empty()) {
        out << YAML::Key << "bank" << YAML::Value << YAML::BeginSeq;
        for (const auto& b : d->implemented_bank) out << format_bank(b);
        out << YAML::EndSeq;
      }
      out << YAML::Key << "max_parts_per_group" << YAML::Value << d->max_parts_per_group;
      out << YAML::Key << "esr_lump" << YAML::Value;
      emit_pair(out, d->esr_lump, Dimension::resistance);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "samples" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : c.samples) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << YAML::DoubleQuoted << s.name;
    out << YAML::Key << "metal_concentration" << YAML::Value << q(s.metal_concentration, Dimension::mass_density);
    out << YAML::Key << "medium_heat_capacity" << YAML::Value << q(s.medium_heat_capacity, Dimension::specific_heat);
    out << YAML::Key << "medium_density" << YAML::Value << q(s.medium_density, Dimension::mass_density);
    out << YAML::Key << "sar" << YAML::Value << YAML::BeginMap;
    for (const auto& [ch, v] : s.sar_per_channel) out << YAML::Key << ch << YAML::Value << q(v, Dimension::specific_power);
    out << YAML::EndMap;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  const ThermalParams& t = c.thermal;
  out << YAML::Key << "thermal" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "copper_resistivity" << YAML::Value << q(t.copper_resistivity, Dimension::resistivity);
  out << YAML::Key << "copper_specific_heat" << YAML::Value << q(t.copper_specific_heat, Dimension::specific_heat);
  out << YAML::Key << "copper_density" << YAML::Value << q(t.copper_density, Dimension::mass_density);
  out << YAML::Key << "coolant_sink_conductance" << YAML::Value
      << q(t.coolant_sink_conductance, Dimension::thermal_conductance);
  out << YAML::Key << "ambient" << YAML::Value << q(t.ambient, Dimension::temperature);
  out << YAML::Key << "wall_rate_limit" << YAML::Value << q(t.wall_rate_limit, Dimension::heating_rate);
  out << YAML::Key << "proximity_factor" << YAML::Value << units::format_double(t.proximity_factor);
  out << YAML::Key << "wall_observations" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : c.wall_observations) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "channel" << YAML::Value << w.channel;
    out << YAML::Key << "delta_t" << YAML::Value << q(w.delta_t, Dimension::temperature);
    out << YAML::Key << "duration" << YAML::Value << q(w.duration, Dimension::time);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;

  out << YAML::Key << "drive" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "phase" << YAML::Value << q(c.drive.phase, Dimension::angle);
  out << YAML::Key << "line_voltage" << YAML::Value << q(c.drive.line_voltage, Dimension::voltage);
  out << YAML::Key << "efficiency" << YAML::Value << units::format_double(c.drive.efficiency);
  out << YAML::Key << "interleave" << YAML::Value << YAML::BeginMap;
  for (const auto& [ch, n] : c.drive.interleave) out << YAML::Key << ch << YAML::Value << n;
  out << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fieldforge
