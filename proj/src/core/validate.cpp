#include "fieldforge/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fieldforge/winding.hpp"

namespace fieldforge {
namespace {

constexpr double kMinFrequency = 1e3;
constexpr double kMaxFrequency = 10e6;
constexpr double kMaxField = 1.0;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

class Collector {
 public:
  explicit Collector(ValidationReport& r) : report_(r) {}
  void add(std::string where, std::string message) { report_.violations.push_back({std::move(where), std::move(message)}); }
  void require(bool cond, const std::string& where, const std::string& message) {
    if (!cond) add(where, message);
  }

 private:
  ValidationReport& report_;
};

void check_channels(const ChamberConfig& c, Collector& out) {
  if (c.channels.size() != 2) out.add("channels", "exactly 2 channels required");
  std::set<int> ids;
  for (const auto& ch : c.channels) {
    const std::string where = "channels[" + std::to_string(ch.id) + "]";
    if (!ids.insert(ch.id).second) out.add(where, "duplicate channel id");
    out.require(positive(ch.nominal_frequency), where, "nominal frequency must be positive");
    if (positive(ch.nominal_frequency)) {
      out.require(ch.nominal_frequency >= kMinFrequency && ch.nominal_frequency <= kMaxFrequency, where,
                  "nominal frequency outside [1 kHz, 10 MHz]");
    }
    out.require(positive(ch.target_field), where, "target field must be positive");
    out.require(!(ch.target_field >= kMaxField), where, "target field must be below 1 T");
    out.require(positive(ch.max_current), where, "max current must be positive");
    out.require(ch.max_duty > 0.0 && ch.max_duty <= 1.0, where, "max duty must lie in (0, 1]");
  }
}

void check_wire(const LitzWireSpec& w, const std::string& where, Collector& out) {
  out.require(positive(w.strand_diameter), where, "strand diameter must be positive");
  out.require(w.strand_count >= 1, where, "strand count must be at least 1");
  out.require(w.parallel_bundles >= 1, where, "parallel bundle count must be at least 1");
  out.require(positive(w.resistivity), where, "resistivity must be positive");
  out.require(w.packing_factor > 0.0 && w.packing_factor <= 1.0, where, "packing factor must lie in (0, 1]");
}

void check_windings(const ChamberConfig& c, Collector& out) {
  std::set<std::string> ids;
  for (const auto& w : c.windings) {
    const std::string where = "windings[" + w.coil_id + "]";
    if (!ids.insert(w.coil_id).second) out.add(where, "duplicate coil id");
    const bool known_channel =
        std::any_of(c.channels.begin(), c.channels.end(), [&](const auto& ch) { return ch.id == w.channel; });
    out.require(known_channel, where, "references unknown channel " + std::to_string(w.channel));
    out.require(w.turns >= 1, where, "turns must be at least 1");
    check_wire(w.wire, where, out);
    if (w.segments.empty()) {
      out.add(where, "no segments");
      continue;
    }
    for (std::size_t i = 0; i < w.segments.size(); ++i) {
      if (!(w.segments[i].length() > 0.0)) {
        out.add(where, "zero-length segment " + std::to_string(i));
        break;
      }
    }
    out.require(is_closed_loop(w), where, "loop not closed");
  }
  for (const auto& ch : c.channels) {
    out.require(c.windings_of(ch.id).size() == 2, "channels[" + std::to_string(ch.id) + "]",
                "exactly 2 windings per channel required");
  }
  // Distinct windings must not intersect.
  for (std::size_t i = 0; i < c.windings.size(); ++i) {
    for (std::size_t j = i + 1; j < c.windings.size(); ++j) {
      const auto& a = c.windings[i];
      const auto& b = c.windings[j];
      const double clearance = a.wire_radius() + b.wire_radius();
      bool hit = false;
      for (const auto& sa : a.segments) {
        for (const auto& sb : b.segments) {
          if (segment_segment_distance(sa.start, sa.end, sb.start, sb.end) < clearance) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      if (hit) out.add("windings[" + a.coil_id + "]", "overlaps winding " + b.coil_id);
    }
  }
}

void check_chamber(const ChamberSpec& s, Collector& out) {
  const std::string where = "chamber";
  out.require(positive(s.inner_dimensions.x) && positive(s.inner_dimensions.y) && positive(s.inner_dimensions.z),
              where, "inner dimensions must be positive");
  for (int n : s.grid_resolution) {
    if (n < 2) {
      out.add(where, "grid resolution must be at least 2 per axis");
      break;
    }
  }
  if (s.ferrite_enabled) out.require(positive(s.ferrite_gap), where, "ferrite gap must be positive");
  out.require(positive(s.ferrite_calibration), where, "ferrite calibration must be positive");
}

void check_networks(const ChamberConfig& c, Collector& out) {
  std::set<int> seen;
  for (const auto& n : c.networks) {
    const std::string where = "networks[" + std::to_string(n.channel) + "]";
    if (!seen.insert(n.channel).second) out.add(where, "duplicate network");
    const bool known_channel =
        std::any_of(c.channels.begin(), c.channels.end(), [&](const auto& ch) { return ch.id == n.channel; });
    out.require(known_channel, where, "references unknown channel " + std::to_string(n.channel));
    for (int h = 0; h < 2; ++h) {
      out.require(positive(n.self_inductance[static_cast<std::size_t>(h)]), where, "inductances must be positive");
      out.require(positive(n.compensation[static_cast<std::size_t>(h)]), where, "compensation must be positive");
      out.require(n.series_resistance[static_cast<std::size_t>(h)] >= 0.0, where, "resistance must be non-negative");
      out.require(positive(n.equivalent_inductance(h)), where, "self plus mutual inductance must be positive");
    }
    out.require(positive(n.dc_bus_voltage), where, "dc bus voltage must be positive");
  }
  for (const auto& ch : c.channels) {
    out.require(seen.count(ch.id) == 1, "channels[" + std::to_string(ch.id) + "]", "missing resonant network");
  }
  for (const auto& d : c.designs) {
    const std::string where = "designs[" + std::to_string(d.channel) + "]";
    out.require(seen.count(d.channel) == 1, where, "references unknown network " + std::to_string(d.channel));
    out.require(d.max_parts_per_group >= 1, where, "part budget must be at least 1");
    for (const auto& stock : d.capacitor_stock) {
      for (double v : stock) out.require(positive(v), where, "stock capacitance must be positive");
    }
    for (const auto& bank : d.implemented_bank) {
      for (const auto& p : bank) {
        out.require(positive(p.value) && p.count >= 1, where, "bank parts need positive value and count");
      }
    }
    for (double r : d.esr_lump) out.require(r >= 0.0, where, "esr lump must be non-negative");
  }
}

void check_samples(const ChamberConfig& c, Collector& out) {
  for (const auto& s : c.samples) {
    const std::string where = "samples[" + s.name + "]";
    out.require(positive(s.metal_concentration), where, "metal concentration must be positive");
    out.require(positive(s.medium_heat_capacity), where, "medium heat capacity must be positive");
    out.require(positive(s.medium_density), where, "medium density must be positive");
    for (const auto& [ch, sar] : s.sar_per_channel) {
      const bool known =
          std::any_of(c.channels.begin(), c.channels.end(), [ch = ch](const auto& x) { return x.id == ch; });
      out.require(known, where, "SAR entry for unknown channel " + std::to_string(ch));
      out.require(std::isfinite(sar) && sar >= 0.0, where, "SAR must be non-negative");
    }
  }
}

void check_thermal(const ChamberConfig& c, Collector& out) {
  const auto& t = c.thermal;
  const std::string where = "thermal";
  out.require(positive(t.copper_resistivity) && positive(t.copper_specific_heat) && positive(t.copper_density),
              where, "copper properties must be positive");
  out.require(positive(t.coolant_sink_conductance), where, "coolant sink conductance must be positive");
  out.require(std::isfinite(t.ambient), where, "ambient temperature must be finite");
  out.require(positive(t.wall_rate_limit), where, "wall rate limit must be positive");
  out.require(positive(t.proximity_factor), where, "proximity factor must be positive");
  for (const auto& w : c.wall_observations) {
    out.require(positive(w.duration), "thermal.wall", "observation duration must be positive");
  }
  const auto& d = c.drive;
  out.require(d.efficiency > 0.0 && d.efficiency <= 1.0, "drive", "efficiency must lie in (0, 1]");
  out.require(positive(d.line_voltage), "drive", "line voltage must be positive");
  for (const auto& [ch, n] : d.interleave) {
    out.require(n == 1 || n == 2, "drive", "interleave submodules must be 1 or 2");
  }
}

}  // namespace

bool ValidationReport::mentions(std::string_view needle) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const auto& v) { return v.message.find(needle) != std::string::npos; });
}

ValidationReport validate_config(const ChamberConfig& config) {
  ValidationReport report;
  Collector out(report);
  check_channels(config, out);
  check_windings(config, out);
  check_chamber(config.chamber, out);
  check_networks(config, out);
  check_samples(config, out);
  check_thermal(config, out);
  return report;
}

}  // namespace fieldforge
