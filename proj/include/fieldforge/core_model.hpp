#pragma once

// Declarative description of the dual-channel chamber. Everything is SI:
// tesla, henry, farad, ohm, meter, second, kelvin differences in degC.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fieldforge/vec3.hpp"

namespace fieldforge {

struct ChannelSpec {
  int id = 0;
  double nominal_frequency = 0.0;  // Hz
  double target_field = 0.0;       // T, peak
  double max_current = 0.0;        // A, peak
  double max_duty = 0.0;           // fraction of each half-period

  double omega() const;
  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

/// How current spreads over the bundle cross-section. Selects the geometric mean
/// radius used to regularize the self-inductance integral.
enum class CurrentDistribution {
  uniform,  // GMR = e^{-1/4} r
  surface,  // thin tube, GMR = r
};

struct LitzWireSpec {
  double strand_diameter = 0.0;  // m
  int strand_count = 1;
  int parallel_bundles = 1;
  double resistivity = 1.72e-8;  // ohm m
  double packing_factor = 0.5;   // copper fraction of the bundle cross-section
  CurrentDistribution distribution = CurrentDistribution::uniform;

  double strand_area() const;
  double copper_area() const;
  /// Radius of a round bundle holding all strands at packing_factor.
  double bundle_radius() const;
  double geometric_mean_radius() const;
  friend bool operator==(const LitzWireSpec&, const LitzWireSpec&) = default;
};

struct Segment {
  Vec3 start;
  Vec3 end;

  Vec3 delta() const { return end - start; }
  double length() const { return norm(end - start); }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Rectangular helix: `turns` closed rectangles stacked along `axis` at `pitch`,
/// joined by axial risers and closed by a return lead pair displaced by `lead_offset`.
struct RectHelixLayout {
  int axis = 0;  // 0 = x, 1 = y, 2 = z
  Vec3 center;
  double width = 0.0;   // side along the first transverse axis
  double height = 0.0;  // side along the second transverse axis
  int turns = 0;
  double pitch = 0.0;
  double lead_offset = 0.0;
  friend bool operator==(const RectHelixLayout&, const RectHelixLayout&) = default;
};

struct WindingGeometry {
  std::string coil_id;
  int channel = 0;
  std::vector<Segment> segments;  // traces every turn; each segment carries the full coil current
  int turns = 1;
  LitzWireSpec wire;
  std::optional<RectHelixLayout> layout;  // present when built from a layout

  double conductor_length() const;
  double wire_radius() const { return wire.bundle_radius(); }
  friend bool operator==(const WindingGeometry&, const WindingGeometry&) = default;
};

struct ChamberSpec {
  Vec3 inner_dimensions;  // m, full side lengths, centered on the origin
  bool ferrite_enabled = true;
  double ferrite_gap = 0.0;        // m, clearance from the outermost winding to the ferrite wall
  double ferrite_calibration = 1.0;  // multiplies the total field when ferrite is enabled
  std::array<int, 3> grid_resolution{21, 21, 13};
  friend bool operator==(const ChamberSpec&, const ChamberSpec&) = default;
};

/// Series-compensated split coil of one channel.
struct ResonantNetwork {
  int channel = 0;
  std::array<double, 2> self_inductance{};  // H, per half
  double mutual = 0.0;                       // H, between halves
  std::array<double, 2> series_resistance{};  // ohm, per half loop
  std::array<double, 2> compensation{};       // F, per half
  double dc_bus_voltage = 48.0;                // V

  double equivalent_inductance(int half) const { return self_inductance.at(half) + mutual; }
  friend bool operator==(const ResonantNetwork&, const ResonantNetwork&) = default;
};

/// Capacitor parts making up one parallel group; two identical groups are placed in series.
struct BankPart {
  double value = 0.0;  // F
  int count = 0;
  friend bool operator==(const BankPart&, const BankPart&) = default;
};

/// Where a network's series resistance comes from.
enum class ResistanceModel {
  explicit_values,  // as written in the config
  calibrated,       // chosen so max_duty at the bus voltage drives max_current at resonance
  litz_plus_lump,   // litz AC resistance of the winding plus esr_lump
};

/// Per-channel design inputs that do not belong to the circuit itself.
struct NetworkDesign {
  int channel = 0;
  std::array<std::vector<double>, 2> capacitor_stock;   // F, per half
  std::array<std::vector<BankPart>, 2> implemented_bank;  // per half, may be empty
  int max_parts_per_group = 40;
  std::array<double, 2> esr_lump{};  // ohm, capacitor ESR + inverter on-resistance
  ResistanceModel resistance_model = ResistanceModel::explicit_values;
  friend bool operator==(const NetworkDesign&, const NetworkDesign&) = default;
};

struct NanoparticleSample {
  std::string name;
  double metal_concentration = 0.0;   // kg/m^3 (== mg/mL)
  double medium_heat_capacity = 4180.0;  // J/(kg K)
  double medium_density = 1000.0;        // kg/m^3
  std::map<int, double> sar_per_channel;  // W per kg of metal
  friend bool operator==(const NanoparticleSample&, const NanoparticleSample&) = default;
};

struct ThermalParams {
  double copper_resistivity = 1.72e-8;
  double copper_specific_heat = 385.0;
  double copper_density = 8960.0;
  double coolant_sink_conductance = 30.0;  // W/K per coil half
  double ambient = 29.3;                   // degC, coolant and initial coil temperature
  double wall_rate_limit = 0.35;           // degC/s
  double proximity_factor = 1.5;           // multiplier on the skin-corrected resistance
  friend bool operator==(const ThermalParams&, const ThermalParams&) = default;
};

/// Observed enclosure inner-wall heating used by the safety check.
struct WallObservation {
  int channel = 0;
  double delta_t = 0.0;   // degC
  double duration = 0.0;  // s
  friend bool operator==(const WallObservation&, const WallObservation&) = default;
};

struct DriveSettings {
  double phase = 0.0;           // rad, channel 2 relative to channel 1
  std::map<int, int> interleave;  // channel -> submodule count
  double line_voltage = 208.0;  // V, three-phase line-to-line
  double efficiency = 0.85;
  friend bool operator==(const DriveSettings&, const DriveSettings&) = default;
};

struct ChamberConfig {
  std::vector<ChannelSpec> channels;
  std::vector<WindingGeometry> windings;
  ChamberSpec chamber;
  std::vector<ResonantNetwork> networks;
  std::vector<NetworkDesign> designs;
  std::vector<NanoparticleSample> samples;
  ThermalParams thermal;
  std::vector<WallObservation> wall_observations;
  DriveSettings drive;

  const ChannelSpec& channel(int id) const;
  const ResonantNetwork& network(int channel_id) const;
  const NetworkDesign* design(int channel_id) const;
  const NanoparticleSample& sample(const std::string& name) const;
  std::vector<const WindingGeometry*> windings_of(int channel_id) const;
  friend bool operator==(const ChamberConfig&, const ChamberConfig&) = default;
};

}  // namespace fieldforge
