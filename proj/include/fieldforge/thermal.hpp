#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fieldforge/core_model.hpp"

namespace fieldforge::thermal {

/// sqrt(2 rho / (omega mu0)); infinite at f = 0.
double skin_depth(double resistivity, double frequency);

/// 1 + (d / 2 delta)^4 / 3 for strand diameter d, valid while the strand radius stays below delta.
double skin_factor(double strand_diameter, double skin_depth);

/// rho L / (strand area x strand count x parallel bundles).
double litz_dc_resistance(const LitzWireSpec& wire, double length);

/// DC resistance times the skin factor at `frequency`. Throws InputError for non-positive length.
double litz_resistance(const LitzWireSpec& wire, double length, double frequency);

struct HeatingResult {
  std::string subject;  // coil id or sample name
  double rate = 0.0;    // degC/s, average over the run
  double delta_t = 0.0;  // degC
  double duration = 0.0;  // s
  std::vector<double> time;         // s, curve samples (may be empty)
  std::vector<double> temperature;  // degC
};

struct CoilHeatingOptions {
  double step = 1e-3;                         // s
  std::optional<double> initial_temperature;  // degC, defaults to the coolant temperature
};

/// Lumped coil heating dT/dt = (I^2 R_ac / 2 - G (T - T_coolant)) / (m c), fixed-step RK4.
/// R_ac is the litz resistance of the winding at the network's first-half resonance times the
/// proximity factor; m is the copper mass of the winding.
HeatingResult coil_temperature_rise(const ResonantNetwork& network, const LitzWireSpec& wire,
                                    const WindingGeometry& geometry, double current, double duration,
                                    const ThermalParams& params, const CoilHeatingOptions& options = {});

/// Copper mass (kg) of a winding: density x copper cross-section x conductor length.
double copper_mass(const WindingGeometry& geometry, const ThermalParams& params);

/// SAR = C rho_medium / c_metal x dT/dt, in W per kg of metal. Throws InputError for delta_time <= 0.
double sar(const NanoparticleSample& sample, double delta_temperature, double delta_time);

/// Constant-rate heating of a sample in a channel from its tabulated SAR. Throws InputError when
/// the sample has no entry for the channel or the duration is negative.
HeatingResult heating_curve(const NanoparticleSample& sample, int channel, double duration, int curve_points = 0);

/// Heating result from an observed temperature change over a duration.
HeatingResult observed_heating(std::string subject, double delta_t, double duration);

struct SafetyVerdict {
  bool pass = false;
  double rate = 0.0;
  double limit = 0.0;
  double margin = 0.0;  // limit - rate
};

/// Pass iff rate < wall_rate_limit.
SafetyVerdict safety_check(const HeatingResult& wall, const ThermalParams& params);

}  // namespace fieldforge::thermal
