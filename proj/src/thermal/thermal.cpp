#include "fieldforge/thermal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fieldforge/errors.hpp"
#include "fieldforge/physics.hpp"
#include "fieldforge/resonance.hpp"

namespace fieldforge::thermal {

double skin_depth(double resistivity, double frequency) {
  if (!(resistivity > 0.0)) throw InputError("resistivity must be positive");
  if (!(frequency > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 * resistivity / (2.0 * std::numbers::pi * frequency * kMu0));
}

double skin_factor(double strand_diameter, double delta) {
  if (!(strand_diameter > 0.0)) throw InputError("strand diameter must be positive");
  if (std::isinf(delta)) return 1.0;
  // The low-frequency expansion only holds for thin strands; beyond that clamp at the radius = delta value.
  const double x = std::min(strand_diameter / (2.0 * delta), 1.0);
  return 1.0 + x * x * x * x / 3.0;
}

double litz_dc_resistance(const LitzWireSpec& wire, double length) {
  if (!(length > 0.0)) throw InputError("conductor length must be positive");
  if (!(wire.copper_area() > 0.0)) throw InputError("wire has no copper cross-section");
  return wire.resistivity * length / wire.copper_area();
}

double litz_resistance(const LitzWireSpec& wire, double length, double frequency) {
  return litz_dc_resistance(wire, length) * skin_factor(wire.strand_diameter, skin_depth(wire.resistivity, frequency));
}

double copper_mass(const WindingGeometry& geometry, const ThermalParams& params) {
  return params.copper_density * geometry.wire.copper_area() * geometry.conductor_length();
}

HeatingResult coil_temperature_rise(const ResonantNetwork& network, const LitzWireSpec& wire,
                                    const WindingGeometry& geometry, double current, double duration,
                                    const ThermalParams& params, const CoilHeatingOptions& options) {
  if (!(duration > 0.0)) throw InputError("heating duration must be positive");
  if (!(options.step > 0.0)) throw InputError("heating step must be positive");
  if (!(params.coolant_sink_conductance >= 0.0)) throw InputError("sink conductance must be non-negative");
  const double length = geometry.conductor_length();
  const double f = resonance::predicted_resonance(network, 0);
  const double r_ac = litz_resistance(wire, length, f) * params.proximity_factor;
  const double mass = params.copper_density * wire.copper_area() * length;
  const double heat_capacity = mass * params.copper_specific_heat;
  if (!(heat_capacity > 0.0)) throw InputError("coil heat capacity must be positive");
  const double power = 0.5 * current * current * r_ac;
  const double g = params.coolant_sink_conductance;
  const double t_cool = params.ambient;
  auto rate = [&](double temp) { return (power - g * (temp - t_cool)) / heat_capacity; };

  const auto nsteps = static_cast<std::size_t>(std::max(1.0, std::ceil(duration / options.step - 1e-9)));
  const double h = duration / static_cast<double>(nsteps);
  HeatingResult out;
  out.subject = geometry.coil_id;
  out.duration = duration;
  double temp = options.initial_temperature.value_or(t_cool);
  const double start = temp;
  out.time.push_back(0.0);
  out.temperature.push_back(temp);
  for (std::size_t s = 1; s <= nsteps; ++s) {
    const double k1 = rate(temp);
    const double k2 = rate(temp + 0.5 * h * k1);
    const double k3 = rate(temp + 0.5 * h * k2);
    const double k4 = rate(temp + h * k3);
    temp += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.time.push_back(static_cast<double>(s) * h);
    out.temperature.push_back(temp);
  }
  out.delta_t = temp - start;
  out.rate = out.delta_t / duration;
  return out;
}

double sar(const NanoparticleSample& sample, double delta_temperature, double delta_time) {
  if (!(delta_time > 0.0)) throw InputError("heating interval must be positive");
  if (!(sample.metal_concentration > 0.0)) throw InputError("metal concentration must be positive");
  return sample.medium_heat_capacity * sample.medium_density / sample.metal_concentration *
         (delta_temperature / delta_time);
}

HeatingResult heating_curve(const NanoparticleSample& sample, int channel, double duration, int curve_points) {
  if (!(duration >= 0.0)) throw InputError("duration must be non-negative");
  const auto it = sample.sar_per_channel.find(channel);
  if (it == sample.sar_per_channel.end()) {
    throw InputError("sample " + sample.name + " has no SAR for channel " + std::to_string(channel));
  }
  HeatingResult out;
  out.subject = sample.name;
  out.rate = it->second * sample.metal_concentration / (sample.medium_heat_capacity * sample.medium_density);
  out.duration = duration;
  out.delta_t = out.rate * duration;
  for (int i = 0; i < curve_points; ++i) {
    const double t = curve_points > 1 ? duration * i / (curve_points - 1) : 0.0;
    out.time.push_back(t);
    out.temperature.push_back(out.rate * t);
  }
  return out;
}

HeatingResult observed_heating(std::string subject, double delta_t, double duration) {
  if (!(duration > 0.0)) throw InputError("observation duration must be positive");
  HeatingResult out;
  out.subject = std::move(subject);
  out.delta_t = delta_t;
  out.duration = duration;
  out.rate = delta_t / duration;
  return out;
}

SafetyVerdict safety_check(const HeatingResult& wall, const ThermalParams& params) {
  SafetyVerdict v;
  v.rate = wall.rate;
  v.limit = params.wall_rate_limit;
  v.margin = v.limit - v.rate;
  v.pass = v.rate < v.limit;
  return v;
}

}  // namespace fieldforge::thermal
