#include <algorithm>
#include <cmath>
#include <numbers>

#include "fieldforge/errors.hpp"
#include "fieldforge/parallel.hpp"
#include "fieldforge/resonance.hpp"

namespace fieldforge::resonance {

double compensation_capacitance(double frequency, double self_inductance, double mutual) {
  if (!(frequency > 0.0) || !(self_inductance > 0.0) || !(mutual >= 0.0)) {
    throw InputError("compensation needs positive frequency and inductance, non-negative mutual");
  }
  const double w = 2.0 * std::numbers::pi * frequency;
  return 1.0 / (w * w * (self_inductance + mutual));
}

double resonance_frequency(double inductance, double capacitance) {
  if (!(inductance > 0.0) || !(capacitance > 0.0)) throw InputError("resonance needs positive L and C");
  return 1.0 / (2.0 * std::numbers::pi * std::sqrt(inductance * capacitance));
}

double predicted_resonance(const ResonantNetwork& network, int half) {
  if (half < 0 || half > 1) throw InputError("half index must be 0 or 1");
  return resonance_frequency(network.equivalent_inductance(half),
                             network.compensation[static_cast<std::size_t>(half)]);
}

double peak_coil_voltage(double frequency, double inductance, double current) {
  return 2.0 * std::numbers::pi * frequency * inductance * current;
}

SweepResult sweep_resonance(const ResonantNetwork& network, const drive::DriveWaveformSpec& drive, double f_lo,
                            double f_hi, int steps, const SweepOptions& options) {
  if (steps < 8) throw InputError("a sweep needs at least 8 steps");
  if (!(f_lo > 0.0) || !(f_hi > f_lo)) throw InputError("sweep range must be positive and increasing");
  if (options.half < 0 || options.half > 1) throw InputError("half index must be 0 or 1");
  if (!(options.steps_per_period >= 200.0)) throw InputError("sweep needs at least 200 steps per period");

  SweepResult out;
  out.step = (f_hi - f_lo) / (steps - 1);
  out.frequency.resize(static_cast<std::size_t>(steps));
  out.amplitude.assign(static_cast<std::size_t>(steps), 0.0);
  for (int i = 0; i < steps; ++i) out.frequency[static_cast<std::size_t>(i)] = f_lo + out.step * i;

  double tau = 0.0;
  for (int h = 0; h < 2; ++h) {
    const double r = network.series_resistance[static_cast<std::size_t>(h)];
    if (r > 0.0) tau = std::max(tau, 2.0 * network.equivalent_inductance(h) / r);
  }

  parallel_for(out.frequency.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      drive::DriveWaveformSpec d = drive;
      d.frequency = out.frequency[i];
      const double period = 1.0 / d.frequency;
      double duration = options.duration;
      if (!(duration > 0.0)) {
        duration = std::max(40.0 * period, 8.0 * tau);
        if (!(tau > 0.0)) duration = 200.0 * period;
      }
      const double dt = period / options.steps_per_period;
      const auto trace = drive::simulate_transient({network}, {d}, 0.0, duration, dt);
      const auto metrics = drive::steady_state(trace, options.tail_cycles);
      out.amplitude[i] = metrics.channels.front().half_peak_current[static_cast<std::size_t>(options.half)];
    }
  });
  const auto best = std::max_element(out.amplitude.begin(), out.amplitude.end());
  out.argmax = out.frequency[static_cast<std::size_t>(best - out.amplitude.begin())];
  return out;
}

}  // namespace fieldforge::resonance
