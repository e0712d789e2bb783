#include <cmath>
#include <numbers>

#include "fieldforge/drive.hpp"
#include "fieldforge/errors.hpp"

namespace fieldforge::drive {
namespace {

struct CyclePosition {
  long long cycle;
  double tau;  // [0, 1)
};

CyclePosition locate(const DriveWaveformSpec& spec, double t) {
  const double x = t * spec.frequency + spec.phase / (2.0 * std::numbers::pi);
  const double c = std::floor(x);
  return {static_cast<long long>(c), x - c};
}

// Half-open windows [lo, hi) of the positive and negative pulse within one period.
double window_lo(double duty, int pulse) { return (pulse == 0 ? 0.25 : 0.75) - 0.25 * duty; }
double window_hi(double duty, int pulse) { return (pulse == 0 ? 0.25 : 0.75) + 0.25 * duty; }

}  // namespace

void check_spec(const DriveWaveformSpec& spec) {
  if (!(spec.duty >= 0.0 && spec.duty <= 1.0)) throw InputError("duty must lie in [0, 1]");
  if (spec.interleave_submodules != 1 && spec.interleave_submodules != 2) {
    throw InputError("interleave submodules must be 1 or 2");
  }
  if (spec.duty > 0.0 && !(spec.frequency > 0.0)) throw InputError("drive frequency must be positive");
  if (!std::isfinite(spec.bus_voltage) || !std::isfinite(spec.phase)) throw InputError("drive parameters must be finite");
}

long long pulse_index(const DriveWaveformSpec& spec, double t) {
  if (!(spec.duty > 0.0) || !(spec.frequency > 0.0)) return -1;
  const auto [cycle, tau] = locate(spec, t);
  for (int p = 0; p < 2; ++p) {
    if (tau >= window_lo(spec.duty, p) && tau < window_hi(spec.duty, p)) return 2 * cycle + p;
  }
  return -1;
}

double pwm_voltage(const DriveWaveformSpec& spec, double t) {
  const long long idx = pulse_index(spec, t);
  if (idx < 0) return 0.0;
  return (idx % 2 == 0) ? spec.bus_voltage : -spec.bus_voltage;
}

double fundamental_amplitude(double duty, double bus_voltage) {
  return 4.0 * bus_voltage / std::numbers::pi * std::sin(0.5 * duty * std::numbers::pi);
}

double submodule_voltage(const DriveWaveformSpec& spec, int submodule, double t) {
  check_spec(spec);
  if (submodule < 0 || submodule >= spec.interleave_submodules) throw InputError("no such submodule");
  if (spec.interleave_submodules == 1) return pwm_voltage(spec, t);
  const long long idx = pulse_index(spec, t);
  if (idx < 0) return 0.0;
  const int owner = static_cast<int>(((idx % 2) + 2) % 2);
  return owner == submodule ? pwm_voltage(spec, t) : 0.0;
}

InterleaveSchedule interleave_schedule(const DriveWaveformSpec& spec, double duration) {
  check_spec(spec);
  InterleaveSchedule s;
  s.submodules = spec.interleave_submodules;
  if (!(spec.duty > 0.0) || !(duration > 0.0)) return s;
  const double f = spec.frequency;
  const double shift = spec.phase / (2.0 * std::numbers::pi);
  const auto first = static_cast<long long>(std::floor(-shift)) - 1;
  const auto last = static_cast<long long>(std::ceil(duration * f - shift)) + 1;
  for (long long c = first; c <= last; ++c) {
    for (int p = 0; p < 2; ++p) {
      const double start = std::max(0.0, (static_cast<double>(c) + window_lo(spec.duty, p) - shift) / f);
      const double end = std::min(duration, (static_cast<double>(c) + window_hi(spec.duty, p) - shift) / f);
      if (!(end > start)) continue;
      const long long idx = 2 * c + p;
      const int owner = spec.interleave_submodules == 1 ? 0 : static_cast<int>(((idx % 2) + 2) % 2);
      s.trains[static_cast<std::size_t>(owner)].push_back(
          {start, end, p == 0 ? spec.bus_voltage : -spec.bus_voltage, idx});
    }
  }
  return s;
}

std::size_t transition_count(const std::vector<double>& samples) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i] != samples[i - 1]) ++n;
  }
  return n;
}

double calibrated_resistance(double duty, double bus_voltage, double current) {
  if (!(current > 0.0)) throw InputError("calibration current must be positive");
  if (!(duty > 0.0 && duty <= 1.0)) throw InputError("calibration duty must lie in (0, 1]");
  return fundamental_amplitude(duty, bus_voltage) / current;
}

}  // namespace fieldforge::drive
