#include <algorithm>
#include <cmath>

#include "fieldforge/drive.hpp"
#include "fieldforge/errors.hpp"

namespace fieldforge::drive {
namespace {

constexpr double kSettleTolerance = 0.02;

int settle_cycles(const ChannelTrace& c, const std::vector<double>& time) {
  if (!c.driven || time.size() < 2) return 0;
  const double f = c.frequency;
  const auto ncycles = static_cast<std::size_t>(std::floor(time.back() * f));
  if (ncycles < 2) return 0;
  std::vector<double> peaks(ncycles, 0.0);
  for (std::size_t i = 0; i < time.size(); ++i) {
    const auto cyc = static_cast<std::size_t>(std::floor(time[i] * f));
    if (cyc >= ncycles) break;
    const double a = std::max(std::abs(c.current[0][i]), std::abs(c.current[1][i]));
    peaks[cyc] = std::max(peaks[cyc], a);
  }
  const double final_peak = peaks.back();
  if (!(final_peak > 0.0)) return 0;
  std::size_t settle = ncycles;
  for (std::size_t k = ncycles; k-- > 0;) {
    if (std::abs(peaks[k] - final_peak) > kSettleTolerance * final_peak) break;
    settle = k;
  }
  return static_cast<int>(settle);
}

}  // namespace

const ChannelMetrics& SteadyStateMetrics::at(int channel) const {
  for (const auto& c : channels) {
    if (c.channel == channel) return c;
  }
  throw InputError("no metrics for channel " + std::to_string(channel));
}

double interpolated_peak(const std::vector<double>& x, std::size_t begin, std::size_t end) {
  if (begin >= end || end > x.size()) throw InputError("empty peak window");
  std::size_t best = begin;
  for (std::size_t i = begin; i < end; ++i) {
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  }
  const double y0 = std::abs(x[best]);
  if (best == begin || best + 1 >= end) return y0;
  const double s = x[best] < 0.0 ? -1.0 : 1.0;
  const double ym = s * x[best - 1];
  const double yp = s * x[best + 1];
  const double curv = ym - 2.0 * y0 + yp;
  if (!(curv < 0.0)) return y0;
  return y0 - (ym - yp) * (ym - yp) / (8.0 * curv);
}

SteadyStateMetrics steady_state(const SimTrace& trace, int tail_cycles) {
  if (tail_cycles < 1) throw InputError("tail_cycles must be at least 1");
  if (trace.time.size() < 3) throw InputError("trace too short");
  double fmin = 0.0;
  int driven = 0;
  for (const auto& c : trace.channels) {
    if (!c.driven) continue;
    ++driven;
    fmin = fmin > 0.0 ? std::min(fmin, c.frequency) : c.frequency;
  }
  const double t_end = trace.time.back();
  SteadyStateMetrics m;
  m.window = driven > 0 ? tail_cycles / fmin : t_end;
  if (m.window > t_end * (1.0 + 1e-12)) throw InputError("trace shorter than the steady-state window");
  const double t_start = t_end - m.window;
  const auto begin = static_cast<std::size_t>(
      std::lower_bound(trace.time.begin(), trace.time.end(), t_start - 1e-3 * trace.sample_interval()) -
      trace.time.begin());
  const std::size_t end = trace.time.size();

  for (const auto& c : trace.channels) {
    ChannelMetrics cm;
    cm.channel = c.channel;
    for (std::size_t h = 0; h < 2; ++h) {
      cm.half_peak_current[h] = interpolated_peak(c.current[h], begin, end);
      cm.peak_coil_voltage[h] = interpolated_peak(c.coil_voltage[h], begin, end);
    }
    cm.peak_current = std::max(cm.half_peak_current[0], cm.half_peak_current[1]);
    cm.settle_cycles = settle_cycles(c, trace.time);
    m.channels.push_back(cm);
  }
  if (driven == 1 && trace.channels.size() >= 2) {
    double active = 0.0;
    double idle = 0.0;
    for (std::size_t i = 0; i < trace.channels.size(); ++i) {
      const double p = m.channels[i].peak_current;
      if (trace.channels[i].driven) {
        active = p;
      } else {
        idle = std::max(idle, p);
      }
    }
    m.crosstalk_ratio = active > 0.0 ? idle / active : 0.0;
  }
  return m;
}

double three_phase_line_current(double apparent_power, double line_voltage) {
  if (!(line_voltage > 0.0)) throw InputError("line voltage must be positive");
  return apparent_power / (std::sqrt(3.0) * line_voltage);
}

double three_phase_apparent_power(double line_current, double line_voltage) {
  if (!(line_voltage > 0.0)) throw InputError("line voltage must be positive");
  return std::sqrt(3.0) * line_voltage * line_current;
}

PowerEstimate estimate_input_power(const ChannelMetrics& metrics, const ResonantNetwork& network,
                                   double line_voltage, double efficiency) {
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw InputError("efficiency must lie in (0, 1]");
  PowerEstimate p;
  for (std::size_t h = 0; h < 2; ++h) {
    const double i = metrics.half_peak_current[h];
    p.dissipated += 0.5 * i * i * network.series_resistance[h];
  }
  p.apparent = p.dissipated / efficiency;
  p.line_current = three_phase_line_current(p.apparent, line_voltage);
  return p;
}

}  // namespace fieldforge::drive
