#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fieldforge/core_model.hpp"

namespace fieldforge::drive {

struct DriveWaveformSpec {
  double frequency = 0.0;    // Hz
  double duty = 0.0;         // fraction of each half-period the output is nonzero
  double bus_voltage = 48.0;  // V
  int interleave_submodules = 1;
  double phase = 0.0;  // rad

  double period() const { return 1.0 / frequency; }
};

/// Throws InputError unless 0 <= duty <= 1, submodules in {1, 2}, and frequency > 0 whenever duty > 0.
void check_spec(const DriveWaveformSpec& spec);

/// Biphasic output: +V for duty*T/2 centered in the first half-period, -V likewise in the second.
double pwm_voltage(const DriveWaveformSpec& spec, double t);

/// Fundamental Fourier amplitude (4 V / pi) sin(duty pi / 2).
double fundamental_amplitude(double duty, double bus_voltage);

/// Zero-based index, in time order, of the pulse active at t (even = positive pulse), or -1 between pulses.
long long pulse_index(const DriveWaveformSpec& spec, double t);

struct Pulse {
  double start = 0.0;  // s
  double end = 0.0;
  double level = 0.0;  // V
  long long index = 0;
};

struct InterleaveSchedule {
  int submodules = 1;
  std::array<std::vector<Pulse>, 2> trains;  // trains[1] unused for one submodule
};

/// Pulses over [0, duration) assigned alternately: submodule a takes the 1st, 3rd, 5th... pulse,
/// submodule b the 2nd, 4th... With one submodule every pulse goes to a.
InterleaveSchedule interleave_schedule(const DriveWaveformSpec& spec, double duration);

/// Output of one submodule (0 = a, 1 = b) at t. The submodule outputs sum to pwm_voltage exactly.
double submodule_voltage(const DriveWaveformSpec& spec, int submodule, double t);

/// Level changes between consecutive samples.
std::size_t transition_count(const std::vector<double>& samples);

/// Series resistance at which `duty` at `bus_voltage` drives `current` amplitude at resonance.
double calibrated_resistance(double duty, double bus_voltage, double current);

struct ChannelTrace {
  int channel = 0;
  double frequency = 0.0;
  bool driven = false;
  std::array<std::vector<double>, 2> current;            // A, per half loop
  std::array<std::vector<double>, 2> coil_voltage;       // V across the half coil
  std::array<std::vector<double>, 2> capacitor_voltage;  // V
  std::vector<double> drive_voltage;                     // V
};

struct SimTrace {
  double step = 0.0;  // integration step, s
  std::size_t stride = 1;
  std::vector<double> time;
  std::vector<ChannelTrace> channels;

  double sample_interval() const { return step * static_cast<double>(stride); }
  const ChannelTrace* find(int channel) const;
};

struct TransientOptions {
  std::size_t record_stride = 1;
  /// Initial loop currents and capacitor voltages, indexed [network][half].
  std::vector<std::array<double, 2>> initial_current;
  std::vector<std::array<double, 2>> initial_capacitor_voltage;
};

/// Default step: 1/400 of the fastest drive period.
double default_step(const std::vector<DriveWaveformSpec>& drives);

/// Fixed-step RK4 on the series loops (L + M, C, R per half), one drive per network. Loops of
/// different channels couple through M_x = k sqrt(L_a L_b). Requires step <= T/200 for every
/// driven channel. Throws SolverError with the failure time if the state stops being finite.
SimTrace simulate_transient(const std::vector<ResonantNetwork>& networks, const std::vector<DriveWaveformSpec>& drives,
                            double cross_coupling, double duration, double step, const TransientOptions& options = {});

struct ChannelMetrics {
  int channel = 0;
  double peak_current = 0.0;  // A, larger of the two halves
  std::array<double, 2> half_peak_current{};
  std::array<double, 2> peak_coil_voltage{};
  int settle_cycles = 0;
};

struct SteadyStateMetrics {
  std::vector<ChannelMetrics> channels;
  double crosstalk_ratio = 0.0;  // idle peak / active peak when exactly one channel is driven
  double window = 0.0;           // s, tail length examined

  const ChannelMetrics& at(int channel) const;
};

/// Peaks over the last `tail_cycles` periods of the slowest driven channel (the whole trace when
/// nothing is driven). Throws InputError if the trace is shorter than the window.
SteadyStateMetrics steady_state(const SimTrace& trace, int tail_cycles);

/// Largest |x| in [begin, end), refined by a parabola through the neighbouring samples.
double interpolated_peak(const std::vector<double>& x, std::size_t begin, std::size_t end);

struct PowerEstimate {
  double dissipated = 0.0;    // W
  double apparent = 0.0;      // VA
  double line_current = 0.0;  // A rms
};

/// P = sum over halves of I^2 R / 2, S = P / efficiency, I_line = S / (sqrt(3) V_line).
PowerEstimate estimate_input_power(const ChannelMetrics& metrics, const ResonantNetwork& network,
                                   double line_voltage, double efficiency);

double three_phase_line_current(double apparent_power, double line_voltage);
double three_phase_apparent_power(double line_current, double line_voltage);

/// CSV t_s,I1_A,I2_A,V1_V,V2_V,Vdrive1_V,Vdrive2_V: first-half current and coil voltage per channel.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

}  // namespace fieldforge::drive
