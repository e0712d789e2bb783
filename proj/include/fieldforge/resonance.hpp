#pragma once

#include <string>
#include <vector>

#include "fieldforge/core_model.hpp"
#include "fieldforge/drive.hpp"

namespace fieldforge::resonance {

/// Series compensation C = 1 / (omega^2 (L + M)), omega = 2 pi f. Throws InputError for non-positive input.
double compensation_capacitance(double frequency, double self_inductance, double mutual);

/// 1 / (2 pi sqrt(L C)).
double resonance_frequency(double inductance, double capacitance);

/// Resonance of one half loop: 1 / (2 pi sqrt((L_half + M) C_half)).
double predicted_resonance(const ResonantNetwork& network, int half);

/// Peak voltage across a coil half, omega (L + M) I.
double peak_coil_voltage(double frequency, double inductance, double current);

/// One parallel group of parts; the bank is two identical groups in series.
struct CapacitorBank {
  std::vector<BankPart> group;  // in stock order, zero counts omitted

  double group_capacitance() const;
  double effective() const { return 0.5 * group_capacitance(); }
  int part_count() const;
  /// e.g. "(3 x 470 nF + 3 x 1000 nF) / 2".
  std::string describe() const;
};

CapacitorBank bank_from_parts(std::vector<BankPart> parts);

/// Exact search over part counts (at most max_parts_per_group per group) for the bank closest to
/// target; ties go to fewer parts, then to the lexicographically smallest count vector in stock order.
/// Throws InputError for empty stock or non-positive values, SolverError if nothing lands within 10%.
CapacitorBank compose_bank(double target, const std::vector<double>& stock, int max_parts_per_group = 40);

struct SweepOptions {
  int half = 0;                  // loop whose current amplitude is maximized
  double steps_per_period = 200;  // integration resolution at each sweep frequency
  double duration = 0.0;         // s; 0 picks max(40 periods, 8 loop time constants)
  int tail_cycles = 10;
};

struct SweepResult {
  std::vector<double> frequency;  // Hz
  std::vector<double> amplitude;  // A
  double argmax = 0.0;            // Hz
  double step = 0.0;              // Hz between sweep points
};

/// Simulates the network at `steps` evenly spaced frequencies in [f_lo, f_hi] with the given drive
/// (frequency overridden) and returns the frequency of largest steady-state current.
SweepResult sweep_resonance(const ResonantNetwork& network, const drive::DriveWaveformSpec& drive, double f_lo,
                            double f_hi, int steps, const SweepOptions& options = {});

}  // namespace fieldforge::resonance
