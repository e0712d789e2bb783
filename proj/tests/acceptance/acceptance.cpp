// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "fieldforge/app.hpp"
#include "fieldforge/config_io.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/physics.hpp"
#include "fieldforge/resonance.hpp"
#include "fieldforge/thermal.hpp"

using namespace fieldforge;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0, double e = 0, double g = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d, e, g);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

WindingGeometry circle(double r, double z0, int sides, double wire_radius) {
  WindingGeometry w;
  w.coil_id = "loop";
  w.wire.strand_diameter = 2.0 * wire_radius;
  w.wire.packing_factor = 1.0;
  w.wire.distribution = CurrentDistribution::surface;
  for (int i = 0; i < sides; ++i) {
    const double a0 = 2.0 * std::numbers::pi * i / sides;
    const double a1 = 2.0 * std::numbers::pi * (i + 1) / sides;
    w.segments.push_back({{r * std::cos(a0), r * std::sin(a0), z0}, {r * std::cos(a1), r * std::sin(a1), z0}});
  }
  return w;
}

double coaxial_mutual(double r1, double r2, double d) {
  const double m = 4.0 * r1 * r2 / ((r1 + r2) * (r1 + r2) + d * d);
  double a = 1.0, b = std::sqrt(1.0 - m), csum = 0.5 * m, pow2 = 0.5;
  while (std::abs(a - b) > 1e-16 * a) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    csum += pow2 * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  const double E = K * (1.0 - csum);
  const double k = std::sqrt(m);
  return kMu0 * std::sqrt(r1 * r2) * ((2.0 / k - k) * K - 2.0 / k * E);
}

// Free LC oscillation: max relative energy error and end-point current error.
std::array<double, 2> free_lc(int steps_per_period, int periods) {
  ResonantNetwork n;
  n.self_inductance = {4.4e-6, 4.4e-6};
  n.mutual = 0.7e-6;
  n.compensation = {2.04e-6, 2.04e-6};
  const double L = 5.1e-6, C = 2.04e-6;
  const double w = 1.0 / std::sqrt(L * C);
  const double T = 2.0 * std::numbers::pi / w;
  drive::TransientOptions opt;
  opt.initial_current = {{1.0, 0.0}};
  opt.initial_capacitor_voltage = {{0.0, 0.0}};
  const auto tr = drive::simulate_transient({n}, {drive::DriveWaveformSpec{}}, 0.0, periods * T, T / steps_per_period, opt);
  const auto& ch = tr.channels[0];
  double drift = 0.0;
  for (std::size_t i = 0; i < tr.time.size(); ++i) {
    const double e = 0.5 * L * ch.current[0][i] * ch.current[0][i] + 0.5 * C * ch.capacitor_voltage[0][i] * ch.capacitor_voltage[0][i];
    drift = std::max(drift, std::abs(e - 0.5 * L) / (0.5 * L));
  }
  return {drift, std::abs(ch.current[0].back() - std::cos(w * tr.time.back()))};
}

}  // namespace

int main() {
  const ChamberConfig cfg = load_config(FIELDFORGE_TEST_CONFIG);

  {  // 1. compensation capacitance
    const double f[4] = {50e3, 50e3, 550e3, 550e3};
    const double L[4] = {4.4e-6, 4.0e-6, 1.4e-6, 1.5e-6};
    const double M[4] = {0.7e-6, 0.7e-6, 0.4e-6, 0.4e-6};
    const double derived[4] = {1987, 2156, 46.5, 44.1};
    const double stated[4] = {2000, 2200, 47, 44};
    bool ok = true;
    double c[4];
    for (int i = 0; i < 4; ++i) {
      c[i] = resonance::compensation_capacitance(f[i], L[i], M[i]) * 1e9;
      ok = ok && rel(c[i], derived[i]) <= 1e-3;
      ok = ok && rel(c[i], stated[i]) <= 0.025;
    }
    report(1, ok, fmt("C = %.1f, %.1f, %.2f, %.2f nF", c[0], c[1], c[2], c[3]));
  }

  {  // 2. bank synthesis
    struct Case {
      double target;
      std::vector<double> stock;
      std::vector<int> counts;
    };
    const Case cases[4] = {{2040e-9, {680e-9}, {6}},
                           {2205e-9, {470e-9, 1000e-9}, {3, 3}},
                           {46.0e-9, {6.8e-9, 4.7e-9}, {8, 8}},
                           {43.9e-9, {6.8e-9, 4.7e-9}, {6, 10}}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
      const auto bank = resonance::compose_bank(c.target, c.stock);
      const bool exact = std::llround(bank.effective() * 1e15) == std::llround(c.target * 1e15);
      bool same_parts = bank.group.size() == c.counts.size();
      for (std::size_t i = 0; same_parts && i < c.counts.size(); ++i) {
        same_parts = bank.group[i].count == c.counts[i] && bank.group[i].value == c.stock[i];
      }
      ok = ok && exact && (same_parts || rel(bank.effective(), c.target) < 0.01);
      detail += (detail.empty() ? "" : ", ") + bank.describe();
    }
    report(2, ok, detail);
  }

  {  // 3. resonance
    const double f1 = resonance::predicted_resonance(cfg.network(1), 0);
    const double f2 = resonance::predicted_resonance(cfg.network(2), 0);
    const auto& ch1 = cfg.channel(1);
    const auto& ch2 = cfg.channel(2);
    const auto s1 = resonance::sweep_resonance(cfg.network(1), app::channel_drive(cfg, 1, ch1.max_duty),
                                               0.9 * ch1.nominal_frequency, 1.1 * ch1.nominal_frequency, 41);
    const auto s2 = resonance::sweep_resonance(cfg.network(2), app::channel_drive(cfg, 2, ch2.max_duty),
                                               0.9 * ch2.nominal_frequency, 1.1 * ch2.nominal_frequency, 41);
    const bool ok = std::abs(f1 - 49.34e3) < 5.0 && std::abs(f2 - 553.1e3) < 50.0 && rel(f1, 48.9e3) < 0.03 &&
                    rel(f2, 543e3) < 0.03 && std::abs(s1.argmax - f1) <= s1.step && std::abs(s2.argmax - f2) <= s2.step;
    report(3, ok,
           fmt("predicted %.2f / %.1f kHz, sweep argmax %.2f / %.2f kHz (steps %.2f / %.2f kHz)", f1 * 1e-3,
               f2 * 1e-3, s1.argmax * 1e-3, s2.argmax * 1e-3, s1.step * 1e-3, s2.step * 1e-3));
  }

  {  // 4. peak coil voltage at the measured resonance and rated current
    const auto& n1 = cfg.network(1);
    const auto& n2 = cfg.network(2);
    const double v1 = resonance::peak_coil_voltage(48.9e3, n1.equivalent_inductance(0), cfg.channel(1).max_current);
    const double v2 = resonance::peak_coil_voltage(543e3, n2.equivalent_inductance(0), cfg.channel(2).max_current);
    const bool ok = std::abs(v1 - 1570.0) < 5.0 && std::abs(v2 - 1600.0) < 5.0 && rel(v1, 1500.0) <= 0.10 &&
                    rel(v2, 1800.0) <= 0.15;
    report(4, ok, fmt("%.3f kV (vs 1.5 kV), %.3f kV (vs 1.8 kV)", v1 * 1e-3, v2 * 1e-3));
  }

  {  // 5. crosstalk
    app::SimulateOptions a;
    a.channel = "1";
    const auto r1 = app::run_simulation(cfg, a);
    a.channel = "2";
    const auto r2 = app::run_simulation(cfg, a);
    const bool ok = r1.metrics.crosstalk_ratio < 0.01 && r2.metrics.crosstalk_ratio < 0.01;
    report(5, ok,
           fmt("k = %.5f, idle/active %.4f %% (ch1 driven), %.4f %% (ch2 driven)", r1.coupling,
               r1.metrics.crosstalk_ratio * 100, r2.metrics.crosstalk_ratio * 100));
  }

  {  // 6. field magnitude
    const auto ferrite = magnetics::FerriteModel::for_config(cfg);
    const double b1 = norm(magnetics::field_at_point(cfg.windings_of(1), {1000.0, 1000.0}, {0, 0, 0}, ferrite));
    const double b2 = norm(magnetics::field_at_point(cfg.windings_of(2), {260.0, 260.0}, {0, 0, 0}, ferrite));
    const auto u1 = magnetics::uniformity(magnetics::compute_field_map(cfg, 1, 1000.0));
    const auto u2 = magnetics::uniformity(magnetics::compute_field_map(cfg, 2, 260.0));
    const auto flat = magnetics::uniformity(std::vector<double>(1000, 0.0123));
    const bool ok = b1 >= 0.062 && b1 <= 0.114 && b2 >= 0.009 && b2 <= 0.017 && flat.band_fraction == 1.0;
    report(6, ok,
           fmt("center %.2f mT (ch1, 1 kA), %.2f mT (ch2, 260 A); band fraction %.3f / %.3f; constant field %.3f",
               b1 * 1e3, b2 * 1e3, u1.band_fraction, u2.band_fraction, flat.band_fraction));
  }

  {  // 7. numerical oracles
    const auto loop = circle(0.05, 0.0, 720, 1e-3);
    const double bc = magnetics::field_at_point({&loop}, {1.0}, {0, 0, 0}).z;
    const double e_center = rel(bc, kMu0 / (2.0 * 0.05));
    const auto a = circle(0.05, 0.0, 256, 1e-3);
    const auto b = circle(0.03, 0.04, 256, 1e-3);
    const double e_mutual = rel(magnetics::mutual_inductance(a, b), coaxial_mutual(0.05, 0.03, 0.04));
    const auto thin = circle(0.1, 0.0, 256, 2e-3);
    const double e_self = rel(magnetics::self_inductance(thin), kMu0 * 0.1 * (std::log(8.0 * 0.1 / 2e-3) - 2.0));
    const auto long_run = free_lc(200, 100);
    const auto coarse = free_lc(200, 20);
    const auto fine = free_lc(400, 20);
    const double order = coarse[1] / fine[1];
    const bool ok = e_center < 1e-3 && e_mutual < 5e-3 && e_self < 0.02 && long_run[0] < 1e-3 && order >= 8.0;
    report(7, ok,
           fmt("loop center %.1e, coaxial mutual %.1e, thin-loop self %.1e, LC energy drift %.1e, step-halving "
               "ratio %.1f",
               e_center, e_mutual, e_self, long_run[0], order));
  }

  {  // 8. SAR and selectivity
    const auto& co = cfg.sample("Co-IONP");
    const auto& fe = cfg.sample("IONP");
    const double s_co = thermal::sar(co, 3.5, 1.0);
    const double s_fe = thermal::sar(fe, 1.5, 1.0);
    const double f_co = 4180.0 * 1000.0 / 20.68 * 3.5;
    const double f_fe = 4180.0 * 1000.0 / 21.46 * 1.5;
    const double ch1_contrast = thermal::heating_curve(co, 1, 1.0).rate / thermal::heating_curve(fe, 1, 1.0).rate;
    const double ch2_contrast = thermal::heating_curve(fe, 2, 1.0).rate / thermal::heating_curve(co, 2, 1.0).rate;
    const bool ok = rel(s_co, f_co) < 1e-9 && rel(s_fe, f_fe) < 1e-9 && std::abs(s_co * 1e-3 - 707.4) < 0.05 &&
                    std::abs(s_fe * 1e-3 - 292.2) < 0.05 && ch1_contrast > 10.0 && ch2_contrast > 10.0;
    report(8, ok,
           fmt("SAR %.2f / %.2f W/g; channel contrast %.1fx (ch1) %.1fx (ch2)", s_co * 1e-3, s_fe * 1e-3,
               ch1_contrast, ch2_contrast));
  }

  {  // 9. thermal
    const auto* coil = cfg.windings_of(1).front();
    const auto rise = thermal::coil_temperature_rise(cfg.network(1), coil->wire, *coil, 1000.0, 2.0, cfg.thermal);
    const auto pass = thermal::safety_check(thermal::observed_heating("wall", 0.2, 1.0), cfg.thermal);
    const auto fail = thermal::safety_check(thermal::observed_heating("wall", 0.35, 1.0), cfg.thermal);
    const bool ok = rise.delta_t >= 9.6 / 2.0 && rise.delta_t <= 9.6 * 2.0 && pass.pass && !fail.pass;
    report(9, ok,
           fmt("coil dT %.2f degC over 2 s (vs 9.6); wall 0.2 degC/s margin %.2f -> ", rise.delta_t, pass.margin) +
               (pass.pass ? "pass" : "fail") + ", 0.35 degC/s -> " + (fail.pass ? "pass" : "fail"));
  }

  {  // 10. input power
    const double s = drive::three_phase_apparent_power(25.0, 208.0);
    report(10, rel(s, 9010.0) <= 0.01, fmt("25 A rms at 208 V -> %.3f kVA", s * 1e-3));
  }

  return failures == 0 ? 0 : 1;
}
