#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fieldforge/drive.hpp"
#include "fieldforge/errors.hpp"

using namespace fieldforge;
using namespace fieldforge::drive;

namespace {

DriveWaveformSpec spec(double f, double duty, int subs = 1) {
  DriveWaveformSpec s;
  s.frequency = f;
  s.duty = duty;
  s.interleave_submodules = subs;
  return s;
}

// Sine and cosine Fourier coefficients of the first harmonic by midpoint sampling of one period.
std::array<double, 2> fundamental(const DriveWaveformSpec& s) {
  const int n = 400000;
  const double T = s.period();
  double a = 0.0, b = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * T / n;
    const double v = pwm_voltage(s, t);
    a += v * std::sin(2.0 * std::numbers::pi * t / T);
    b += v * std::cos(2.0 * std::numbers::pi * t / T);
  }
  return {2.0 * a / n, 2.0 * b / n};
}

}  // namespace

TEST_CASE("biphasic levels and timing") {
  const auto s = spec(50e3, 0.1);
  const double T = s.period();
  CHECK(pwm_voltage(s, 0.25 * T) == 48.0);
  CHECK(pwm_voltage(s, 0.75 * T) == -48.0);
  CHECK(pwm_voltage(s, 0.0) == 0.0);
  CHECK(pwm_voltage(s, 0.5 * T) == 0.0);
  CHECK(pwm_voltage(s, (0.25 + 0.024) * T) == 48.0);
  CHECK(pwm_voltage(s, (0.25 + 0.026) * T) == 0.0);
  CHECK(pwm_voltage(spec(50e3, 0.0), 0.25 * T) == 0.0);
  CHECK(pwm_voltage(spec(50e3, 1.0), 0.49 * T) == 48.0);
}

TEST_CASE("fundamental amplitude matches numerical Fourier analysis") {
  for (double d : {0.05, 0.1, 0.4, 0.75, 1.0}) {
    const auto c = fundamental(spec(10e3, d));
    CHECK(c[0] == doctest::Approx(fundamental_amplitude(d, 48.0)).epsilon(1e-4));
    CHECK(std::abs(c[1]) < 1e-4 * 48.0);
  }
  CHECK(fundamental_amplitude(1.0, 48.0) == doctest::Approx(4.0 * 48.0 / std::numbers::pi));
  CHECK(fundamental_amplitude(0.0, 48.0) == 0.0);
}

TEST_CASE("fundamental is monotone in duty") {
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double a = fundamental_amplitude(i / 100.0, 48.0);
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("phase shifts the waveform") {
  auto s = spec(1e3, 0.3);
  auto shifted = s;
  shifted.phase = std::numbers::pi / 2.0;  // quarter period earlier
  for (double t : {0.1e-3, 0.2e-3, 0.37e-3, 0.81e-3}) {
    CHECK(pwm_voltage(shifted, t) == pwm_voltage(s, t + 0.25e-3));
  }
}

TEST_CASE("interleaved submodules sum to the full waveform") {
  const auto s = spec(550e3, 0.4, 2);
  const int n = 20000;
  std::vector<double> a, b;
  for (int i = 0; i < n; ++i) {
    const double t = i * 10.0 * s.period() / n;
    const double va = submodule_voltage(s, 0, t);
    const double vb = submodule_voltage(s, 1, t);
    CHECK(va + vb == pwm_voltage(s, t));
    CHECK((va == 0.0 || vb == 0.0));
    a.push_back(va);
    b.push_back(vb);
  }
  // Each submodule carries every other pulse: half the transitions of the full waveform.
  std::vector<double> full;
  for (int i = 0; i < n; ++i) full.push_back(a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]);
  CHECK(transition_count(full) == 40);
  CHECK(transition_count(a) == 20);
  CHECK(transition_count(b) == 20);
  CHECK_THROWS_AS(submodule_voltage(spec(1e3, 0.1, 1), 1, 0.0), InputError);
}

TEST_CASE("interleave schedule alternates pulses") {
  const auto s = spec(1e3, 0.2, 2);
  const auto sched = interleave_schedule(s, 3e-3);
  CHECK(sched.trains[0].size() == 3);
  CHECK(sched.trains[1].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sched.trains[0][i].index == static_cast<long long>(2 * i));
    CHECK(sched.trains[1][i].index == static_cast<long long>(2 * i + 1));
    CHECK(sched.trains[0][i].level == 48.0);   // a takes the positive half-cycles
    CHECK(sched.trains[1][i].level == -48.0);
    CHECK(sched.trains[0][i].end - sched.trains[0][i].start == doctest::Approx(0.1e-3));
  }
  // Each submodule repeats at the output period, i.e. switches at half the pulse rate.
  CHECK(sched.trains[0][1].start - sched.trains[0][0].start == doctest::Approx(1e-3));
  const auto single = interleave_schedule(spec(1e3, 0.2, 1), 3e-3);
  CHECK(single.trains[0].size() == 6);
  CHECK(single.trains[1].empty());
  CHECK(pulse_index(s, 0.25e-3) == 0);
  CHECK(pulse_index(s, 1.75e-3) == 3);
  CHECK(pulse_index(s, 0.5e-3) == -1);
}

TEST_CASE("drive spec validation") {
  CHECK_THROWS_AS(check_spec(spec(1e3, 1.5)), InputError);
  CHECK_THROWS_AS(check_spec(spec(1e3, 0.1, 3)), InputError);
  CHECK_THROWS_AS(check_spec(spec(0.0, 0.1)), InputError);
  CHECK_NOTHROW(check_spec(spec(0.0, 0.0)));
}

TEST_CASE("calibrated resistance") {
  const double r = calibrated_resistance(0.1, 48.0, 1000.0);
  CHECK(r * 1000.0 == doctest::Approx(fundamental_amplitude(0.1, 48.0)));
  CHECK(r == doctest::Approx(9.56e-3).epsilon(1e-3));
  CHECK_THROWS_AS(calibrated_resistance(0.1, 48.0, 0.0), InputError);
}
