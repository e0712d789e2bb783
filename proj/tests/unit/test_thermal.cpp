#include <doctest.h>

#include "common.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/physics.hpp"
#include "fieldforge/thermal.hpp"

using namespace fieldforge;
using namespace fieldforge::thermal;
using fftest::rel;

TEST_CASE("skin effect") {
  const double d = skin_depth(1.72e-8, 50e3);
  CHECK(d == doctest::Approx(std::sqrt(2.0 * 1.72e-8 / (2.0 * std::numbers::pi * 50e3 * kMu0))));
  CHECK(d == doctest::Approx(0.295e-3).epsilon(0.01));
  CHECK(std::isinf(skin_depth(1.72e-8, 0.0)));
  CHECK(skin_factor(0.1e-3, d) > 1.0);
  CHECK(skin_factor(0.1e-3, d) < 1.001);
  CHECK(skin_factor(0.05e-3, skin_depth(1.72e-8, 550e3)) < skin_factor(0.1e-3, skin_depth(1.72e-8, 550e3)));
}

TEST_CASE("litz resistance") {
  LitzWireSpec w;
  w.strand_diameter = 0.1e-3;
  w.strand_count = 3160;
  const double rdc = litz_dc_resistance(w, 3.0);
  CHECK(rdc == doctest::Approx(1.72e-8 * 3.0 / w.copper_area()));
  CHECK(litz_resistance(w, 3.0, 50e3) >= rdc);
  CHECK(litz_resistance(w, 3.0, 0.0) == doctest::Approx(rdc));
  CHECK_THROWS_AS(litz_resistance(w, 0.0, 50e3), InputError);
}

TEST_CASE("sar from measured heating") {
  const auto& cfg = fftest::table1();
  const auto& co = cfg.sample("Co-IONP");
  const auto& fe = cfg.sample("IONP");
  const double co_sar = 4180.0 * 1000.0 / 20.68 * 3.5;
  const double fe_sar = 4180.0 * 1000.0 / 21.46 * 1.5;
  CHECK(rel(sar(co, 3.5, 1.0), co_sar) < 1e-12);
  CHECK(rel(sar(fe, 3.0, 2.0), fe_sar) < 1e-12);
  CHECK(sar(co, 3.5, 1.0) / 1e3 == doctest::Approx(707.4).epsilon(1e-4));
  CHECK(sar(fe, 1.5, 1.0) / 1e3 == doctest::Approx(292.2).epsilon(1e-4));
  CHECK_THROWS_AS(sar(co, 1.0, 0.0), InputError);
}

TEST_CASE("heating curve inverts sar") {
  NanoparticleSample s;
  s.metal_concentration = 17.0;
  for (double rate : {0.01, 0.2, 3.5, 40.0}) {
    s.sar_per_channel[1] = sar(s, rate * 4.0, 4.0);
    const auto h = heating_curve(s, 1, 3.0, 31);
    CHECK(rel(h.rate, rate) < 1e-12);
    CHECK(h.delta_t == doctest::Approx(3.0 * rate));
    CHECK(h.time.size() == 31);
    CHECK(h.temperature.back() == doctest::Approx(h.delta_t));
  }
  CHECK(heating_curve(s, 1, 0.0).delta_t == 0.0);
  CHECK_THROWS_AS(heating_curve(s, 2, 1.0), InputError);
  CHECK_THROWS_AS(heating_curve(s, 1, -1.0), InputError);
}

TEST_CASE("each channel heats its matched particle more than 10x faster") {
  const auto& cfg = fftest::table1();
  const auto& co = cfg.sample("Co-IONP");
  const auto& fe = cfg.sample("IONP");
  CHECK(heating_curve(co, 1, 1.0).rate > 10.0 * heating_curve(fe, 1, 1.0).rate);
  CHECK(heating_curve(fe, 2, 1.0).rate > 10.0 * heating_curve(co, 2, 1.0).rate);
}

// Measured rates give 3.5 / 0.1 for Co-IONP but only 1.5 / 0.2 = 7.5 for IONP, so the IONP
// check fails with the bundled data. Registered as its own ctest entry.
TEST_CASE("particle selectivity: matched channel rate exceeds mismatched by more than 10x") {
  const auto& cfg = fftest::table1();
  const auto& co = cfg.sample("Co-IONP");
  const auto& fe = cfg.sample("IONP");
  CHECK(heating_curve(co, 1, 1.0).rate > 10.0 * heating_curve(co, 2, 1.0).rate);
  CHECK(heating_curve(fe, 2, 1.0).rate > 10.0 * heating_curve(fe, 1, 1.0).rate);
}

TEST_CASE("coil heating scales with current squared") {
  const auto& cfg = fftest::table1();
  const auto& w = cfg.windings[0];
  ThermalParams adiabatic = cfg.thermal;
  adiabatic.coolant_sink_conductance = 0.0;
  const auto a = coil_temperature_rise(cfg.network(1), w.wire, w, 500.0, 0.2, adiabatic);
  const auto b = coil_temperature_rise(cfg.network(1), w.wire, w, 1000.0, 0.2, adiabatic);
  CHECK(rel(b.delta_t, 4.0 * a.delta_t) < 0.01);

  double prev = -1.0;
  for (double i : {100.0, 400.0, 700.0, 1000.0}) {
    const auto r = coil_temperature_rise(cfg.network(1), w.wire, w, i, 2.0, cfg.thermal);
    CHECK(r.delta_t > prev);
    prev = r.delta_t;
  }
  const auto sunk = coil_temperature_rise(cfg.network(1), w.wire, w, 1000.0, 2.0, cfg.thermal);
  const auto free = coil_temperature_rise(cfg.network(1), w.wire, w, 1000.0, 2.0, adiabatic);
  CHECK(sunk.delta_t < free.delta_t);
  CHECK(copper_mass(w, cfg.thermal) == doctest::Approx(cfg.thermal.copper_density * w.wire.copper_area() *
                                                       w.conductor_length()));
}

TEST_CASE("wall safety") {
  ThermalParams p;
  const auto pass = safety_check(observed_heating("wall", 0.4, 2.0), p);
  CHECK(pass.pass);
  CHECK(pass.margin == doctest::Approx(0.15));
  CHECK_FALSE(safety_check(observed_heating("wall", 0.35, 1.0), p).pass);
  const auto zero = safety_check(observed_heating("wall", 0.0, 1.0), p);
  CHECK(zero.pass);
  CHECK(zero.margin == doctest::Approx(0.35));
}
