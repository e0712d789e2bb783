#include <doctest.h>

#include "fieldforge/errors.hpp"
#include "fieldforge/units.hpp"

using fieldforge::ConfigError;
using namespace fieldforge::units;

TEST_CASE("quantities parse into SI") {
  CHECK(parse_quantity("4.4 uH", Dimension::inductance) == doctest::Approx(4.4e-6).epsilon(1e-15));
  CHECK(parse_quantity("50kHz", Dimension::frequency) == 50e3);
  CHECK(parse_quantity("6.8 nF", Dimension::capacitance) == 6.8e-9);
  CHECK(parse_quantity("0.1 mm", Dimension::length) == 0.1e-3);
  CHECK(parse_quantity("10 %", Dimension::dimensionless) == doctest::Approx(0.1));
  CHECK(parse_quantity("0.85", Dimension::dimensionless) == 0.85);
  CHECK(parse_quantity("1.0 kA", Dimension::current) == 1000.0);
  CHECK(parse_quantity("20.68 mg/mL", Dimension::mass_density) == 20.68);
  CHECK(parse_quantity("707.4 W/g", Dimension::specific_power) == doctest::Approx(707.4e3));
  CHECK(parse_quantity("180 deg", Dimension::angle) == doctest::Approx(std::numbers::pi));
  CHECK(parse_quantity("4.4 \xC2\xB5H", Dimension::inductance) == doctest::Approx(4.4e-6));
  CHECK(parse_quantity("5 m\xCE\xA9", Dimension::resistance) == doctest::Approx(5e-3));
}

TEST_CASE("bad quantities are rejected") {
  CHECK_THROWS_AS(parse_quantity("4.4", Dimension::inductance), ConfigError);
  CHECK_THROWS_AS(parse_quantity("4.4 kHz", Dimension::inductance), ConfigError);
  CHECK_THROWS_AS(parse_quantity("4.4 furlongs", Dimension::length), ConfigError);
  CHECK_THROWS_AS(parse_quantity("uH", Dimension::inductance), ConfigError);
  CHECK_THROWS_AS(parse_quantity("", Dimension::inductance), ConfigError);
}

TEST_CASE("format_quantity round-trips") {
  for (double v : {4.4e-6, 1.9866898753399564e-06, 0.0, -3.25, 1e300, 6.8e-9}) {
    CHECK(parse_quantity(format_quantity(v, Dimension::inductance), Dimension::inductance) == v);
  }
}
