#pragma once

#include <cmath>
#include <numbers>

#include "fieldforge/config_io.hpp"
#include "fieldforge/winding.hpp"

namespace fftest {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline const fieldforge::ChamberConfig& table1() {
  static const fieldforge::ChamberConfig cfg = fieldforge::load_config(FIELDFORGE_TEST_CONFIG);
  return cfg;
}

/// Regular polygon approximating a circle of radius r in the plane z = z0, counter-clockwise.
inline fieldforge::WindingGeometry circle(double r, double z0, int sides, double wire_radius = 1e-3) {
  fieldforge::WindingGeometry w;
  w.coil_id = "loop";
  w.channel = 1;
  w.wire.strand_count = 1;
  w.wire.packing_factor = 1.0;
  w.wire.strand_diameter = 2.0 * wire_radius;
  w.wire.distribution = fieldforge::CurrentDistribution::surface;
  for (int i = 0; i < sides; ++i) {
    const double a0 = 2.0 * std::numbers::pi * i / sides;
    const double a1 = 2.0 * std::numbers::pi * (i + 1) / sides;
    w.segments.push_back({{r * std::cos(a0), r * std::sin(a0), z0}, {r * std::cos(a1), r * std::sin(a1), z0}});
  }
  return w;
}

}  // namespace fftest
