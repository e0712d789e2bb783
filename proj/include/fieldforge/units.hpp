#pragma once

#include <string>
#include <string_view>

namespace fieldforge::units {

// Physical dimensions accepted in configuration files. Every quantity is stored in SI.
enum class Dimension {
  dimensionless,
  frequency,
  flux_density,
  current,
  voltage,
  inductance,
  capacitance,
  resistance,
  resistivity,
  length,
  time,
  mass_density,
  specific_heat,
  thermal_conductance,
  temperature,
  heating_rate,
  specific_power,
  power,
  angle,
};

std::string_view dimension_name(Dimension d);

/// Parses "<number> <unit>" (e.g. "4.4 uH", "50kHz", "0.1 mm") into SI.
/// Throws ConfigError on a malformed number, an unknown suffix, or a suffix of the wrong dimension.
/// Bare numbers are accepted only for Dimension::dimensionless.
double parse_quantity(std::string_view text, Dimension expected);

/// The SI unit symbol written by format_quantity.
std::string_view si_symbol(Dimension d);

/// Shortest round-trip decimal representation followed by the SI symbol.
std::string format_quantity(double si_value, Dimension d);

/// Shortest round-trip decimal for a plain double.
std::string format_double(double value);

}  // namespace fieldforge::units
