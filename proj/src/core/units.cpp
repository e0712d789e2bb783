#include "fieldforge/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "fieldforge/errors.hpp"

namespace fieldforge::units {
namespace {

struct UnitEntry {
  std::string_view symbol;
  Dimension dim;
  double scale;
  double offset = 0.0;
};

// Suffixes are matched exactly after whitespace removal. "u" and the micro sign are interchangeable.
constexpr std::array kUnits = {
    UnitEntry{"", Dimension::dimensionless, 1.0},
    UnitEntry{"%", Dimension::dimensionless, 0.01},
    UnitEntry{"Hz", Dimension::frequency, 1.0},
    UnitEntry{"kHz", Dimension::frequency, 1e3},
    UnitEntry{"MHz", Dimension::frequency, 1e6},
    UnitEntry{"T", Dimension::flux_density, 1.0},
    UnitEntry{"mT", Dimension::flux_density, 1e-3},
    UnitEntry{"uT", Dimension::flux_density, 1e-6},
    UnitEntry{"A", Dimension::current, 1.0},
    UnitEntry{"kA", Dimension::current, 1e3},
    UnitEntry{"mA", Dimension::current, 1e-3},
    UnitEntry{"V", Dimension::voltage, 1.0},
    UnitEntry{"kV", Dimension::voltage, 1e3},
    UnitEntry{"mV", Dimension::voltage, 1e-3},
    UnitEntry{"H", Dimension::inductance, 1.0},
    UnitEntry{"mH", Dimension::inductance, 1e-3},
    UnitEntry{"uH", Dimension::inductance, 1e-6},
    UnitEntry{"nH", Dimension::inductance, 1e-9},
    UnitEntry{"F", Dimension::capacitance, 1.0},
    UnitEntry{"mF", Dimension::capacitance, 1e-3},
    UnitEntry{"uF", Dimension::capacitance, 1e-6},
    UnitEntry{"nF", Dimension::capacitance, 1e-9},
    UnitEntry{"pF", Dimension::capacitance, 1e-12},
    UnitEntry{"Ohm", Dimension::resistance, 1.0},
    UnitEntry{"mOhm", Dimension::resistance, 1e-3},
    UnitEntry{"kOhm", Dimension::resistance, 1e3},
    UnitEntry{"Ohm*m", Dimension::resistivity, 1.0},
    UnitEntry{"nOhm*m", Dimension::resistivity, 1e-9},
    UnitEntry{"m", Dimension::length, 1.0},
    UnitEntry{"cm", Dimension::length, 1e-2},
    UnitEntry{"mm", Dimension::length, 1e-3},
    UnitEntry{"um", Dimension::length, 1e-6},
    UnitEntry{"s", Dimension::time, 1.0},
    UnitEntry{"ms", Dimension::time, 1e-3},
    UnitEntry{"us", Dimension::time, 1e-6},
    UnitEntry{"ns", Dimension::time, 1e-9},
    UnitEntry{"kg/m3", Dimension::mass_density, 1.0},
    UnitEntry{"g/cm3", Dimension::mass_density, 1e3},
    UnitEntry{"mg/mL", Dimension::mass_density, 1.0},
    UnitEntry{"g/L", Dimension::mass_density, 1.0},
    UnitEntry{"J/(kg*K)", Dimension::specific_heat, 1.0},
    UnitEntry{"W/K", Dimension::thermal_conductance, 1.0},
    UnitEntry{"degC", Dimension::temperature, 1.0},
    UnitEntry{"degC/s", Dimension::heating_rate, 1.0},
    UnitEntry{"K/s", Dimension::heating_rate, 1.0},
    UnitEntry{"W/kg", Dimension::specific_power, 1.0},
    UnitEntry{"W/g", Dimension::specific_power, 1e3},
    UnitEntry{"W", Dimension::power, 1.0},
    UnitEntry{"kW", Dimension::power, 1e3},
    UnitEntry{"VA", Dimension::power, 1.0},
    UnitEntry{"kVA", Dimension::power, 1e3},
    UnitEntry{"rad", Dimension::angle, 1.0},
    UnitEntry{"deg", Dimension::angle, 0.017453292519943295},
};

std::string normalize_suffix(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) continue;
    // UTF-8 micro sign (C2 B5) and Greek mu (CE BC) map to 'u'.
    if (i + 1 < s.size() && ((c == 0xC2 && static_cast<unsigned char>(s[i + 1]) == 0xB5) ||
                             (c == 0xCE && static_cast<unsigned char>(s[i + 1]) == 0xBC))) {
      out.push_back('u');
      ++i;
      continue;
    }
    // Omega sign (CE A9) maps to "Ohm".
    if (i + 1 < s.size() && c == 0xCE && static_cast<unsigned char>(s[i + 1]) == 0xA9) {
      out += "Ohm";
      ++i;
      continue;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Power-of-ten prefixes are applied in decimal, so "6.8 nF" is the double nearest 6.8e-9.
double apply_scale(std::string_view number, double value, double scale) {
  if (scale == 1.0) return value;
  const int exponent = static_cast<int>(std::lround(std::log10(scale)));
  const bool decimal = std::pow(10.0, exponent) == scale && number.find_first_of("eE") == std::string_view::npos;
  if (!decimal) return value * scale;
  const std::string text = std::string(number) + "e" + std::to_string(exponent);
  double scaled = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), scaled);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return value * scale;
  return scaled;
}

}  // namespace

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::frequency: return "frequency";
    case Dimension::flux_density: return "flux density";
    case Dimension::current: return "current";
    case Dimension::voltage: return "voltage";
    case Dimension::inductance: return "inductance";
    case Dimension::capacitance: return "capacitance";
    case Dimension::resistance: return "resistance";
    case Dimension::resistivity: return "resistivity";
    case Dimension::length: return "length";
    case Dimension::time: return "time";
    case Dimension::mass_density: return "mass density";
    case Dimension::specific_heat: return "specific heat";
    case Dimension::thermal_conductance: return "thermal conductance";
    case Dimension::temperature: return "temperature";
    case Dimension::heating_rate: return "heating rate";
    case Dimension::specific_power: return "specific power";
    case Dimension::power: return "power";
    case Dimension::angle: return "angle";
  }
  return "unknown";
}

std::string_view si_symbol(Dimension d) {
  switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::frequency: return "Hz";
    case Dimension::flux_density: return "T";
    case Dimension::current: return "A";
    case Dimension::voltage: return "V";
    case Dimension::inductance: return "H";
    case Dimension::capacitance: return "F";
    case Dimension::resistance: return "Ohm";
    case Dimension::resistivity: return "Ohm*m";
    case Dimension::length: return "m";
    case Dimension::time: return "s";
    case Dimension::mass_density: return "kg/m3";
    case Dimension::specific_heat: return "J/(kg*K)";
    case Dimension::thermal_conductance: return "W/K";
    case Dimension::temperature: return "degC";
    case Dimension::heating_rate: return "degC/s";
    case Dimension::specific_power: return "W/kg";
    case Dimension::power: return "W";
    case Dimension::angle: return "rad";
  }
  return "";
}

double parse_quantity(std::string_view text, Dimension expected) {
  const std::string_view t = trim(text);
  if (t.empty()) throw ConfigError("empty quantity");

  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) throw ConfigError("malformed number in quantity '" + std::string(t) + "'");

  const std::string suffix = normalize_suffix(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (suffix.empty() && expected != Dimension::dimensionless) {
    throw ConfigError("quantity '" + std::string(t) + "' needs a unit suffix (" +
                      std::string(dimension_name(expected)) + ")");
  }
  for (const auto& u : kUnits) {
    if (u.symbol != suffix) continue;
    if (u.dim != expected) {
      throw ConfigError("quantity '" + std::string(t) + "' has dimension " + std::string(dimension_name(u.dim)) +
                        ", expected " + std::string(dimension_name(expected)));
    }
    return apply_scale(std::string_view(first, static_cast<std::size_t>(ptr - first)), value, u.scale) + u.offset;
  }
  throw ConfigError("unknown unit suffix '" + suffix + "' in '" + std::string(t) + "'");
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

std::string format_quantity(double si_value, Dimension d) {
  const std::string_view sym = si_symbol(d);
  std::string out = format_double(si_value);
  if (!sym.empty()) {
    out.push_back(' ');
    out.append(sym);
  }
  return out;
}

}  // namespace fieldforge::units
