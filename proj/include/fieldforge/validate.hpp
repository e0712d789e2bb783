#pragma once

#include <string>
#include <vector>

#include "fieldforge/core_model.hpp"

namespace fieldforge {

struct Violation {
  std::string where;    // e.g. "channels", "windings[#1]"
  std::string message;  // e.g. "loop not closed"

  std::string to_string() const { return where + ": " + message; }
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool mentions(std::string_view needle) const;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks every type invariant, cross-reference and unit-sanity rule. Never throws on bad data;
/// each problem becomes one Violation.
ValidationReport validate_config(const ChamberConfig& config);

}  // namespace fieldforge
