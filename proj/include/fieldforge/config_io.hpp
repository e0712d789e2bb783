#pragma once

#include <filesystem>
#include <string>

#include "fieldforge/core_model.hpp"

namespace fieldforge {

/// Parses a chamber configuration document (YAML syntax, every quantity with a unit suffix).
/// Layout-described windings are expanded with build_winding, nanoparticle heating rates are
/// converted to SAR, and derived series resistances are resolved. Throws ConfigError.
ChamberConfig parse_config(const std::string& text);
ChamberConfig load_config(const std::filesystem::path& path);

/// Writes a document that parse_config reads back to an equal ChamberConfig.
std::string serialize_config(const ChamberConfig& config);

/// Fills in series resistances for networks whose design asks for a derived value.
void resolve_series_resistance(ChamberConfig& config);

}  // namespace fieldforge
