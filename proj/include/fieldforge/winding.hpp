#pragma once

#include <string>

#include "fieldforge/core_model.hpp"

namespace fieldforge {

/// Maximum gap between consecutive segment endpoints, and between the last end and the first start.
inline constexpr double kLoopClosureTolerance = 1e-9;

/// Expands a rectangular-helix layout into explicit segments.
///
/// Each turn is a closed rectangle (4 segments) in the plane normal to `axis`, starting and ending
/// at its (-width/2, -height/2) corner. Consecutive turns are joined by an axial riser at that corner.
/// For more than one turn the path is closed by a radial stub, an axial return lead displaced
/// diagonally outward by `lead_offset`, and a second stub back to the first corner, so the net axial
/// current of the leads is zero. A single turn is just its 4 sides.
///
/// Throws InputError for zero turns, non-positive sides, or a multi-turn layout with non-positive
/// pitch or lead offset.
WindingGeometry build_winding(const RectHelixLayout& layout, std::string coil_id, int channel,
                              const LitzWireSpec& wire);

/// True when consecutive segments share endpoints and the path returns to its start.
bool is_closed_loop(const WindingGeometry& w, double tol = kLoopClosureTolerance);

/// Largest endpoint mismatch along the path (0 for a perfectly chained closed loop).
double loop_closure_gap(const WindingGeometry& w);

/// Axis-aligned bounding box half-extents of all segment endpoints around the origin.
Vec3 bounding_half_extent(const std::vector<WindingGeometry>& windings);

}  // namespace fieldforge
