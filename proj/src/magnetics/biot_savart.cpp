#include <algorithm>
#include <limits>
#include <numbers>

#include "fieldforge/errors.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/physics.hpp"
#include "fieldforge/winding.hpp"

namespace fieldforge::magnetics {

FerriteModel FerriteModel::for_config(const ChamberConfig& config) {
  FerriteModel f;
  if (!config.chamber.ferrite_enabled) return f;
  f.enabled = true;
  const Vec3 box = bounding_half_extent(config.windings);
  const double gap = config.chamber.ferrite_gap;
  f.half_extent = {box.x + gap, box.y + gap, box.z + gap};
  f.calibration = config.chamber.ferrite_calibration;
  return f;
}

Segment mirror(const Segment& s, int axis, double plane) {
  Segment m = s;
  m.start[axis] = 2.0 * plane - s.start[axis];
  m.end[axis] = 2.0 * plane - s.end[axis];
  return m;
}

std::vector<Segment> image_segments(const std::vector<Segment>& segs, const FerriteModel& ferrite) {
  std::vector<Segment> out;
  if (!ferrite.enabled) return out;
  out.reserve(6 * segs.size());
  for (int axis = 0; axis < 3; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      const double plane = sign * ferrite.half_extent[axis];
      for (const auto& s : segs) out.push_back(mirror(s, axis, plane));
    }
  }
  return out;
}

FieldSource::FieldSource(const std::vector<const WindingGeometry*>& windings, const std::vector<double>& currents,
                         const FerriteModel& ferrite) {
  if (windings.size() != currents.size()) throw InputError("one current per winding required");
  calibration_ = ferrite.enabled ? ferrite.calibration : 1.0;
  for (std::size_t w = 0; w < windings.size(); ++w) {
    const WindingGeometry& g = *windings[w];
    const double scale = kMu0 / (4.0 * std::numbers::pi) * currents[w];
    const double radius = g.wire_radius();
    for (const auto& s : g.segments) {
      wires_.push_back({s, radius});
      block_.add(s.start, s.end, scale);
    }
    for (const auto& s : image_segments(g.segments, ferrite)) block_.add(s.start, s.end, scale);
  }
  block_.pad();
}

double FieldSource::clearance(const Vec3& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : wires_) best = std::min(best, point_segment_distance(p, w.seg.start, w.seg.end) - w.radius);
  return best;
}

Vec3 FieldSource::field(const Vec3& p, simd::Isa isa) const {
  if (!(clearance(p) > 0.0)) throw SingularPointError("field point lies inside a conductor");
  const Vec3 b = simd::field_sum(isa, block_, p);
  return calibration_ == 1.0 ? b : calibration_ * b;
}

Vec3 field_at_point(const std::vector<const WindingGeometry*>& windings, const std::vector<double>& currents,
                    const Vec3& point, const FerriteModel& ferrite) {
  return FieldSource(windings, currents, ferrite).field(point);
}

}  // namespace fieldforge::magnetics
