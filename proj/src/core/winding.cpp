#include "fieldforge/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fieldforge/errors.hpp"
#include "fieldforge/physics.hpp"

namespace fieldforge {

double ChannelSpec::omega() const { return kTwoPi * nominal_frequency; }

double LitzWireSpec::strand_area() const {
  return std::numbers::pi * 0.25 * strand_diameter * strand_diameter;
}

double LitzWireSpec::copper_area() const {
  return strand_area() * static_cast<double>(strand_count) * static_cast<double>(parallel_bundles);
}

double LitzWireSpec::bundle_radius() const {
  return std::sqrt(copper_area() / (std::numbers::pi * packing_factor));
}

double LitzWireSpec::geometric_mean_radius() const {
  const double r = bundle_radius();
  return distribution == CurrentDistribution::uniform ? kUniformGmrRatio * r : r;
}

double WindingGeometry::conductor_length() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.length();
  return total;
}

double segment_segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  // Closest points of two segments (Ericson, Real-Time Collision Detection, 5.1.9).
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  constexpr double eps = 1e-300;
  double s = 0.0;
  double t = 0.0;
  if (a <= eps && e <= eps) return norm(r);
  if (a <= eps) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= eps) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm((p1 + s * d1) - (p2 + t * d2));
}

WindingGeometry build_winding(const RectHelixLayout& layout, std::string coil_id, int channel,
                              const LitzWireSpec& wire) {
  if (layout.turns < 1) throw InputError("winding " + coil_id + ": turns must be at least 1");
  if (!(layout.width > 0.0) || !(layout.height > 0.0))
    throw InputError("winding " + coil_id + ": degenerate footprint");
  if (layout.axis < 0 || layout.axis > 2) throw InputError("winding " + coil_id + ": axis must be 0, 1 or 2");
  if (layout.turns > 1 && !(layout.pitch > 0.0))
    throw InputError("winding " + coil_id + ": multi-turn layout needs a positive pitch");
  if (layout.turns > 1 && !(layout.lead_offset > 0.0))
    throw InputError("winding " + coil_id + ": multi-turn layout needs a positive lead offset");

  const int ax = layout.axis;
  const int u_ax = (ax + 1) % 3;
  const int v_ax = (ax + 2) % 3;
  auto point = [&](double a, double u, double v) {
    Vec3 p;
    p[ax] = a;
    p[u_ax] = u;
    p[v_ax] = v;
    return p + layout.center;
  };

  const double hw = 0.5 * layout.width;
  const double hh = 0.5 * layout.height;
  const double first = -0.5 * layout.pitch * static_cast<double>(layout.turns - 1);
  const std::array<std::array<double, 2>, 4> corners{{{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}};

  WindingGeometry w;
  w.coil_id = std::move(coil_id);
  w.channel = channel;
  w.turns = layout.turns;
  w.wire = wire;
  w.layout = layout;
  w.segments.reserve(static_cast<std::size_t>(5 * layout.turns + 3));

  for (int k = 0; k < layout.turns; ++k) {
    const double a = first + layout.pitch * static_cast<double>(k);
    for (int i = 0; i < 4; ++i) {
      const auto& c0 = corners[static_cast<std::size_t>(i)];
      const auto& c1 = corners[static_cast<std::size_t>((i + 1) % 4)];
      w.segments.push_back({point(a, c0[0], c0[1]), point(a, c1[0], c1[1])});
    }
    if (k + 1 < layout.turns) {
      w.segments.push_back({point(a, -hw, -hh), point(a + layout.pitch, -hw, -hh)});
    }
  }
  if (layout.turns > 1) {
    const double off = layout.lead_offset / std::numbers::sqrt2;
    const double a_last = first + layout.pitch * static_cast<double>(layout.turns - 1);
    const Vec3 last = point(a_last, -hw, -hh);
    const Vec3 last_out = point(a_last, -hw - off, -hh - off);
    const Vec3 first_out = point(first, -hw - off, -hh - off);
    const Vec3 start = point(first, -hw, -hh);
    w.segments.push_back({last, last_out});
    w.segments.push_back({last_out, first_out});
    w.segments.push_back({first_out, start});
  }
  return w;
}

double loop_closure_gap(const WindingGeometry& w) {
  if (w.segments.empty()) return std::numeric_limits<double>::infinity();
  double gap = norm(w.segments.back().end - w.segments.front().start);
  for (std::size_t i = 1; i < w.segments.size(); ++i) {
    gap = std::max(gap, norm(w.segments[i].start - w.segments[i - 1].end));
  }
  return gap;
}

bool is_closed_loop(const WindingGeometry& w, double tol) { return loop_closure_gap(w) <= tol; }

Vec3 bounding_half_extent(const std::vector<WindingGeometry>& windings) {
  Vec3 h;
  for (const auto& w : windings) {
    for (const auto& s : w.segments) {
      for (int a = 0; a < 3; ++a) {
        h[a] = std::max({h[a], std::abs(s.start[a]), std::abs(s.end[a])});
      }
    }
  }
  return h;
}

}  // namespace fieldforge
