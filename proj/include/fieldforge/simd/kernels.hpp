#pragma once

// Inner loops of the magnetostatic solvers, in a portable scalar form and an AVX2/FMA form.
// Both variants read the same structure-of-arrays blocks; the AVX2 build is chosen at runtime.

#include <cstddef>
#include <string_view>
#include <vector>

#include "fieldforge/vec3.hpp"

namespace fieldforge::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);

/// Best supported variant. FIELDFORGE_ISA=scalar forces the scalar kernels.
Isa active_isa();

inline constexpr std::size_t kLaneWidth = 4;

/// Straight current segments for field evaluation. `scale` is mu0 I / 4 pi for each segment.
struct FieldSegments {
  std::vector<double> ax, ay, az, bx, by, bz, scale;

  void add(const Vec3& start, const Vec3& end, double s);
  std::size_t size() const { return scale.size(); }
  /// Appends inert entries (zero scale, remote geometry) up to a multiple of kLaneWidth.
  void pad();
};

/// Source segments of a Neumann integral: start point, unit tangent, length and a multiplier.
struct NeumannSegments {
  std::vector<double> sx, sy, sz, tx, ty, tz, len, scale;

  void add(const Vec3& start, const Vec3& end, double s);
  std::size_t size() const { return scale.size(); }
  void pad();
};

/// Quadrature nodes on the outer path: position and weight times unit tangent.
struct QuadratureNodes {
  std::vector<double> px, py, pz, wx, wy, wz;

  void add(const Vec3& p, const Vec3& weighted_tangent);
  std::size_t size() const { return px.size(); }
};

/// Sum over segments of scale * (a x b)(|a| + |b|) / (|a||b|(|a||b| + a.b)), a = start - p, b = end - p.
Vec3 field_sum(Isa isa, const FieldSegments& segs, const Vec3& p);

/// Sum over nodes and segments of (w . t) * scale * integral of ds / sqrt(dist^2 + reg2) along the segment.
double neumann_sum(Isa isa, const QuadratureNodes& nodes, const NeumannSegments& segs, double reg2);

namespace scalar {
Vec3 field_sum(const FieldSegments& segs, const Vec3& p);
double neumann_sum(const QuadratureNodes& nodes, const NeumannSegments& segs, double reg2);
}  // namespace scalar

namespace avx2 {
Vec3 field_sum(const FieldSegments& segs, const Vec3& p);
double neumann_sum(const QuadratureNodes& nodes, const NeumannSegments& segs, double reg2);
/// Natural log of four positive normal doubles.
void log4(const double* in, double* out);
}  // namespace avx2

}  // namespace fieldforge::simd
