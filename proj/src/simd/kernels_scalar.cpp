#include <algorithm>
#include <cmath>

#include "fieldforge/simd/kernels.hpp"

namespace fieldforge::simd {
namespace {

constexpr double kFar = 1e3;

template <typename Block, typename AddFn>
void pad_to_lanes(Block& b, AddFn add) {
  while (b.size() % kLaneWidth != 0) add(b);
}

}  // namespace

void FieldSegments::add(const Vec3& start, const Vec3& end, double s) {
  ax.push_back(start.x);
  ay.push_back(start.y);
  az.push_back(start.z);
  bx.push_back(end.x);
  by.push_back(end.y);
  bz.push_back(end.z);
  scale.push_back(s);
}

void FieldSegments::pad() {
  pad_to_lanes(*this, [](FieldSegments& b) { b.add({kFar, kFar, kFar}, {kFar + 1.0, kFar, kFar}, 0.0); });
}

void NeumannSegments::add(const Vec3& start, const Vec3& end, double s) {
  const Vec3 d = end - start;
  const double l = norm(d);
  sx.push_back(start.x);
  sy.push_back(start.y);
  sz.push_back(start.z);
  tx.push_back(d.x / l);
  ty.push_back(d.y / l);
  tz.push_back(d.z / l);
  len.push_back(l);
  scale.push_back(s);
}

void NeumannSegments::pad() {
  pad_to_lanes(*this, [](NeumannSegments& b) { b.add({kFar, kFar, kFar}, {kFar + 1.0, kFar, kFar}, 0.0); });
}

void QuadratureNodes::add(const Vec3& p, const Vec3& weighted_tangent) {
  px.push_back(p.x);
  py.push_back(p.y);
  pz.push_back(p.z);
  wx.push_back(weighted_tangent.x);
  wy.push_back(weighted_tangent.y);
  wz.push_back(weighted_tangent.z);
}

namespace scalar {

Vec3 field_sum(const FieldSegments& s, const Vec3& p) {
  Vec3 acc;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a{s.ax[i] - p.x, s.ay[i] - p.y, s.az[i] - p.z};
    const Vec3 b{s.bx[i] - p.x, s.by[i] - p.y, s.bz[i] - p.z};
    const double na = norm(a);
    const double nb = norm(b);
    const double nab = na * nb;
    const double f = s.scale[i] * (na + nb) / (nab * (nab + dot(a, b)));
    acc += f * cross(a, b);
  }
  return acc;
}

double neumann_sum(const QuadratureNodes& q, const NeumannSegments& s, double reg2) {
  double total = 0.0;
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < q.size(); ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double wx = q.px[k] - s.sx[i];
      const double wy = q.py[k] - s.sy[i];
      const double wz = q.pz[k] - s.sz[i];
      const double u = wx * s.tx[i] + wy * s.ty[i] + wz * s.tz[i];
      // Perpendicular offset taken explicitly; |w|^2 - u^2 cancels badly near the line.
      const double ex = wx - u * s.tx[i];
      const double ey = wy - u * s.ty[i];
      const double ez = wz - u * s.tz[i];
      const double r2 = ex * ex + ey * ey + ez * ez + reg2;
      double a = -u;
      double b = s.len[i] - u;
      // Mirror so the segment never lies entirely behind the node.
      if (b <= 0.0) {
        const double t = a;
        a = -b;
        b = -t;
      }
      const double ha = std::sqrt(a * a + r2);
      const double hb = std::sqrt(b * b + r2);
      const double num = b + hb;
      const double den = a >= 0.0 ? a + ha : r2 / (ha - a);
      const double dt = q.wx[k] * s.tx[i] + q.wy[k] * s.ty[i] + q.wz[k] * s.tz[i];
      acc += dt * s.scale[i] * std::log(num / den);
    }
    total += acc;
  }
  return total;
}

}  // namespace scalar
}  // namespace fieldforge::simd
