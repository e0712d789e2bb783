#include <doctest.h>

#include "common.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/physics.hpp"

using namespace fieldforge;
using namespace fieldforge::magnetics;
using fftest::circle;
using fftest::rel;

TEST_CASE("circular loop center field") {
  const double r = 0.05;
  const double current = 10.0;
  for (int sides : {8, 90, 720}) {
    const auto loop = circle(r, 0.0, sides);
    const Vec3 b = field_at_point({&loop}, {current}, {0, 0, 0});
    // Exact for the inscribed polygon.
    const double polygon = kMu0 * current * sides * std::tan(std::numbers::pi / sides) / (2.0 * std::numbers::pi * r);
    CHECK(b.z == doctest::Approx(polygon).epsilon(1e-12));
    CHECK(std::abs(b.x) < 1e-12 * b.z);
  }
  const auto fine = circle(r, 0.0, 720);
  CHECK(rel(field_at_point({&fine}, {current}, {0, 0, 0}).z, kMu0 * current / (2.0 * r)) < 1e-3);
}

TEST_CASE("loop axis field") {
  const double r = 0.05;
  const auto loop = circle(r, 0.0, 2000);
  for (double z : {0.01, 0.05, 0.2}) {
    const double ref = kMu0 * r * r / (2.0 * std::pow(r * r + z * z, 1.5));
    CHECK(rel(field_at_point({&loop}, {1.0}, {0, 0, z}).z, ref) < 1e-5);
  }
}

TEST_CASE("finite straight wire") {
  WindingGeometry w;
  w.wire.strand_diameter = 1e-3;
  w.wire.packing_factor = 1.0;
  const double half = 1.0;
  w.segments.push_back({{-half, 0, 0}, {half, 0, 0}});
  for (double d : {0.01, 0.1, 0.5}) {
    const Vec3 b = field_at_point({&w}, {2.0}, {0, d, 0});
    const double ref = kMu0 * 2.0 / (2.0 * std::numbers::pi * d) * half / std::sqrt(half * half + d * d);
    CHECK(b.z == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("field is linear in current and antisymmetric under reversal") {
  const auto& cfg = fftest::table1();
  const auto coils = cfg.windings_of(1);
  const auto ferrite = FerriteModel::for_config(cfg);
  const Vec3 p{0.01, -0.02, 0.005};
  const Vec3 b1 = field_at_point(coils, {100.0, 100.0}, p, ferrite);
  const Vec3 b2 = field_at_point(coils, {300.0, 300.0}, p, ferrite);
  const Vec3 bn = field_at_point(coils, {-100.0, -100.0}, p, ferrite);
  CHECK(norm(b2 - 3.0 * b1) < 1e-12 * norm(b2));
  CHECK(norm(bn + b1) < 1e-15 * norm(b1));
}

TEST_CASE("ferrite images equal explicit mirrored sources") {
  const auto loop = circle(0.03, 0.01, 36);
  FerriteModel f;
  f.enabled = true;
  f.half_extent = {0.06, 0.07, 0.05};
  WindingGeometry all = loop;
  for (const auto& s : image_segments(loop.segments, f)) all.segments.push_back(s);
  CHECK(image_segments(loop.segments, f).size() == 6 * loop.segments.size());
  const Vec3 p{0.01, 0.02, -0.01};
  const Vec3 with_images = field_at_point({&loop}, {5.0}, p, f);
  const Vec3 explicit_sum = field_at_point({&all}, {5.0}, p);
  CHECK(norm(with_images - explicit_sum) < 1e-12 * norm(explicit_sum));

  f.calibration = 1.3;
  CHECK(norm(field_at_point({&loop}, {5.0}, p, f) - 1.3 * explicit_sum) < 1e-12 * norm(explicit_sum));
}

TEST_CASE("mirror reflects across a plane") {
  const Segment s{{1, 2, 3}, {4, 5, 6}};
  const Segment m = mirror(s, 1, 10.0);
  CHECK(m.start == Vec3{1, 18, 3});
  CHECK(m.end == Vec3{4, 15, 6});
}

TEST_CASE("ferrite images raise the center field") {
  const auto& cfg = fftest::table1();
  const auto coils = cfg.windings_of(1);
  const double free = norm(field_at_point(coils, {1000.0, 1000.0}, {0, 0, 0}));
  const double shielded = norm(field_at_point(coils, {1000.0, 1000.0}, {0, 0, 0}, FerriteModel::for_config(cfg)));
  CHECK(shielded > free);
}

TEST_CASE("points inside a conductor are singular") {
  const auto loop = circle(0.05, 0.0, 36, 2e-3);
  const Vec3 on_wire = loop.segments[0].start;
  CHECK_THROWS_AS(field_at_point({&loop}, {1.0}, on_wire), SingularPointError);
  FieldSource src({&loop}, {1.0}, FerriteModel::disabled());
  CHECK(src.clearance(on_wire) < 0.0);
  CHECK(src.clearance({0, 0, 0}) > 0.04);
}

TEST_CASE("field kernels agree through the public api") {
  if (!simd::isa_supported(simd::Isa::avx2)) return;
  const auto& cfg = fftest::table1();
  const auto coils = cfg.windings_of(2);
  FieldSource src(coils, {260.0, 260.0}, FerriteModel::for_config(cfg));
  for (const Vec3& p : {Vec3{0, 0, 0}, Vec3{0.03, -0.04, 0.02}, Vec3{-0.045, 0.045, -0.025}}) {
    const Vec3 a = src.field(p, simd::Isa::scalar);
    const Vec3 b = src.field(p, simd::Isa::avx2);
    CHECK(norm(a - b) < 1e-12 * norm(a));
  }
}
