#include <doctest.h>

#include "common.hpp"
#include "fieldforge/errors.hpp"
#include "fieldforge/magnetics.hpp"
#include "fieldforge/physics.hpp"

using namespace fieldforge;
using namespace fieldforge::magnetics;
using fftest::circle;
using fftest::rel;

namespace {

// Complete elliptic integrals K(m), E(m) by the arithmetic-geometric mean, m = k^2.
void elliptic_ke(double m, double& K, double& E) {
  double a = 1.0, b = std::sqrt(1.0 - m), c2sum = 0.5 * m, pow2 = 0.5;
  for (int i = 0; i < 40 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    const double c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    c2sum += pow2 * c * c;
  }
  K = std::numbers::pi / (2.0 * a);
  E = K * (1.0 - c2sum);
}

double coaxial_mutual(double r1, double r2, double d) {
  const double m = 4.0 * r1 * r2 / ((r1 + r2) * (r1 + r2) + d * d);
  const double k = std::sqrt(m);
  double K = 0.0, E = 0.0;
  elliptic_ke(m, K, E);
  return kMu0 * std::sqrt(r1 * r2) * ((2.0 / k - k) * K - 2.0 / k * E);
}

}  // namespace

TEST_CASE("elliptic oracle sanity") {
  double K = 0.0, E = 0.0;
  elliptic_ke(0.0, K, E);
  CHECK(K == doctest::Approx(std::numbers::pi / 2));
  CHECK(E == doctest::Approx(std::numbers::pi / 2));
  elliptic_ke(0.5, K, E);
  CHECK(K == doctest::Approx(1.8540746773013719).epsilon(1e-13));
  CHECK(E == doctest::Approx(1.3506438810476755).epsilon(1e-13));
}

TEST_CASE("coaxial loop mutual inductance") {
  for (auto [r1, r2, d] : {std::array{0.05, 0.05, 0.02}, std::array{0.05, 0.03, 0.04}, std::array{0.1, 0.02, 0.0}}) {
    const auto a = circle(r1, 0.0, 256);
    const auto b = circle(r2, d, 256);
    const double m = mutual_inductance(a, b);
    CHECK(rel(m, coaxial_mutual(r1, r2, d)) < 5e-3);
    CHECK(mutual_inductance(b, a) == doctest::Approx(m).epsilon(1e-12));
  }
}

TEST_CASE("thin loop self inductance") {
  const double r = 0.1, a = 2e-3;
  const auto loop = circle(r, 0.0, 256, a);
  const double l = self_inductance(loop);
  const double ref = kMu0 * r * (std::log(8.0 * r / a) - 2.0);
  CHECK(rel(l, ref) < 0.02);
}

TEST_CASE("overlapping or open windings are rejected") {
  const auto a = circle(0.05, 0.0, 64, 2e-3);
  const auto b = circle(0.0505, 0.0, 64, 2e-3);
  CHECK_THROWS_AS(mutual_inductance(a, b), GeometryError);
  auto open = a;
  open.segments.pop_back();
  CHECK_THROWS_AS(self_inductance(open), GeometryError);
}

TEST_CASE("linked flux is M times current") {
  const auto a = circle(0.05, 0.0, 128);
  const auto b = circle(0.04, 0.03, 128);
  CHECK(linked_flux(a, 7.0, b) == doctest::Approx(7.0 * mutual_inductance(a, b)).epsilon(1e-12));
}

TEST_CASE("inductance matrix of the bundled windings") {
  const auto& cfg = fftest::table1();
  const auto lm = inductance_matrix(cfg.windings, FerriteModel::for_config(cfg));
  REQUIRE(lm.size() == 4);
  CHECK(lm.values.isApprox(lm.values.transpose(), 1e-12));
  const Eigen::LLT<Eigen::MatrixXd> llt(lm.values);
  CHECK(llt.info() == Eigen::Success);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) CHECK(coupling_coefficient(lm, i, j) < 1.0);
    }
  }
  // Within 25 % of the measured per-half values.
  CHECK(lm(lm.index_of("#1"), lm.index_of("#1")) == doctest::Approx(4.2e-6).epsilon(0.25));
  CHECK(lm(lm.index_of("#3"), lm.index_of("#3")) == doctest::Approx(1.45e-6).epsilon(0.25));
  CHECK(lm(lm.index_of("#1"), lm.index_of("#2")) == doctest::Approx(0.7e-6).epsilon(0.25));
  CHECK(lm(lm.index_of("#3"), lm.index_of("#4")) == doctest::Approx(0.4e-6).epsilon(0.25));
  // Orthogonal channel fluxes: the series-aiding channels barely couple.
  CHECK(channel_coupling(lm, 1, 2) < 0.01);
  CHECK(coupling_coefficient(lm, "#1", "#3") == coupling_coefficient(lm, 0, 2));
}

TEST_CASE("inductance is independent of worker count and kernel") {
  const auto& cfg = fftest::table1();
  const auto& w = cfg.windings[2];
  setenv("FIELDFORGE_THREADS", "1", 1);
  const double one = self_inductance(w);
  setenv("FIELDFORGE_THREADS", "7", 1);
  const double many = self_inductance(w);
  unsetenv("FIELDFORGE_THREADS");
  CHECK(one == many);
  if (simd::isa_supported(simd::Isa::avx2)) {
    const double s = neumann_integral(w.segments, cfg.windings[3].segments, 0.0, {}, simd::Isa::scalar);
    const double v = neumann_integral(w.segments, cfg.windings[3].segments, 0.0, {}, simd::Isa::avx2);
    CHECK(v == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("inductance extraction from coil voltages") {
  const double omega = 2.0 * std::numbers::pi * 50e3;
  const auto e = extract_inductance_vi(omega * 4.4e-6 * 10.0, omega * 0.7e-6 * 10.0, 10.0, omega);
  CHECK(e.self == doctest::Approx(4.4e-6));
  CHECK(e.mutual == doctest::Approx(0.7e-6));
  CHECK_THROWS_AS(extract_inductance_vi(1.0, 1.0, 0.0, omega), InputError);
}
