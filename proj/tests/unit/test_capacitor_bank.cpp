#include <doctest.h>

#include <cmath>
#include <limits>

#include "fieldforge/errors.hpp"
#include "fieldforge/resonance.hpp"

using namespace fieldforge;
using namespace fieldforge::resonance;

namespace {

// Exhaustive two-part search with the documented tie-break, in integer femtofarads.
std::array<int, 2> brute_force(double target, double a, double b, int budget) {
  const auto fa = std::llround(a * 1e15);
  const auto fb = std::llround(b * 1e15);
  const auto goal = std::llround(2.0 * target * 1e15);
  std::array<int, 2> best{-1, -1};
  long long best_diff = std::numeric_limits<long long>::max();
  for (int i = 0; i <= budget; ++i) {
    for (int j = 0; i + j <= budget; ++j) {
      if (i + j == 0) continue;
      const long long diff = std::llabs(i * fa + j * fb - goal);
      if (diff < best_diff || (diff == best_diff && i + j < best[0] + best[1])) {
        best = {i, j};
        best_diff = diff;
      }
    }
  }
  return best;
}

int count_of(const CapacitorBank& bank, double value) {
  for (const auto& p : bank.group) {
    if (std::abs(p.value - value) < 1e-6 * value) return p.count;
  }
  return 0;
}

}  // namespace

TEST_CASE("bank synthesis reproduces the implemented banks") {
  const auto c11 = compose_bank(2040e-9, {680e-9});
  CHECK(c11.effective() == doctest::Approx(2040e-9).epsilon(1e-12));
  CHECK(count_of(c11, 680e-9) == 6);

  const auto c12 = compose_bank(2205e-9, {470e-9, 1000e-9});
  CHECK(c12.effective() == doctest::Approx(2205e-9).epsilon(1e-12));
  CHECK(count_of(c12, 470e-9) == 3);
  CHECK(count_of(c12, 1000e-9) == 3);

  const auto c21 = compose_bank(46.0e-9, {6.8e-9, 4.7e-9});
  CHECK(c21.effective() == doctest::Approx(46.0e-9).epsilon(1e-12));
  CHECK(count_of(c21, 6.8e-9) == 8);
  CHECK(count_of(c21, 4.7e-9) == 8);

  const auto c22 = compose_bank(43.9e-9, {6.8e-9, 4.7e-9});
  CHECK(c22.effective() == doctest::Approx(43.9e-9).epsilon(1e-12));
  CHECK(count_of(c22, 6.8e-9) == 6);
  CHECK(count_of(c22, 4.7e-9) == 10);
  CHECK(c22.part_count() == 16);
  CHECK(c22.describe() == "(6 x 6.8 nF + 10 x 4.7 nF) / 2");
}

TEST_CASE("bank synthesis matches exhaustive search") {
  const std::array<std::array<double, 2>, 3> stocks{{{680e-9, 470e-9}, {6.8e-9, 4.7e-9}, {1000e-9, 330e-9}}};
  for (const auto& s : stocks) {
    for (double target : {0.9 * s[0], 2.0 * s[1], 3.7 * s[0], 5.1 * s[1], 7.3 * s[0]}) {
      const auto bank = compose_bank(target, {s[0], s[1]}, 20);
      const auto ref = brute_force(target, s[0], s[1], 20);
      CHECK(std::abs(bank.effective() - 0.5 * (ref[0] * s[0] + ref[1] * s[1])) < 1e-9 * target);
      CHECK(bank.part_count() == ref[0] + ref[1]);
    }
  }
}

TEST_CASE("bank synthesis respects the part budget and stock") {
  for (int budget : {1, 3, 10}) {
    const auto bank = compose_bank(1.1e-6, {1e-6, 2.2e-6}, budget);
    CHECK(bank.part_count() <= budget);
  }
  CHECK_THROWS_AS(compose_bank(1e-6, {}), InputError);
  CHECK_THROWS_AS(compose_bank(1e-6, {-1e-9}), InputError);
  CHECK_THROWS_AS(compose_bank(-1e-6, {1e-9}), InputError);
  // 1 nF parts cannot reach 1 uF with 40 per group.
  CHECK_THROWS_AS(compose_bank(1e-6, {1e-9}, 40), SolverError);
}

TEST_CASE("bank_from_parts") {
  const auto b = bank_from_parts({{470e-9, 3}, {1000e-9, 3}});
  CHECK(b.group_capacitance() == doctest::Approx(4410e-9));
  CHECK(b.effective() == doctest::Approx(2205e-9));
  CHECK_THROWS_AS(bank_from_parts({{470e-9, 0}}), InputError);
}
