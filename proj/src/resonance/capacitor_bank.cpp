#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fieldforge/errors.hpp"
#include "fieldforge/resonance.hpp"
#include "fieldforge/units.hpp"

namespace fieldforge::resonance {
namespace {

// Values are compared in integer femtofarads so ties are exact.
constexpr double kUnitsPerFarad = 1e15;

struct Search {
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> suffix_max;  // largest value at index >= i
  std::int64_t goal = 0;                  // twice the target: the group sum that hits it
  int budget = 0;

  std::vector<int> counts;
  std::vector<int> best_counts;
  std::int64_t best_diff = std::numeric_limits<std::int64_t>::max();
  int best_parts = std::numeric_limits<int>::max();

  void run(std::size_t i, std::int64_t sum, int parts) {
    if (sum - goal > best_diff) return;
    if (i == values.size()) {
      if (parts == 0) return;
      const std::int64_t diff = sum > goal ? sum - goal : goal - sum;
      if (diff < best_diff || (diff == best_diff && parts < best_parts)) {
        best_diff = diff;
        best_parts = parts;
        best_counts = counts;
      }
      return;
    }
    const int left = budget - parts;
    if (goal - sum - static_cast<std::int64_t>(left) * suffix_max[i] > best_diff) return;
    for (int c = 0; c <= left; ++c) {
      counts[i] = c;
      run(i + 1, sum + c * values[i], parts + c);
      if (sum + c * values[i] - goal > best_diff) break;
    }
    counts[i] = 0;
  }
};

}  // namespace

double CapacitorBank::group_capacitance() const {
  double total = 0.0;
  for (const auto& p : group) total += p.value * p.count;
  return total;
}

int CapacitorBank::part_count() const {
  int n = 0;
  for (const auto& p : group) n += p.count;
  return n;
}

std::string CapacitorBank::describe() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i > 0) out << " + ";
    char value[32];
    std::snprintf(value, sizeof value, "%.6g", group[i].value * 1e9);
    out << group[i].count << " x " << value << " nF";
  }
  out << ") / 2";
  return out.str();
}

CapacitorBank bank_from_parts(std::vector<BankPart> parts) {
  for (const auto& p : parts) {
    if (!(p.value > 0.0) || p.count < 1) throw InputError("bank parts need positive value and count");
  }
  return CapacitorBank{std::move(parts)};
}

CapacitorBank compose_bank(double target, const std::vector<double>& stock, int max_parts_per_group) {
  if (stock.empty()) throw InputError("capacitor stock is empty");
  if (!(target > 0.0)) throw InputError("target capacitance must be positive");
  if (max_parts_per_group < 1) throw InputError("part budget must be at least 1");
  Search s;
  for (double v : stock) {
    if (!(v > 0.0)) throw InputError("stock values must be positive");
    s.values.push_back(std::llround(v * kUnitsPerFarad));
  }
  s.suffix_max.assign(s.values.size() + 1, 0);
  for (std::size_t i = s.values.size(); i-- > 0;) s.suffix_max[i] = std::max(s.values[i], s.suffix_max[i + 1]);
  s.goal = std::llround(2.0 * target * kUnitsPerFarad);
  s.budget = max_parts_per_group;
  s.counts.assign(s.values.size(), 0);
  s.run(0, 0, 0);

  CapacitorBank bank;
  for (std::size_t i = 0; i < stock.size(); ++i) {
    if (s.best_counts[i] > 0) bank.group.push_back({stock[i], s.best_counts[i]});
  }
  if (std::abs(bank.effective() - target) > 0.10 * target) {
    throw SolverError("no capacitor combination within 10% of " + units::format_quantity(target, units::Dimension::capacitance));
  }
  return bank;
}

}  // namespace fieldforge::resonance
