#include "pedcon/partitions.hpp"

#include <string>

namespace pedcon::partitions {
namespace {

void check_range(std::int64_t nmax, std::int64_t budget) {
  if (nmax < 0) throw PreconditionError("ped_count: n must be nonnegative");
  if (nmax > budget) {
    throw BudgetError("ped_count: n = " + std::to_string(nmax) + " exceeds the budget of " +
                      std::to_string(budget));
  }
}

}  // namespace

std::vector<Integer> ped_count_table(std::int64_t nmax, std::int64_t budget) {
  check_range(nmax, budget);
  const auto n = static_cast<std::size_t>(nmax);
  std::vector<Integer> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t part = 1; part <= n; ++part) {
    if (part % 4 == 0) continue;
    for (std::size_t s = part; s <= n; ++s) ways[s] += ways[s - part];
  }
  return ways;
}

Integer ped_count(std::int64_t n, std::int64_t budget) { return ped_count_table(n, budget).back(); }

std::vector<std::uint32_t> ped_count_table_mod(std::int64_t nmax, std::uint32_t m, std::int64_t budget) {
  check_range(nmax, budget);
  if (m < 2 || m >= (1U << 31)) throw PreconditionError("ped_count_table_mod: modulus out of range");
  const auto n = static_cast<std::size_t>(nmax);
  std::vector<std::uint32_t> ways(n + 1, 0);
  ways[0] = 1 % m;
  for (std::size_t part = 1; part <= n; ++part) {
    if (part % 4 == 0) continue;
    for (std::size_t s = part; s <= n; ++s) {
      std::uint32_t v = ways[s] + ways[s - part];
      ways[s] = v >= m ? v - m : v;
    }
  }
  return ways;
}

}  // namespace pedcon::partitions
