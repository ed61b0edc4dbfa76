#pragma once

#include <cstdint>
#include <vector>

#include "pedcon/types.hpp"

// Direct counting of ped(n) by dynamic programming over parts not divisible
// by 4. This path shares nothing with the q-series code and serves as its
// oracle.
namespace pedcon::partitions {

inline constexpr std::int64_t kExactBudget = 100'000;
inline constexpr std::int64_t kModularBudget = 200'000;

// ped(0..nmax) exactly. Throws BudgetError when nmax > budget.
std::vector<Integer> ped_count_table(std::int64_t nmax, std::int64_t budget = kExactBudget);

Integer ped_count(std::int64_t n, std::int64_t budget = kExactBudget);

// ped(0..nmax) mod m, for 2 <= m < 2^31.
std::vector<std::uint32_t> ped_count_table_mod(std::int64_t nmax, std::uint32_t m,
                                               std::int64_t budget = kModularBudget);

}  // namespace pedcon::partitions
