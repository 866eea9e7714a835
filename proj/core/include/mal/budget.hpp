#pragma once

#include <cstdint>

namespace mal {

// Every exhaustive enumeration (sign patterns, atoms, outcomes, partition
// scans) is capped. The default cap is 2^20 cases; the MAL_BUDGET environment
// variable may lower it, never raise it.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 20;

std::uint64_t enumeration_budget();

// Throws Errc::budget_exceeded if `cases` exceeds the active budget.
// `site` names the operation for the error message.
void check_budget(std::uint64_t cases, const char* site);

}  // namespace mal
