#include "mal/budget.hpp"

#include <cstdlib>
#include <string>

#include "mal/error.hpp"

namespace mal {

std::uint64_t enumeration_budget() {
  std::uint64_t budget = kDefaultEnumerationBudget;
  if (const char* env = std::getenv("MAL_BUDGET")) {
    try {
      unsigned long long v = std::stoull(env);
      if (v > 0 && v < budget) budget = v;  // override may only lower the cap
    } catch (...) {
      // ignore malformed values, keep the default
    }
  }
  return budget;
}

void check_budget(std::uint64_t cases, const char* site) {
  std::uint64_t budget = enumeration_budget();
  if (cases > budget) {
    fail(Errc::budget_exceeded, std::string(site) + ": " + std::to_string(cases) +
                                    " cases exceed the enumeration budget of " +
                                    std::to_string(budget));
  }
}

}  // namespace mal
