#pragma once

#include <cstdint>
#include <string>

namespace apncodes {

// Work limit for exhaustive scans, counted in elementary steps.
// The default comes from APNCODES_BUDGET when set, else 1e8.
struct Budget {
    std::uint64_t steps;

    static Budget from_env();
    static Budget unlimited() { return Budget{UINT64_MAX}; }

    // Throws BudgetExceeded when `work` steps do not fit.
    void require(std::uint64_t work, const std::string& what) const;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

// Saturating helpers for estimating work without overflow.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t base, unsigned exp);

}  // namespace apncodes
