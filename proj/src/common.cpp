#include <apncodes/budget.hpp>
#include <apncodes/error.hpp>
#include <apncodes/parallel.hpp>

#include <cstdlib>
#include <string>

namespace apncodes {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::BadK: return "BadK";
        case ErrorCode::NoCertificate: return "NoCertificate";
        case ErrorCode::IdentityViolated: return "IdentityViolated";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::OverlappingCosets: return "OverlappingCosets";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::NotApplicable: return "NotApplicable";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "Error";
}

Budget Budget::from_env() {
    if (const char* env = std::getenv("APNCODES_BUDGET")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v >= 1) {
            return Budget{v >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(v)};
        }
    }
    return Budget{kDefaultBudget};
}

void Budget::require(std::uint64_t work, const std::string& what) const {
    if (work > steps) {
        fail(ErrorCode::BudgetExceeded, what + " needs " + std::to_string(work) + " steps, budget is " +
                                            std::to_string(steps));
    }
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return UINT64_MAX;
    return r;
}

std::uint64_t sat_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r = sat_mul(r, base);
    return r;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace apncodes
