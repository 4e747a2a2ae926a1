#pragma once

#include <cstdint>
#include <optional>

namespace apncodes {

struct Witness {
    unsigned k = 0;
    unsigned tau = 0;
    bool operator==(const Witness&) const = default;
};

// (p^k + 1) e = 2 p^tau mod p^m - 1 with gcd(m, k) = 1; first hit in (k, tau) order.
std::optional<Witness> cc_witness(std::uint32_t p, unsigned m, std::uint64_t e);
// 2 (p^k + 1) e = 2 p^tau mod p^m - 1 for even e, no gcd condition.
std::optional<Witness> thm1i_witness(std::uint32_t p, unsigned m, std::uint64_t e);

bool check_cc_witness(std::uint32_t p, unsigned m, std::uint64_t e, const Witness& w);
bool check_thm1i_witness(std::uint32_t p, unsigned m, std::uint64_t e, const Witness& w);

// p^k + 1 reduced mod p^m - 1.
std::uint64_t quadratic_exponent(std::uint32_t p, unsigned m, unsigned k);

}  // namespace apncodes
