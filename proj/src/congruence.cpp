#include <apncodes/congruence.hpp>
#include <apncodes/field.hpp>

namespace apncodes {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t b, unsigned e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    for (unsigned i = 0; i < e; ++i) r = mulmod(r, b, n);
    return r;
}

bool holds(std::uint32_t p, unsigned m, std::uint64_t e, const Witness& w, std::uint64_t factor) {
    const std::uint64_t n = ipow(p, m) - 1;
    std::uint64_t lhs = mulmod(mulmod(factor, quadratic_exponent(p, m, w.k), n), e % n, n);
    std::uint64_t rhs = mulmod(2, powmod(p, w.tau, n), n);
    return lhs == rhs;
}

}  // namespace

std::uint64_t quadratic_exponent(std::uint32_t p, unsigned m, unsigned k) {
    const std::uint64_t n = ipow(p, m) - 1;
    return (powmod(p, k, n) + 1) % n;
}

bool check_cc_witness(std::uint32_t p, unsigned m, std::uint64_t e, const Witness& w) {
    return w.k >= 1 && gcd_u64(m, w.k) == 1 && holds(p, m, e, w, 1);
}

bool check_thm1i_witness(std::uint32_t p, unsigned m, std::uint64_t e, const Witness& w) {
    return w.k >= 1 && e % 2 == 0 && holds(p, m, e, w, 2);
}

std::optional<Witness> cc_witness(std::uint32_t p, unsigned m, std::uint64_t e) {
    for (unsigned k = 1; k <= m; ++k) {
        if (gcd_u64(m, k) != 1) continue;
        for (unsigned tau = 0; tau < m; ++tau) {
            if (holds(p, m, e, {k, tau}, 1)) return Witness{k, tau};
        }
    }
    return std::nullopt;
}

std::optional<Witness> thm1i_witness(std::uint32_t p, unsigned m, std::uint64_t e) {
    if (e % 2 != 0) return std::nullopt;
    for (unsigned k = 1; k <= m; ++k) {
        for (unsigned tau = 0; tau < m; ++tau) {
            if (holds(p, m, e, {k, tau}, 2)) return Witness{k, tau};
        }
    }
    return std::nullopt;
}

}  // namespace apncodes
