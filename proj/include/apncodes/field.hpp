#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace apncodes {

// Polynomial over GF(p), coefficients c0..cd (constant term first).
using Poly = std::vector<std::uint32_t>;

// Zero or a power of the primitive element.
class FieldElem {
public:
    static constexpr std::uint32_t kZeroRep = 0xFFFFFFFFu;

    constexpr FieldElem() = default;
    static constexpr FieldElem zero() { return FieldElem(); }
    static constexpr FieldElem from_log(std::uint32_t i) { return FieldElem(i); }

    constexpr bool is_zero() const { return rep_ == kZeroRep; }
    constexpr std::uint32_t log() const { return rep_; }
    constexpr std::uint32_t rep() const { return rep_; }

    constexpr auto operator<=>(const FieldElem&) const = default;

private:
    constexpr explicit FieldElem(std::uint32_t rep) : rep_(rep) {}
    std::uint32_t rep_ = kZeroRep;
};

struct Coset {
    std::uint64_t representative = 0;
    std::vector<std::uint64_t> members;

    std::size_t size() const { return members.size(); }
    bool contains(std::uint64_t j) const;
};

// GF(p^m) with pi = x mod modulus. Cheap to copy: tables are shared and immutable.
class FieldCtx {
public:
    std::uint32_t p() const { return t_->p; }
    unsigned m() const { return t_->m; }
    std::uint32_t q() const { return t_->q; }
    std::uint32_t order() const { return t_->q - 1; }  // n = q - 1
    const Poly& modulus() const { return t_->modulus; }

    // Enumeration order used by every scan: index 0 is zero, index i+1 is pi^i.
    FieldElem element(std::uint32_t index) const {
        return index == 0 ? FieldElem::zero() : FieldElem::from_log(index - 1);
    }
    std::uint32_t index_of(FieldElem x) const { return x.is_zero() ? 0 : x.log() + 1; }

    FieldElem one() const { return FieldElem::from_log(0); }
    FieldElem primitive() const { return FieldElem::from_log(1 % order()); }
    FieldElem minus_one() const { return FieldElem::from_log(order() / 2); }

    // Vector representation: coordinates in the polynomial basis packed base p
    // (coefficient of x^0 least significant).
    std::uint32_t to_vector(FieldElem x) const { return x.is_zero() ? 0 : t_->antilog[x.log()]; }
    FieldElem from_vector(std::uint32_t v) const;
    std::vector<std::uint32_t> coordinates(FieldElem x) const;
    FieldElem from_coordinates(std::span<const std::uint32_t> c) const;
    FieldElem from_prime_field(std::int64_t c) const;  // embeds c mod p
    std::optional<std::uint32_t> to_prime_field(FieldElem x) const;

    FieldElem add(FieldElem x, FieldElem y) const;
    FieldElem sub(FieldElem x, FieldElem y) const { return add(x, neg(y)); }
    FieldElem neg(FieldElem x) const;
    FieldElem mul(FieldElem x, FieldElem y) const;
    FieldElem inv(FieldElem x) const;
    FieldElem div(FieldElem x, FieldElem y) const { return mul(x, inv(y)); }
    // Exponent taken mod q-1 on nonzero bases; negative exponents allowed.
    FieldElem pow(FieldElem x, std::int64_t e) const;
    FieldElem frobenius(FieldElem x, unsigned j) const;  // x^{p^j}

    std::uint32_t trace(FieldElem x) const { return x.is_zero() ? 0 : t_->trace_log[x.log()]; }
    // Trace of pi^i for i in [0, 2n): the doubled layout lets callers take
    // any rotation as one contiguous span.
    std::span<const std::uint8_t> trace_log_bytes() const { return t_->trace_log_bytes; }
    bool is_square(FieldElem x) const { return x.is_zero() || x.log() % 2 == 0; }

    nlohmann::json descriptor() const;

private:
    struct Tables {
        std::uint32_t p = 0;
        unsigned m = 0;
        std::uint32_t q = 0;
        Poly modulus;
        std::vector<std::uint32_t> antilog;    // i -> packed vector of pi^i
        std::vector<std::uint32_t> log;        // packed vector -> i (entry 0 unused)
        std::vector<std::uint32_t> zech;       // i -> log(1 + pi^i), kZeroRep when it vanishes
        std::vector<std::uint32_t> trace_vec;  // packed vector -> trace
        std::vector<std::uint32_t> trace_log;  // i -> trace(pi^i)
        std::vector<std::uint8_t> trace_log_bytes;
    };
    std::shared_ptr<const Tables> t_;

    friend FieldCtx build_field(std::uint32_t, unsigned, const std::optional<Poly>&);
};

inline constexpr std::uint32_t kMaxFieldSize = 1u << 24;

// Canonical modulus unless `modulus_override` is given.
FieldCtx build_field(std::uint32_t p, unsigned m, const std::optional<Poly>& modulus_override = std::nullopt);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);  // throws on overflow
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

// x generates (GF(p)[x]/f)^*; f must be monic.
bool is_primitive_polynomial(std::uint32_t p, const Poly& f);
// First `count` primitive moduli of degree m in canonical order.
std::vector<Poly> primitive_moduli(std::uint32_t p, unsigned m, std::size_t count);

int legendre(std::int64_t y, std::uint32_t p);

Coset cyclotomic_coset(std::uint64_t p, std::uint64_t n, std::uint64_t j);
std::vector<Coset> all_cosets(std::uint64_t p, std::uint64_t n);

// Minimal polynomial of pi^{-i} over GF(p).
Poly minimal_polynomial(const FieldCtx& ctx, std::uint64_t i);

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p);
std::string poly_to_string(const Poly& f);

}  // namespace apncodes
