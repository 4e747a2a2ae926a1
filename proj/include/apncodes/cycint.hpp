#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace apncodes {

// Element of Z[w], w a primitive p-th root of unity, stored in the basis
// 1, w, ..., w^{p-2}. Coefficients are arbitrary precision.
class CycInt {
public:
    CycInt() = default;
    explicit CycInt(std::uint32_t p);  // zero
    CycInt(std::uint32_t p, std::vector<mpz_class> coeffs);

    static CycInt integer(std::uint32_t p, const mpz_class& n);
    static CycInt omega_power(std::uint32_t p, std::int64_t k);
    // Sum_t hist[t] w^t for a length-p histogram.
    static CycInt from_trace_histogram(std::uint32_t p, std::span<const std::uint64_t> hist);
    static CycInt from_trace_histogram(std::uint32_t p, std::span<const mpz_class> hist);

    std::uint32_t p() const { return p_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_integer() const;  // lies in Z
    std::optional<mpz_class> as_integer() const;

    CycInt operator-() const;
    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt operator+(const CycInt& o) const { return CycInt(*this) += o; }
    CycInt operator-(const CycInt& o) const { return CycInt(*this) -= o; }
    CycInt operator*(const CycInt& o) const;
    CycInt scale(const mpz_class& k) const;
    // Multiplication by w^k, a coefficient rotation.
    CycInt rotate(std::int64_t k) const;
    // Exact division by an integer; throws IdentityViolated on a remainder.
    CycInt div_exact(const mpz_class& d) const;

    CycInt conj() const;  // w -> w^{-1}

    bool operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }
    std::strong_ordering operator<=>(const CycInt& o) const;

    std::string pretty() const;
    // "3^2", "-3^1*sqrt(-3)" when the value is +-p^j or +-g*p^j, else nullopt.
    std::optional<std::string> symbolic() const;
    nlohmann::json to_json() const;

private:
    // Length-p redundant form -> canonical basis.
    static CycInt canonical(std::uint32_t p, std::vector<mpz_class> full);
    std::vector<mpz_class> full() const;

    std::uint32_t p_ = 0;
    std::vector<mpz_class> c_;
};

// Sum_{y=1}^{p-1} (y/p) w^y; its square is (-1)^{(p-1)/2} p.
CycInt gauss_sum(std::uint32_t p);

std::string to_decimal(const mpz_class& n);
mpz_class mpz_pow(std::uint64_t base, unsigned exp);

}  // namespace apncodes
