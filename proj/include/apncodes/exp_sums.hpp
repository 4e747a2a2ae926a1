#pragma once

#include <apncodes/budget.hpp>
#include <apncodes/congruence.hpp>
#include <apncodes/cycint.hpp>
#include <apncodes/field.hpp>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace apncodes {

struct ScanOptions {
    unsigned threads = 1;
    Budget budget = Budget::from_env();
};

struct ValueDist {
    std::map<CycInt, mpz_class> entries;
    mpz_class population = 0;

    void add(const CycInt& v, const mpz_class& count);
    mpz_class total() const;
    bool operator==(const ValueDist& o) const { return entries == o.entries && population == o.population; }
};

using CycPair = std::pair<CycInt, CycInt>;

struct PairDist {
    std::map<CycPair, mpz_class> entries;
    mpz_class population = 0;

    void add(const CycPair& v, const mpz_class& count);
    mpz_class total() const;
    PairDist swapped() const;
    ValueDist first_marginal() const;
    mpz_class count(const CycInt& x, const CycInt& y) const;
    bool operator==(const PairDist& o) const { return entries == o.entries && population == o.population; }
};

// One field element per trace value: omega_t = t * delta, delta the first
// element in antilog order with trace 1.
struct OmegaSet {
    std::vector<FieldElem> reps;
    static OmegaSet canonical(const FieldCtx& ctx);
};

void require_valid_k(const FieldCtx& ctx, unsigned k);

// sum_x w^{Tr(a x^{p^k+1} + b x^2)}
CycInt quadratic_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, unsigned k);
// sum_x w^{Tr(a x + b x^e)}
CycInt binomial_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e);
// sum_x w^{Tr(a x + b x^e + c x^s)}, s = (q-1)/2
CycInt trinomial_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e);

// The same sums through the quadratic sums, for exponents certified by `w`.
CycInt binomial_sum_reduced(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e, const Witness& w);
CycInt trinomial_sum_reduced(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e,
                             const Witness& w);

// Both routes, which must agree. Require p = 3 mod 4, m odd and a
// Congruence Condition witness for e (NoCertificate otherwise).
CycInt binomial_sum_checked(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e);
CycInt trinomial_sum_checked(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e);

ValueDist quadratic_sum_distribution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});
PairDist quadratic_pair_distribution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});
// Over (a, b) in F_q^2; every value is checked against the reduction.
ValueDist binomial_sum_distribution(const FieldCtx& ctx, std::uint64_t e, const ScanOptions& opts = {});
// Over (a, b, c) in F_q^2 x Omega.
ValueDist trinomial_sum_distribution(const FieldCtx& ctx, std::uint64_t e, const ScanOptions& opts = {});

struct PowerSums {
    mpz_class p1, p2;
    mpz_class expected_p1, expected_p2;
};
// Exact sums of T0(a,b) T0(-a,b) and T0(a,b)^3 T0(-a,b); IdentityViolated if
// either is irrational or differs from its closed form.
PowerSums power_sum_checks(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});

mpz_class n4_formula(std::uint32_t p, unsigned m);  // 2q^2 - qp - q + p
// The same count by looping over all q^4 quadruples.
mpz_class n4_bruteforce(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});
// #{x^2+y^2+z^2+w^2 = 0, x^d+y^d+z^d-w^d = 0}, d = p^k+1, by convolving
// the counts of the (x, y) and (z, w) halves.
mpz_class n4_convolution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});

// A(u, v) = #{x^2+y^2 = u, x^d+y^d = v} and B(u, v) = #{z^2+w^2 = u, z^d-w^d = v},
// indexed by (index_of(u), index_of(v)).
struct HalfCounts {
    std::uint32_t q = 0;
    std::vector<std::uint32_t> plus, minus;
    std::uint32_t a(FieldElem u, FieldElem v, const FieldCtx& ctx) const {
        return plus[std::size_t(ctx.index_of(u)) * q + ctx.index_of(v)];
    }
    std::uint32_t b(FieldElem u, FieldElem v, const FieldCtx& ctx) const {
        return minus[std::size_t(ctx.index_of(u)) * q + ctx.index_of(v)];
    }
};
HalfCounts half_counts(const FieldCtx& ctx, unsigned k, const Budget& budget);

struct AppendixCounts {
    std::uint64_t n1 = 0, n2 = 0;
};
// N1 = #{x^2+y^2 = alpha, x^d+y^d = beta}; N2 = #{z^2+w^2 = -alpha, z^d-w^d = -beta}.
AppendixCounts appendix_counts(const FieldCtx& ctx, unsigned k, FieldElem alpha, FieldElem beta,
                               const Budget& budget = Budget::from_env());

struct AppendixReport {
    unsigned k_requested = 0;
    unsigned k_used = 0;  // odd k is replaced by m - k
    std::uint64_t n1_violations = 0;
    std::uint64_t n2_violations = 0;
    std::uint64_t product_violations = 0;
    std::uint64_t circle_violations = 0;
    std::uint64_t s1_violations = 0;
    std::uint64_t expected_s1 = 0;
    std::map<std::uint64_t, std::uint64_t> n1_values, n2_values;  // value -> #(alpha, beta), alpha beta != 0
    std::map<std::uint64_t, std::uint64_t> s1_sizes;              // |S1(alpha)| -> #alpha
    bool zero_cases_ok = false;
    mpz_class n4_from_s1;
    bool ok() const;
};
// Scans every (alpha, beta) against the value sets the counting argument
// derives (requires p = 3 mod 4 and odd m).
AppendixReport verify_appendix(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});

}  // namespace apncodes
