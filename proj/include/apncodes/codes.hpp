#pragma once

#include <apncodes/budget.hpp>
#include <apncodes/exp_sums.hpp>
#include <apncodes/field.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apncodes {

// Cyclic code of length q-1 whose codewords are c_j = sum_s Tr(a_s pi^{j i_s}).
struct CodeSpec {
    FieldCtx ctx;
    std::vector<std::uint64_t> exponents;  // reduced mod q-1
    std::vector<std::size_t> coset_sizes;
    std::uint32_t length = 0;
    unsigned dimension = 0;
    // Set when some coset is shorter than m, other than the singleton {(q-1)/2}.
    bool short_coset = false;

    std::string name() const;  // "C(1,8,13)"
};

CodeSpec make_code(const FieldCtx& ctx, std::vector<std::uint64_t> exponents);

// Nonzero coordinates counted one by one.
std::uint32_t codeword_weight(const CodeSpec& code, std::span<const FieldElem> message);
// p^{m-1}(p-1) - (1/p) sum_{y in GF(p)*} S(y a_1, ..., y a_t), S evaluated in Z[w].
std::uint32_t codeword_weight_via_sums(const CodeSpec& code, std::span<const FieldElem> message);

struct WeightDist {
    std::map<std::uint32_t, mpz_class> entries;
    std::uint32_t p = 0;
    unsigned dimension = 0;
    std::uint32_t n = 0;

    mpz_class total() const;
    mpz_class population() const { return mpz_pow(p, dimension); }
    bool population_ok() const { return total() == population(); }
    // sum_i i A_i = n (p-1) p^{dim-1}
    bool first_moment_ok() const;
    bool operator==(const WeightDist& o) const {
        return entries == o.entries && p == o.p && dimension == o.dimension && n == o.n;
    }
};

// Exhaustive over the message space. Components whose coset has size c < m
// range over one representative per distinct trace row (p^c of them), which
// for the singleton coset {(q-1)/2} is one element per value of Tr(c).
WeightDist weight_distribution(const CodeSpec& code, const ScanOptions& opts = {});

enum class EquiStatus { NotApplicable, HypothesisFails, Holds };

struct EquidistributionResult {
    EquiStatus status = EquiStatus::NotApplicable;
    std::optional<unsigned> tau;
    std::optional<WeightDist> dist_d, dist_e;
    bool identical = false;
};

// Hypotheses: d, e outside the coset of 1, 2de = 2p^tau mod q-1 for some tau,
// d + e = 2 mod 2^r with 2^r the largest power of two dividing p-1.
EquidistributionResult equidistribution_check(const FieldCtx& ctx, std::uint64_t d, std::uint64_t e,
                                              const ScanOptions& opts = {});

struct EquiPair {
    std::uint64_t d = 0, e = 0;
    unsigned tau = 0;
};
// Every hypothesis-satisfying (d, e) with d < e, both coset representatives,
// and the d + e condition met by some members of the two cosets.
std::vector<EquiPair> scan_equidistribution_pairs(const FieldCtx& ctx);

struct DualDistance {
    std::optional<unsigned> distance;  // nullopt: no dependency of weight <= bound
    std::vector<std::uint32_t> positions;
    std::vector<std::uint32_t> coefficients;
};

// Smallest w <= bound with sum c_i pi^{j_i i_s} = 0 for every exponent i_s,
// for distinct positions j_i and nonzero c_i in GF(p).
DualDistance dual_min_distance_at_most(const CodeSpec& code, unsigned bound, const Budget& budget = Budget::from_env());

}  // namespace apncodes
