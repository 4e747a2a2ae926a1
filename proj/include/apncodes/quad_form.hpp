#pragma once

#include <apncodes/cycint.hpp>
#include <apncodes/exp_sums.hpp>
#include <apncodes/field.hpp>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace apncodes {

// Q(x) = Tr(a x^{p^k+1} + b x^2) as a form in the coordinates of the
// polynomial basis 1, x, ..., x^{m-1}.
struct QuadForm {
    FieldCtx ctx;
    FieldElem a, b;
    unsigned k = 1;
    std::vector<std::vector<std::uint32_t>> gram;  // symmetric, entries in GF(p)

    // Q evaluated straight from the trace definition.
    std::uint32_t evaluate(FieldElem x) const;
    // c^T gram c.
    std::uint32_t evaluate_coordinates(const std::vector<std::uint32_t>& c) const;
};

QuadForm build_form(const FieldCtx& ctx, FieldElem a, FieldElem b, unsigned k);

// Rank of a square matrix over GF(p).
unsigned matrix_rank(std::vector<std::vector<std::uint32_t>> mat, std::uint32_t p);
unsigned rank(const QuadForm& form);

// sum_x w^{Q(x)}, summed over coordinate vectors through the Gram matrix.
CycInt form_sum(const QuadForm& form);

// The value the rank predicts up to sign: nu_i with i = m - r, where
// nu_i = p^{(m+i)/2} for odd i and g p^{(m+i-1)/2} for even i; q when r = 0.
CycInt nu_value(std::uint32_t p, unsigned m, unsigned i);

// Exhaustive over (a, b) != (0, 0).
struct RankScan {
    std::map<std::pair<unsigned, unsigned>, std::uint64_t> pair_histogram;  // (rank(a,b), rank(-a,b))
    std::uint64_t forms = 0;
    std::uint64_t below_bound = 0;       // rank < m - 2
    std::uint64_t pairing_failures = 0;  // a != 0, neither rank(a,b) nor rank(-a,b) is m
    std::uint64_t sum_mismatches = 0;    // form_sum is not +-nu_{m-r}
    std::uint64_t scaling_failures = 0;  // form_sum(ya, yb) != (y^r/p) form_sum(a, b)
    bool ok() const { return below_bound == 0 && pairing_failures == 0 && sum_mismatches == 0 && scaling_failures == 0; }
};

RankScan rank_scan(const FieldCtx& ctx, unsigned k, const ScanOptions& opts = {});

}  // namespace apncodes
