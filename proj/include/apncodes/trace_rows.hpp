#pragma once

#include <apncodes/field.hpp>

#include <cstdint>
#include <vector>

namespace apncodes {

// For a fixed exponent d: row(a)[i] = Tr(a * pi^{i d}), i in [0, q-1).
// All n rows are materialized once so scans reduce to byte-array kernels.
class MonomialTraceRows {
public:
    MonomialTraceRows(const FieldCtx& ctx, std::uint64_t d);

    const std::uint8_t* row(FieldElem a) const {
        return data_.data() + std::size_t(a.is_zero() ? n_ : a.log()) * n_;
    }
    std::uint32_t length() const { return n_; }
    std::uint64_t exponent() const { return d_; }

private:
    std::uint32_t n_;
    std::uint64_t d_;
    std::vector<std::uint8_t> data_;  // n + 1 rows, the last one is the zero row
};

// w_t[i] = t * (-1)^i mod p: the contribution of c x^s with Tr(c) = t, since pi^s = -1.
std::vector<std::uint8_t> alternating_row(const FieldCtx& ctx, std::uint32_t t);

}  // namespace apncodes
