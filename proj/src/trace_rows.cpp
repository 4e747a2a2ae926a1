#include <apncodes/error.hpp>
#include <apncodes/kernels.hpp>
#include <apncodes/trace_rows.hpp>

namespace apncodes {

MonomialTraceRows::MonomialTraceRows(const FieldCtx& ctx, std::uint64_t d) : n_(ctx.order()), d_(d % ctx.order()) {
    if (ctx.p() > kernels::kMaxKernelPrime) fail(ErrorCode::UsageError, "scan kernels need p <= 251");
    if (n_ > 40000) fail(ErrorCode::BudgetExceeded, "trace row table would exceed 1.6 GB");
    data_.assign(std::size_t(n_ + 1) * n_, 0);
    const std::uint8_t* tr = ctx.trace_log_bytes().data();
    for (std::uint32_t beta = 0; beta < n_; ++beta) {
        std::uint8_t* out = data_.data() + std::size_t(beta) * n_;
        std::uint64_t idx = beta;
        for (std::uint32_t i = 0; i < n_; ++i) {
            out[i] = tr[idx];
            idx += d_;
            if (idx >= n_) idx -= n_;
        }
    }
}

std::vector<std::uint8_t> alternating_row(const FieldCtx& ctx, std::uint32_t t) {
    const std::uint32_t p = ctx.p();
    std::vector<std::uint8_t> w(ctx.order());
    const auto pos = static_cast<std::uint8_t>(t % p);
    const auto negv = static_cast<std::uint8_t>((p - t % p) % p);
    for (std::uint32_t i = 0; i < w.size(); ++i) w[i] = (i % 2 == 0) ? pos : negv;
    return w;
}

}  // namespace apncodes
