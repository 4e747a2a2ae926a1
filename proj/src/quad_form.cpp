#include <apncodes/congruence.hpp>
#include <apncodes/error.hpp>
#include <apncodes/parallel.hpp>
#include <apncodes/quad_form.hpp>

namespace apncodes {

namespace {

std::uint32_t inverse_mod(std::uint32_t x, std::uint32_t p) {
    std::uint64_t r = 1, base = x % p;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(r);
}

}  // namespace

std::uint32_t QuadForm::evaluate(FieldElem x) const {
    if (x.is_zero()) return 0;
    const std::uint64_t d = quadratic_exponent(ctx.p(), ctx.m(), k);
    FieldElem v = ctx.add(ctx.mul(a, ctx.pow(x, static_cast<std::int64_t>(d))), ctx.mul(b, ctx.mul(x, x)));
    return ctx.trace(v);
}

std::uint32_t QuadForm::evaluate_coordinates(const std::vector<std::uint32_t>& c) const {
    const std::uint32_t p = ctx.p();
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        std::uint64_t row = 0;
        for (std::size_t j = 0; j < c.size(); ++j) row += std::uint64_t(gram[i][j]) * c[j];
        s = (s + (row % p) * c[i]) % p;
    }
    return static_cast<std::uint32_t>(s);
}

QuadForm build_form(const FieldCtx& ctx, FieldElem a, FieldElem b, unsigned k) {
    if (k < 1 || gcd_u64(ctx.m(), k) != 1) fail(ErrorCode::BadK, "gcd(m, k) must be 1");
    QuadForm f{ctx, a, b, k, {}};
    const unsigned m = ctx.m();
    const std::uint32_t p = ctx.p();
    const std::uint32_t half = inverse_mod(2, p);
    std::vector<FieldElem> basis(m);
    for (unsigned i = 0; i < m; ++i) {
        std::vector<std::uint32_t> e(m, 0);
        e[i] = 1;
        basis[i] = ctx.from_coordinates(e);
    }
    f.gram.assign(m, std::vector<std::uint32_t>(m, 0));
    for (unsigned i = 0; i < m; ++i) {
        for (unsigned j = 0; j < m; ++j) {
            std::uint32_t both = f.evaluate(ctx.add(basis[i], basis[j]));
            std::uint32_t diff = (both + 2 * p - f.evaluate(basis[i]) - f.evaluate(basis[j])) % p;
            f.gram[i][j] = static_cast<std::uint32_t>(std::uint64_t(diff) * half % p);
        }
    }
    return f;
}

unsigned matrix_rank(std::vector<std::vector<std::uint32_t>> mat, std::uint32_t p) {
    const std::size_t rows = mat.size();
    const std::size_t cols = rows == 0 ? 0 : mat[0].size();
    unsigned r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t pivot = r;
        while (pivot < rows && mat[pivot][col] % p == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(mat[pivot], mat[r]);
        const std::uint64_t inv = inverse_mod(mat[r][col], p);
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == r || mat[row][col] == 0) continue;
            const std::uint64_t factor = mat[row][col] * inv % p;
            for (std::size_t c = col; c < cols; ++c) {
                mat[row][c] = static_cast<std::uint32_t>((mat[row][c] + (p - factor) * mat[r][c]) % p);
            }
        }
        ++r;
    }
    return r;
}

unsigned rank(const QuadForm& form) { return matrix_rank(form.gram, form.ctx.p()); }

CycInt form_sum(const QuadForm& form) {
    const std::uint32_t p = form.ctx.p();
    const unsigned m = form.ctx.m();
    std::vector<std::uint64_t> hist(p, 0);
    std::vector<std::uint32_t> c(m, 0);
    while (true) {
        ++hist[form.evaluate_coordinates(c)];
        unsigned i = 0;
        while (i < m && ++c[i] == p) c[i++] = 0;
        if (i == m) break;
    }
    return CycInt::from_trace_histogram(p, hist);
}

CycInt nu_value(std::uint32_t p, unsigned m, unsigned i) {
    if (i >= m) return CycInt::integer(p, mpz_pow(p, m));
    if (i % 2 == 1) return CycInt::integer(p, mpz_pow(p, (m + i) / 2));
    return gauss_sum(p).scale(mpz_pow(p, (m + i - 1) / 2));
}

RankScan rank_scan(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    const std::uint32_t q = ctx.q(), p = ctx.p();
    const unsigned m = ctx.m();
    opts.budget.require(sat_pow(q, 3), "rank scan");
    // Per form: rank, and the sign s with form_sum = s nu_{m-r} (0 when it is neither).
    std::vector<std::uint8_t> ranks(std::size_t(q) * q);
    std::vector<std::int8_t> signs(std::size_t(q) * q);
    std::vector<CycInt> nu(m + 1);
    for (unsigned r = 0; r <= m; ++r) nu[r] = nu_value(p, m, m - r);
    parallel_chunks<int>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t ia = begin; ia < end; ++ia) {
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                QuadForm f = build_form(ctx, ctx.element(static_cast<std::uint32_t>(ia)), ctx.element(ib), k);
                const unsigned r = rank(f);
                const CycInt s = form_sum(f);
                const std::size_t at = ia * q + ib;
                ranks[at] = static_cast<std::uint8_t>(r);
                signs[at] = s == nu[r] ? 1 : (s == -nu[r] && r > 0 ? -1 : 0);
            }
        }
        return 0;
    });
    RankScan out;
    for (std::uint32_t ia = 0; ia < q; ++ia) {
        const FieldElem a = ctx.element(ia);
        const std::uint32_t ina = ctx.index_of(ctx.neg(a));
        for (std::uint32_t ib = 0; ib < q; ++ib) {
            if (ia == 0 && ib == 0) continue;
            const std::size_t at = std::size_t(ia) * q + ib;
            const unsigned r = ranks[at], rn = ranks[std::size_t(ina) * q + ib];
            ++out.forms;
            ++out.pair_histogram[{r, rn}];
            if (r + 2 < m) ++out.below_bound;
            if (ia != 0 && m % 2 == 1 && r != m && rn != m) ++out.pairing_failures;
            if (signs[at] == 0) ++out.sum_mismatches;
            for (std::uint32_t y = 2; y < p; ++y) {
                const FieldElem fy = ctx.from_prime_field(y);
                const std::size_t ay = std::size_t(ctx.index_of(ctx.mul(fy, a))) * q + ctx.index_of(ctx.mul(fy, ctx.element(ib)));
                const int chi = (r % 2 == 0) ? 1 : legendre(y, p);
                if (ranks[ay] != r || signs[ay] != chi * signs[at]) ++out.scaling_failures;
            }
        }
    }
    return out;
}

}  // namespace apncodes
