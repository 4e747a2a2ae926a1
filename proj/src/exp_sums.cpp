#include <apncodes/error.hpp>
#include <apncodes/exp_sums.hpp>
#include <apncodes/kernels.hpp>
#include <apncodes/parallel.hpp>
#include <apncodes/trace_rows.hpp>

#include <algorithm>

namespace apncodes {

void ValueDist::add(const CycInt& v, const mpz_class& count) {
    if (count == 0) return;
    entries[v] += count;
}

mpz_class ValueDist::total() const {
    mpz_class t = 0;
    for (const auto& [v, c] : entries) t += c;
    return t;
}

void PairDist::add(const CycPair& v, const mpz_class& count) {
    if (count == 0) return;
    entries[v] += count;
}

mpz_class PairDist::total() const {
    mpz_class t = 0;
    for (const auto& [v, c] : entries) t += c;
    return t;
}

PairDist PairDist::swapped() const {
    PairDist out;
    out.population = population;
    for (const auto& [v, c] : entries) out.add({v.second, v.first}, c);
    return out;
}

ValueDist PairDist::first_marginal() const {
    ValueDist out;
    out.population = population;
    for (const auto& [v, c] : entries) out.add(v.first, c);
    return out;
}

mpz_class PairDist::count(const CycInt& x, const CycInt& y) const {
    auto it = entries.find({x, y});
    return it == entries.end() ? mpz_class(0) : it->second;
}

OmegaSet OmegaSet::canonical(const FieldCtx& ctx) {
    FieldElem delta;
    bool found = false;
    for (std::uint32_t i = 0; i < ctx.order(); ++i) {
        if (ctx.trace(FieldElem::from_log(i)) == 1) {
            delta = FieldElem::from_log(i);
            found = true;
            break;
        }
    }
    if (!found) fail(ErrorCode::IdentityViolated, "trace is not surjective");
    OmegaSet out;
    for (std::uint32_t t = 0; t < ctx.p(); ++t) out.reps.push_back(ctx.mul(ctx.from_prime_field(t), delta));
    return out;
}

void require_valid_k(const FieldCtx& ctx, unsigned k) {
    if (k < 1 || gcd_u64(ctx.m(), k) != 1) {
        fail(ErrorCode::BadK, "k = " + std::to_string(k) + " needs k >= 1 and gcd(m, k) = 1 with m = " +
                                  std::to_string(ctx.m()));
    }
}

namespace {

using Hist = std::vector<std::uint64_t>;

// x^e for a positive exponent e, so 0^e = 0 even when e = 0 mod q-1.
FieldElem monomial(const FieldCtx& ctx, FieldElem x, std::uint64_t e) {
    if (x.is_zero()) return x;
    return ctx.pow(x, static_cast<std::int64_t>(e % ctx.order()));
}

std::uint64_t field_work(const FieldCtx& ctx, unsigned arity) {
    return sat_pow(ctx.q(), arity);
}

void require_sum_hypotheses(const FieldCtx& ctx) {
    if (ctx.p() % 4 != 3 || ctx.m() % 2 == 0) {
        fail(ErrorCode::HypothesisViolated, "the reduction to quadratic sums needs p = 3 mod 4 and odd m");
    }
}

Witness require_witness(const FieldCtx& ctx, std::uint64_t e) {
    auto w = cc_witness(ctx.p(), ctx.m(), e % ctx.order());
    if (!w) fail(ErrorCode::NoCertificate, "e = " + std::to_string(e) + " fails the Congruence Condition");
    return *w;
}

// T0 trace histograms for every (a, b), a-major in enumeration order.
class QuadraticTable {
public:
    QuadraticTable(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) : q_(ctx.q()), p_(ctx.p()) {
        require_valid_k(ctx, k);
        opts.budget.require(field_work(ctx, 3), "quadratic sum table");
        MonomialTraceRows rows_d(ctx, quadratic_exponent(ctx.p(), ctx.m(), k));
        MonomialTraceRows rows_sq(ctx, 2);
        hist_.assign(std::size_t(q_) * q_ * p_, 0);
        const std::uint32_t n = ctx.order();
        parallel_chunks<int>(q_, opts.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t ia = begin; ia < end; ++ia) {
                const std::uint8_t* ra = rows_d.row(ctx.element(static_cast<std::uint32_t>(ia)));
                for (std::uint32_t ib = 0; ib < q_; ++ib) {
                    std::uint32_t* h = &hist_[(ia * q_ + ib) * p_];
                    std::uint64_t counts[kernels::kMaxKernelPrime + 1] = {};
                    kernels::residue_histogram(ra, rows_sq.row(ctx.element(ib)), nullptr, n, p_, counts);
                    counts[0] += 1;  // x = 0
                    for (std::uint32_t t = 0; t < p_; ++t) h[t] = static_cast<std::uint32_t>(counts[t]);
                }
            }
            return 0;
        });
    }

    std::span<const std::uint32_t> hist(const FieldCtx& ctx, FieldElem a, FieldElem b) const {
        return {&hist_[(std::size_t(ctx.index_of(a)) * q_ + ctx.index_of(b)) * p_], p_};
    }

    CycInt value(const FieldCtx& ctx, FieldElem a, FieldElem b) const {
        auto h = hist(ctx, a, b);
        Hist wide(h.begin(), h.end());
        return CycInt::from_trace_histogram(p_, wide);
    }

private:
    std::uint32_t q_, p_;
    std::vector<std::uint32_t> hist_;
};

FieldElem frobenius_shift(const FieldCtx& ctx, FieldElem b, const Witness& w) {
    return ctx.frobenius(b, (ctx.m() - w.tau % ctx.m()) % ctx.m());
}

FieldElem sign_e(const FieldCtx& ctx, FieldElem b, std::uint64_t e) { return e % 2 == 0 ? b : ctx.neg(b); }

// (T0(a, b') + T0(-a, +-b')) / 2
CycInt binomial_from_quadratic(const CycInt& plus, const CycInt& minus) { return (plus + minus).div_exact(2); }

// (2 - w^t - w^-t + w^t T0(a, b') + w^-t T0(-a, +-b')) / 2
CycInt trinomial_from_quadratic(const CycInt& plus, const CycInt& minus, std::uint32_t t) {
    const std::uint32_t p = plus.p();
    CycInt twice = CycInt::integer(p, 2) - CycInt::omega_power(p, t) - CycInt::omega_power(p, -std::int64_t(t));
    twice += plus.rotate(t);
    twice += minus.rotate(-std::int64_t(t));
    return twice.div_exact(2);
}

template <class Key>
void merge_into(std::map<Key, mpz_class>& out, const std::map<Key, std::uint64_t>& local) {
    for (const auto& [k, c] : local) {
        mpz_class v;
        mpz_import(v.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &c);
        out[k] += v;
    }
}

}  // namespace

CycInt quadratic_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, unsigned k) {
    require_valid_k(ctx, k);
    const std::uint64_t d = quadratic_exponent(ctx.p(), ctx.m(), k);
    Hist h(ctx.p(), 0);
    for (std::uint32_t idx = 0; idx < ctx.q(); ++idx) {
        FieldElem x = ctx.element(idx);
        FieldElem v = ctx.add(ctx.mul(a, monomial(ctx, x, d)), ctx.mul(b, ctx.mul(x, x)));
        ++h[ctx.trace(v)];
    }
    return CycInt::from_trace_histogram(ctx.p(), h);
}

CycInt binomial_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e) {
    Hist h(ctx.p(), 0);
    for (std::uint32_t idx = 0; idx < ctx.q(); ++idx) {
        FieldElem x = ctx.element(idx);
        FieldElem v = ctx.add(ctx.mul(a, x), ctx.mul(b, monomial(ctx, x, e)));
        ++h[ctx.trace(v)];
    }
    return CycInt::from_trace_histogram(ctx.p(), h);
}

CycInt trinomial_sum(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e) {
    const std::uint64_t s = ctx.order() / 2;
    Hist h(ctx.p(), 0);
    for (std::uint32_t idx = 0; idx < ctx.q(); ++idx) {
        FieldElem x = ctx.element(idx);
        FieldElem v = ctx.add(ctx.mul(a, x), ctx.mul(b, monomial(ctx, x, e)));
        v = ctx.add(v, ctx.mul(c, monomial(ctx, x, s)));
        ++h[ctx.trace(v)];
    }
    return CycInt::from_trace_histogram(ctx.p(), h);
}

CycInt binomial_sum_reduced(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e, const Witness& w) {
    if (!check_cc_witness(ctx.p(), ctx.m(), e % ctx.order(), w)) fail(ErrorCode::NoCertificate, "invalid witness");
    FieldElem bp = frobenius_shift(ctx, b, w);
    return binomial_from_quadratic(quadratic_sum(ctx, a, bp, w.k),
                                   quadratic_sum(ctx, ctx.neg(a), sign_e(ctx, bp, e), w.k));
}

CycInt trinomial_sum_reduced(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e,
                             const Witness& w) {
    if (!check_cc_witness(ctx.p(), ctx.m(), e % ctx.order(), w)) fail(ErrorCode::NoCertificate, "invalid witness");
    FieldElem bp = frobenius_shift(ctx, b, w);
    return trinomial_from_quadratic(quadratic_sum(ctx, a, bp, w.k),
                                    quadratic_sum(ctx, ctx.neg(a), sign_e(ctx, bp, e), w.k), ctx.trace(c));
}

CycInt binomial_sum_checked(const FieldCtx& ctx, FieldElem a, FieldElem b, std::uint64_t e) {
    require_sum_hypotheses(ctx);
    Witness w = require_witness(ctx, e);
    CycInt direct = binomial_sum(ctx, a, b, e);
    CycInt reduced = binomial_sum_reduced(ctx, a, b, e, w);
    if (direct != reduced) {
        fail(ErrorCode::IdentityViolated, "binomial sum " + direct.pretty() + " != reduction " + reduced.pretty());
    }
    return direct;
}

CycInt trinomial_sum_checked(const FieldCtx& ctx, FieldElem a, FieldElem b, FieldElem c, std::uint64_t e) {
    require_sum_hypotheses(ctx);
    Witness w = require_witness(ctx, e);
    CycInt direct = trinomial_sum(ctx, a, b, c, e);
    CycInt reduced = trinomial_sum_reduced(ctx, a, b, c, e, w);
    if (direct != reduced) {
        fail(ErrorCode::IdentityViolated, "trinomial sum " + direct.pretty() + " != reduction " + reduced.pretty());
    }
    return direct;
}

ValueDist quadratic_sum_distribution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    require_valid_k(ctx, k);
    opts.budget.require(field_work(ctx, 3), "quadratic sum distribution");
    MonomialTraceRows rows_d(ctx, quadratic_exponent(ctx.p(), ctx.m(), k));
    MonomialTraceRows rows_sq(ctx, 2);
    const std::uint32_t q = ctx.q(), p = ctx.p(), n = ctx.order();
    using Local = std::map<CycInt, std::uint64_t>;
    auto parts = parallel_chunks<Local>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        Local local;
        Hist counts(p);
        for (std::size_t ia = begin; ia < end; ++ia) {
            const std::uint8_t* ra = rows_d.row(ctx.element(static_cast<std::uint32_t>(ia)));
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                std::fill(counts.begin(), counts.end(), 0);
                kernels::residue_histogram(ra, rows_sq.row(ctx.element(ib)), nullptr, n, p, counts.data());
                counts[0] += 1;
                ++local[CycInt::from_trace_histogram(p, counts)];
            }
        }
        return local;
    });
    ValueDist out;
    out.population = mpz_pow(q, 2);
    for (const auto& part : parts) merge_into(out.entries, part);
    return out;
}

PairDist quadratic_pair_distribution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    QuadraticTable table(ctx, k, opts);
    const std::uint32_t q = ctx.q();
    using Local = std::map<CycPair, std::uint64_t>;
    auto parts = parallel_chunks<Local>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        Local local;
        for (std::size_t ia = begin; ia < end; ++ia) {
            FieldElem a = ctx.element(static_cast<std::uint32_t>(ia));
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                FieldElem b = ctx.element(ib);
                ++local[{table.value(ctx, a, b), table.value(ctx, ctx.neg(a), b)}];
            }
        }
        return local;
    });
    PairDist out;
    out.population = mpz_pow(q, 2);
    for (const auto& part : parts) merge_into(out.entries, part);
    return out;
}

ValueDist binomial_sum_distribution(const FieldCtx& ctx, std::uint64_t e, const ScanOptions& opts) {
    require_sum_hypotheses(ctx);
    const Witness w = require_witness(ctx, e);
    QuadraticTable table(ctx, w.k, opts);
    MonomialTraceRows rows_lin(ctx, 1);
    MonomialTraceRows rows_e(ctx, e);
    const std::uint32_t q = ctx.q(), p = ctx.p(), n = ctx.order();
    using Local = std::map<CycInt, std::uint64_t>;
    auto parts = parallel_chunks<Local>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        Local local;
        Hist counts(p);
        for (std::size_t ia = begin; ia < end; ++ia) {
            FieldElem a = ctx.element(static_cast<std::uint32_t>(ia));
            FieldElem na = ctx.neg(a);
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                FieldElem b = ctx.element(ib);
                std::fill(counts.begin(), counts.end(), 0);
                kernels::residue_histogram(rows_lin.row(a), rows_e.row(b), nullptr, n, p, counts.data());
                counts[0] += 1;
                CycInt direct = CycInt::from_trace_histogram(p, counts);
                FieldElem bp = frobenius_shift(ctx, b, w);
                CycInt reduced =
                    binomial_from_quadratic(table.value(ctx, a, bp), table.value(ctx, na, sign_e(ctx, bp, e)));
                if (direct != reduced) {
                    fail(ErrorCode::IdentityViolated,
                         "binomial sum " + direct.pretty() + " != reduction " + reduced.pretty());
                }
                ++local[direct];
            }
        }
        return local;
    });
    ValueDist out;
    out.population = mpz_pow(q, 2);
    for (const auto& part : parts) merge_into(out.entries, part);
    return out;
}

namespace {

// Rows of `rows` indexed by index_of(a), with the even positions first and
// the odd ones after, so one kernel call covers each parity class.
std::vector<std::uint8_t> parity_split_rows(const FieldCtx& ctx, const MonomialTraceRows& rows) {
    const std::uint32_t q = ctx.q(), n = rows.length(), half = n / 2;
    std::vector<std::uint8_t> out(std::size_t(q) * n);
    for (std::uint32_t ia = 0; ia < q; ++ia) {
        const std::uint8_t* src = rows.row(ctx.element(ia));
        std::uint8_t* dst = out.data() + std::size_t(ia) * n;
        for (std::uint32_t i = 0; i < n; ++i) dst[(i % 2) * half + i / 2] = src[i];
    }
    return out;
}

}  // namespace

ValueDist trinomial_sum_distribution(const FieldCtx& ctx, std::uint64_t e, const ScanOptions& opts) {
    require_sum_hypotheses(ctx);
    const Witness w = require_witness(ctx, e);
    QuadraticTable table(ctx, w.k, opts);
    const std::uint32_t q = ctx.q(), p = ctx.p(), n = ctx.order(), half = n / 2;
    // x = pi^i gives c x^s = (-1)^i c, so with E and O the sums of w^{Tr(ax + bx^e)}
    // over even and odd i, S(a, b, c) = 1 + w^t E + w^{-t} O for t = Tr(c).
    const std::vector<std::uint8_t> lin = parity_split_rows(ctx, MonomialTraceRows(ctx, 1));
    const std::vector<std::uint8_t> pow_e = parity_split_rows(ctx, MonomialTraceRows(ctx, e));
    const OmegaSet omega = OmegaSet::canonical(ctx);
    // The inner loop runs on length-p int64 vectors in the redundant basis
    // 1, w, ..., w^{p-1}; canonical form subtracts the w^{p-1} coefficient.
    using Vec = std::vector<std::int64_t>;
    auto to_full = [p](const CycInt& x) {
        Vec v(p, 0);
        for (std::size_t j = 0; j < x.coeffs().size(); ++j) v[j] = x.coeffs()[j].get_si();
        return v;
    };
    auto canonical = [p](Vec& v) {
        const std::int64_t top = v[p - 1];
        for (auto& c : v) c -= top;
    };
    std::vector<std::uint32_t> traces(p);
    for (std::uint32_t t = 0; t < p; ++t) traces[t] = ctx.trace(omega.reps[t]);
    using Local = std::map<Vec, std::uint64_t>;
    auto parts = parallel_chunks<Local>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        Local local;
        Hist even(p), odd(p);
        Vec direct(p), twice(p);
        for (std::size_t ia = begin; ia < end; ++ia) {
            FieldElem a = ctx.element(static_cast<std::uint32_t>(ia));
            FieldElem na = ctx.neg(a);
            const std::uint8_t* ra = lin.data() + ia * n;
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                FieldElem b = ctx.element(ib);
                const std::uint8_t* rb = pow_e.data() + std::size_t(ib) * n;
                std::fill(even.begin(), even.end(), 0);
                std::fill(odd.begin(), odd.end(), 0);
                kernels::residue_histogram(ra, rb, nullptr, half, p, even.data());
                kernels::residue_histogram(ra + half, rb + half, nullptr, half, p, odd.data());
                FieldElem bp = frobenius_shift(ctx, b, w);
                const Vec plus = to_full(table.value(ctx, a, bp));
                const Vec minus = to_full(table.value(ctx, na, sign_e(ctx, bp, e)));
                for (std::uint32_t tr : traces) {
                    // direct = 1 + w^t E + w^{-t} O; twice the reduction is
                    // 2 - w^t - w^{-t} + w^t T0(a, b') + w^{-t} T0(-a, +-b').
                    std::fill(direct.begin(), direct.end(), 0);
                    std::fill(twice.begin(), twice.end(), 0);
                    direct[0] += 1;
                    twice[0] += 2;
                    twice[tr] -= 1;
                    twice[(p - tr) % p] -= 1;
                    for (std::uint32_t j = 0; j < p; ++j) {
                        const std::uint32_t up = (j + tr) % p, down = (j + p - tr) % p;
                        direct[up] += static_cast<std::int64_t>(even[j]);
                        direct[down] += static_cast<std::int64_t>(odd[j]);
                        twice[up] += plus[j];
                        twice[down] += minus[j];
                    }
                    canonical(direct);
                    canonical(twice);
                    for (std::uint32_t j = 0; j < p; ++j) {
                        if (twice[j] != 2 * direct[j]) {
                            fail(ErrorCode::IdentityViolated,
                                 "trinomial sum differs from its reduction at a = " + std::to_string(ia) +
                                     ", b = " + std::to_string(ib) + ", Tr(c) = " + std::to_string(tr));
                        }
                    }
                    auto it = local.find(direct);
                    if (it == local.end()) {
                        local.emplace(direct, 1);
                    } else {
                        ++it->second;
                    }
                }
            }
        }
        return local;
    });
    ValueDist out;
    out.population = mpz_pow(q, 2) * p;
    for (const auto& part : parts) {
        for (const auto& [v, c] : part) {
            std::vector<mpz_class> coeffs(v.begin(), v.end() - 1);
            out.add(CycInt(p, std::move(coeffs)), mpz_class(static_cast<unsigned long>(c)));
        }
    }
    return out;
}

PowerSums power_sum_checks(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    if (ctx.m() % 2 == 0) fail(ErrorCode::HypothesisViolated, "power sums need odd m");
    QuadraticTable table(ctx, k, opts);
    const std::uint32_t q = ctx.q(), p = ctx.p();
    struct Partial {
        CycInt s1, s2;
    };
    auto parts = parallel_chunks<Partial>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        Partial acc{CycInt(p), CycInt(p)};
        for (std::size_t ia = begin; ia < end; ++ia) {
            FieldElem a = ctx.element(static_cast<std::uint32_t>(ia));
            for (std::uint32_t ib = 0; ib < q; ++ib) {
                FieldElem b = ctx.element(ib);
                CycInt x = table.value(ctx, a, b);
                CycInt y = table.value(ctx, ctx.neg(a), b);
                CycInt xy = x * y;
                acc.s1 += xy;
                acc.s2 += x * x * xy;
            }
        }
        return acc;
    });
    CycInt s1(p), s2(p);
    for (const auto& part : parts) {
        s1 += part.s1;
        s2 += part.s2;
    }
    PowerSums out;
    const mpz_class qq = q;
    out.expected_p1 = qq * qq;
    out.expected_p2 = qq * qq * n4_formula(p, ctx.m());
    auto r1 = s1.as_integer();
    auto r2 = s2.as_integer();
    if (!r1 || !r2) fail(ErrorCode::IdentityViolated, "power sum is not a rational integer");
    out.p1 = *r1;
    out.p2 = *r2;
    if (out.p1 != out.expected_p1 || out.p2 != out.expected_p2) {
        fail(ErrorCode::IdentityViolated, "power sums " + out.p1.get_str() + ", " + out.p2.get_str() +
                                              " differ from closed forms " + out.expected_p1.get_str() + ", " +
                                              out.expected_p2.get_str());
    }
    return out;
}

mpz_class n4_formula(std::uint32_t p, unsigned m) {
    mpz_class q = mpz_pow(p, m);
    return 2 * q * q - q * p - q + p;
}

HalfCounts half_counts(const FieldCtx& ctx, unsigned k, const Budget& budget) {
    require_valid_k(ctx, k);
    const std::uint32_t q = ctx.q();
    budget.require(field_work(ctx, 2), "pair-count tables");
    const std::uint64_t d = quadratic_exponent(ctx.p(), ctx.m(), k);
    std::vector<FieldElem> sq(q), pw(q);
    for (std::uint32_t i = 0; i < q; ++i) {
        FieldElem x = ctx.element(i);
        sq[i] = ctx.mul(x, x);
        pw[i] = monomial(ctx, x, d);
    }
    HalfCounts out;
    out.q = q;
    out.plus.assign(std::size_t(q) * q, 0);
    out.minus.assign(std::size_t(q) * q, 0);
    for (std::uint32_t i = 0; i < q; ++i) {
        for (std::uint32_t j = 0; j < q; ++j) {
            std::size_t u = ctx.index_of(ctx.add(sq[i], sq[j]));
            ++out.plus[u * q + ctx.index_of(ctx.add(pw[i], pw[j]))];
            ++out.minus[u * q + ctx.index_of(ctx.sub(pw[i], pw[j]))];
        }
    }
    return out;
}

mpz_class n4_bruteforce(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    require_valid_k(ctx, k);
    const std::uint32_t q = ctx.q();
    opts.budget.require(sat_pow(q, 4), "brute-force N4");
    const std::uint64_t d = quadratic_exponent(ctx.p(), ctx.m(), k);
    // Packed vectors, so the inner test is a table lookup instead of Zech arithmetic.
    std::vector<std::uint32_t> sq(q), pw(q);
    for (std::uint32_t i = 0; i < q; ++i) {
        FieldElem x = ctx.element(i);
        sq[i] = ctx.to_vector(ctx.mul(x, x));
        pw[i] = ctx.to_vector(monomial(ctx, x, d));
    }
    std::vector<std::uint32_t> add(std::size_t(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b)
            add[std::size_t(a) * q + b] = ctx.to_vector(ctx.add(ctx.from_vector(a), ctx.from_vector(b)));
    std::vector<std::uint32_t> neg(q);
    for (std::uint32_t a = 0; a < q; ++a) neg[a] = ctx.to_vector(ctx.neg(ctx.from_vector(a)));
    auto parts = parallel_chunks<std::uint64_t>(q, opts.threads, [&](std::size_t begin, std::size_t end) {
        std::uint64_t count = 0;
        for (std::size_t x = begin; x < end; ++x)
            for (std::uint32_t y = 0; y < q; ++y) {
                const std::uint32_t s2 = add[std::size_t(sq[x]) * q + sq[y]];
                const std::uint32_t sd = add[std::size_t(pw[x]) * q + pw[y]];
                for (std::uint32_t z = 0; z < q; ++z) {
                    const std::uint32_t s3 = add[std::size_t(s2) * q + sq[z]];
                    const std::uint32_t d3 = add[std::size_t(sd) * q + pw[z]];
                    for (std::uint32_t w = 0; w < q; ++w) {
                        count += add[std::size_t(s3) * q + sq[w]] == 0 && add[std::size_t(d3) * q + neg[pw[w]]] == 0;
                    }
                }
            }
        return count;
    });
    std::uint64_t total = 0;
    for (auto c : parts) total += c;
    return mpz_class(std::to_string(total));
}

mpz_class n4_convolution(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    HalfCounts h = half_counts(ctx, k, opts.budget);
    const std::uint32_t q = ctx.q();
    unsigned __int128 total = 0;
    for (std::uint32_t iu = 0; iu < q; ++iu) {
        FieldElem nu = ctx.neg(ctx.element(iu));
        for (std::uint32_t iv = 0; iv < q; ++iv) {
            std::uint64_t a = h.plus[std::size_t(iu) * q + iv];
            if (a == 0) continue;
            total += static_cast<unsigned __int128>(a) * h.b(nu, ctx.neg(ctx.element(iv)), ctx);
        }
    }
    mpz_class hi = static_cast<std::uint64_t>(total >> 64);
    mpz_class lo = static_cast<std::uint64_t>(total);
    return (hi << 64) + lo;
}

AppendixCounts appendix_counts(const FieldCtx& ctx, unsigned k, FieldElem alpha, FieldElem beta,
                               const Budget& budget) {
    require_valid_k(ctx, k);
    budget.require(field_work(ctx, 2), "appendix counts");
    const std::uint64_t d = quadratic_exponent(ctx.p(), ctx.m(), k);
    auto power = [&](FieldElem x) { return monomial(ctx, x, d); };
    const FieldElem na = ctx.neg(alpha), nb = ctx.neg(beta);
    AppendixCounts out;
    for (std::uint32_t i = 0; i < ctx.q(); ++i) {
        FieldElem x = ctx.element(i);
        FieldElem x2 = ctx.mul(x, x), xd = power(x);
        for (std::uint32_t j = 0; j < ctx.q(); ++j) {
            FieldElem y = ctx.element(j);
            FieldElem y2 = ctx.mul(y, y), yd = power(y);
            FieldElem u = ctx.add(x2, y2);
            if (u == alpha && ctx.add(xd, yd) == beta) ++out.n1;
            if (u == na && ctx.sub(xd, yd) == nb) ++out.n2;
        }
    }
    return out;
}

bool AppendixReport::ok() const {
    return zero_cases_ok && n1_violations == 0 && n2_violations == 0 && product_violations == 0 &&
           circle_violations == 0 && s1_violations == 0;
}

AppendixReport verify_appendix(const FieldCtx& ctx, unsigned k, const ScanOptions& opts) {
    require_valid_k(ctx, k);
    if (ctx.p() % 4 != 3 || ctx.m() % 2 == 0) {
        fail(ErrorCode::HypothesisViolated, "the counting argument needs p = 3 mod 4 and odd m");
    }
    AppendixReport rep;
    rep.k_requested = k;
    rep.k_used = k % 2 == 0 ? k : ctx.m() - k;
    if (ctx.m() == 1) rep.k_used = k;
    HalfCounts h = half_counts(ctx, rep.k_used, opts.budget);
    const std::uint32_t q = ctx.q(), p = ctx.p(), n = ctx.order();
    const std::uint64_t half_exp = ((ipow(p, rep.k_used) + 1) / 2) % n;
    rep.expected_s1 = (q - p) / (2 * (p + 1));

    rep.zero_cases_ok = h.plus[0] == 1 && h.minus[0] == 1;
    for (std::uint32_t i = 1; i < q; ++i) {
        // alpha = 0 or beta = 0 but not both: the first system has no solution
        if (h.plus[i] != 0 || h.plus[std::size_t(i) * q] != 0) rep.zero_cases_ok = false;
    }

    std::uint64_t s1_common = 0;
    for (std::uint32_t ia = 1; ia < q; ++ia) {
        FieldElem alpha = ctx.element(ia);
        const bool square = ctx.is_square(alpha);
        const FieldElem bplus = ctx.pow(alpha, static_cast<std::int64_t>(half_exp));
        const FieldElem bminus = ctx.neg(bplus);
        std::uint64_t circle = 0;
        for (std::uint32_t ib = 0; ib < q; ++ib) circle += h.plus[std::size_t(ia) * q + ib];
        if (circle != q + 1) ++rep.circle_violations;

        std::uint64_t s1 = 0;
        for (std::uint32_t ib = 1; ib < q; ++ib) {
            FieldElem beta = ctx.element(ib);
            std::uint64_t n1 = h.a(alpha, beta, ctx);
            std::uint64_t n2 = h.b(ctx.neg(alpha), ctx.neg(beta), ctx);
            ++rep.n1_values[n1];
            ++rep.n2_values[n2];
            std::uint64_t product = n1 * n2;
            if (beta == bplus || beta == bminus) {
                std::uint64_t want1 = beta == bplus ? p + 1 : 0;
                std::uint64_t want2 = square ? 0 : 2;
                std::uint64_t want = (!square && beta == bplus) ? 2 * (p + 1) : 0;
                if (n1 != want1) ++rep.n1_violations;
                if (n2 != want2) ++rep.n2_violations;
                if (product != want) ++rep.product_violations;
            } else {
                if (n1 != 0 && n1 != 2 * (p + 1)) ++rep.n1_violations;
                if (n2 != 0 && n2 != 4) ++rep.n2_violations;
                const bool in_s1 = n1 == 2 * (p + 1);
                if (in_s1) ++s1;
                std::uint64_t want = (!square && in_s1) ? 8 * (p + 1) : 0;
                if (product != want) ++rep.product_violations;
            }
        }
        ++rep.s1_sizes[s1];
        if (s1 != rep.expected_s1) ++rep.s1_violations;
        s1_common = s1;
    }
    rep.n4_from_s1 = 1 + (mpz_class(p + 1) + 4 * mpz_class(p + 1) * s1_common) * mpz_class(n);
    return rep;
}

}  // namespace apncodes
