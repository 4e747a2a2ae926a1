#include <apncodes/codes.hpp>
#include <apncodes/error.hpp>
#include <apncodes/kernels.hpp>
#include <apncodes/parallel.hpp>
#include <apncodes/trace_rows.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string_view>
#include <unordered_map>

namespace apncodes {

std::string CodeSpec::name() const {
    std::string s = "C(";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(exponents[i]);
    }
    return s + ")";
}

CodeSpec make_code(const FieldCtx& ctx, std::vector<std::uint64_t> exponents) {
    if (exponents.empty()) fail(ErrorCode::UsageError, "a code needs at least one exponent");
    CodeSpec code;
    code.ctx = ctx;
    code.length = ctx.order();
    std::vector<Coset> seen;
    for (auto& e : exponents) {
        e %= ctx.order();
        if (e == 0) fail(ErrorCode::UsageError, "the exponent 0 is not supported");
        Coset c = cyclotomic_coset(ctx.p(), ctx.order(), e);
        for (const auto& prev : seen) {
            if (prev.representative == c.representative) {
                fail(ErrorCode::OverlappingCosets, std::to_string(e) + " lies in the coset of " +
                                                       std::to_string(prev.representative));
            }
        }
        code.coset_sizes.push_back(c.size());
        code.dimension += static_cast<unsigned>(c.size());
        if (c.size() != ctx.m() && e != ctx.order() / 2) code.short_coset = true;
        seen.push_back(std::move(c));
    }
    code.exponents = std::move(exponents);
    return code;
}

std::uint32_t codeword_weight(const CodeSpec& code, std::span<const FieldElem> message) {
    if (message.size() != code.exponents.size()) fail(ErrorCode::UsageError, "message length mismatch");
    const FieldCtx& ctx = code.ctx;
    std::uint32_t weight = 0;
    for (std::uint32_t j = 0; j < code.length; ++j) {
        std::uint64_t s = 0;
        for (std::size_t t = 0; t < message.size(); ++t) {
            FieldElem root = ctx.pow(ctx.primitive(), static_cast<std::int64_t>((std::uint64_t(j) * code.exponents[t]) % ctx.order()));
            s += ctx.trace(ctx.mul(message[t], root));
        }
        weight += s % ctx.p() != 0;
    }
    return weight;
}

std::uint32_t codeword_weight_via_sums(const CodeSpec& code, std::span<const FieldElem> message) {
    if (message.size() != code.exponents.size()) fail(ErrorCode::UsageError, "message length mismatch");
    const FieldCtx& ctx = code.ctx;
    const std::uint32_t p = ctx.p();
    CycInt total(p);
    for (std::uint32_t y = 1; y < p; ++y) {
        FieldElem scale = ctx.from_prime_field(y);
        std::vector<std::uint64_t> hist(p, 0);
        ++hist[0];  // x = 0
        for (std::uint32_t i = 0; i < ctx.order(); ++i) {
            FieldElem x = FieldElem::from_log(i);
            FieldElem v = FieldElem::zero();
            for (std::size_t t = 0; t < message.size(); ++t) {
                v = ctx.add(v, ctx.mul(ctx.mul(scale, message[t]), ctx.pow(x, static_cast<std::int64_t>(code.exponents[t]))));
            }
            ++hist[ctx.trace(v)];
        }
        total += CycInt::from_trace_histogram(p, hist);
    }
    auto r = total.as_integer();
    if (!r || !mpz_divisible_ui_p(r->get_mpz_t(), p)) {
        fail(ErrorCode::IdentityViolated, "character sum " + total.pretty() + " is not an integer multiple of p");
    }
    mpz_class w = mpz_pow(p, ctx.m() - 1) * (p - 1) - *r / p;
    return static_cast<std::uint32_t>(w.get_ui());
}

mpz_class WeightDist::total() const {
    mpz_class t = 0;
    for (const auto& [w, c] : entries) t += c;
    return t;
}

bool WeightDist::first_moment_ok() const {
    mpz_class s = 0;
    for (const auto& [w, c] : entries) s += c * w;
    return s == mpz_class(n) * (p - 1) * mpz_pow(p, dimension - 1);
}

namespace {

// Message representatives for one component: all of F_q for a full coset,
// otherwise the first element (enumeration order) of each distinct row.
std::vector<FieldElem> component_representatives(const FieldCtx& ctx, const MonomialTraceRows& rows,
                                                  std::size_t coset_size) {
    std::vector<FieldElem> reps;
    if (coset_size == ctx.m()) {
        for (std::uint32_t i = 0; i < ctx.q(); ++i) reps.push_back(ctx.element(i));
        return reps;
    }
    std::set<std::string_view> rows_seen;
    const std::uint32_t n = rows.length();
    for (std::uint32_t i = 0; i < ctx.q(); ++i) {
        FieldElem a = ctx.element(i);
        std::string_view key(reinterpret_cast<const char*>(rows.row(a)), n);
        if (rows_seen.insert(key).second) reps.push_back(a);
    }
    if (reps.size() != ipow(ctx.p(), static_cast<unsigned>(coset_size))) {
        fail(ErrorCode::IdentityViolated, "component has " + std::to_string(reps.size()) + " distinct rows");
    }
    return reps;
}

}  // namespace

WeightDist weight_distribution(const CodeSpec& code, const ScanOptions& opts) {
    const FieldCtx& ctx = code.ctx;
    const std::uint32_t p = ctx.p(), n = code.length;
    opts.budget.require(sat_pow(p, code.dimension), "weight distribution of " + code.name());

    const std::size_t t = code.exponents.size();
    std::vector<MonomialTraceRows> rows;
    std::vector<std::vector<FieldElem>> reps;
    for (std::size_t s = 0; s < t; ++s) {
        rows.emplace_back(ctx, code.exponents[s]);
        reps.push_back(component_representatives(ctx, rows.back(), code.coset_sizes[s]));
    }
    const std::uint8_t* zero_row = rows[0].row(FieldElem::zero());

    using Local = std::vector<std::uint64_t>;
    auto parts = parallel_chunks<Local>(reps[0].size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        Local counts(n + 1, 0);
        std::vector<std::size_t> idx(t, 0);
        std::vector<std::uint8_t> prefix(n);
        for (std::size_t i0 = begin; i0 < end; ++i0) {
            const std::uint8_t* r0 = rows[0].row(reps[0][i0]);
            if (t == 1) {
                ++counts[n - kernels::zero_residues(r0, zero_row, nullptr, n, p)];
                continue;
            }
            // Odometer over components 1..t-1; the last two go to the kernel,
            // anything before them is folded into `prefix`.
            std::fill(idx.begin() + 1, idx.end(), 0);
            while (true) {
                const std::uint8_t* u = r0;
                if (t > 3) {
                    std::copy(r0, r0 + n, prefix.begin());
                    for (std::size_t s = 1; s + 2 < t; ++s) {
                        const std::uint8_t* rs = rows[s].row(reps[s][idx[s]]);
                        for (std::uint32_t j = 0; j < n; ++j) {
                            unsigned v = prefix[j] + rs[j];
                            prefix[j] = static_cast<std::uint8_t>(v >= p ? v - p : v);
                        }
                    }
                    u = prefix.data();
                }
                const std::uint8_t* v = t >= 3 ? rows[t - 2].row(reps[t - 2][idx[t - 2]]) : rows[1].row(reps[1][idx[1]]);
                const std::uint8_t* w = t >= 3 ? rows[t - 1].row(reps[t - 1][idx[t - 1]]) : nullptr;
                ++counts[n - kernels::zero_residues(u, v, w, n, p)];
                std::size_t s = t - 1;
                while (s >= 1 && ++idx[s] == reps[s].size()) idx[s--] = 0;
                if (s == 0) break;
            }
        }
        return counts;
    });
    WeightDist out;
    out.p = p;
    out.dimension = code.dimension;
    out.n = n;
    std::vector<std::uint64_t> merged(n + 1, 0);
    for (const auto& part : parts)
        for (std::uint32_t w = 0; w <= n; ++w) merged[w] += part[w];
    for (std::uint32_t w = 0; w <= n; ++w) {
        if (merged[w] == 0) continue;
        mpz_class c;
        mpz_import(c.get_mpz_t(), 1, -1, sizeof(std::uint64_t), 0, 0, &merged[w]);
        out.entries[w] = c;
    }
    if (!out.population_ok()) fail(ErrorCode::IdentityViolated, "weight distribution population mismatch");
    return out;
}

namespace {

unsigned two_adic_valuation(std::uint64_t x) {
    unsigned r = 0;
    while (x % 2 == 0) {
        x /= 2;
        ++r;
    }
    return r;
}

std::optional<unsigned> product_witness(const FieldCtx& ctx, std::uint64_t d, std::uint64_t e) {
    const std::uint64_t n = ctx.order();
    const std::uint64_t lhs = static_cast<std::uint64_t>((static_cast<unsigned __int128>(2 * d) * e) % n);
    std::uint64_t pt = 1;
    for (unsigned tau = 0; tau < ctx.m(); ++tau) {
        if (lhs == (2 * pt) % n) return tau;
        pt = pt * ctx.p() % n;
    }
    return std::nullopt;
}

}  // namespace

EquidistributionResult equidistribution_check(const FieldCtx& ctx, std::uint64_t d, std::uint64_t e,
                                              const ScanOptions& opts) {
    const std::uint64_t n = ctx.order();
    d %= n;
    e %= n;
    EquidistributionResult res;
    Coset one = cyclotomic_coset(ctx.p(), n, 1);
    if (d == 0 || e == 0 || one.contains(d) || one.contains(e)) return res;  // NotApplicable
    const std::uint64_t two_r = std::uint64_t(1) << two_adic_valuation(ctx.p() - 1);
    res.tau = product_witness(ctx, d, e);
    const bool sum_ok = (d + e) % two_r == 2 % two_r;
    res.status = (res.tau && sum_ok) ? EquiStatus::Holds : EquiStatus::HypothesisFails;
    res.dist_d = weight_distribution(make_code(ctx, {1, d}), opts);
    res.dist_e = weight_distribution(make_code(ctx, {1, e}), opts);
    res.identical = *res.dist_d == *res.dist_e;
    return res;
}

std::vector<EquiPair> scan_equidistribution_pairs(const FieldCtx& ctx) {
    const std::uint64_t n = ctx.order();
    const std::uint64_t two_r = std::uint64_t(1) << two_adic_valuation(ctx.p() - 1);
    std::vector<Coset> cosets;
    for (auto& c : all_cosets(ctx.p(), n)) {
        if (c.representative == 0 || c.contains(1)) continue;
        cosets.push_back(std::move(c));
    }
    std::vector<EquiPair> out;
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        for (std::size_t j = i + 1; j < cosets.size(); ++j) {
            const std::uint64_t d = cosets[i].representative, e = cosets[j].representative;
            auto tau = product_witness(ctx, d, e);
            if (!tau) continue;
            // p = 1 mod 2^r, so every member of a coset has the same residue mod 2^r.
            if ((d + e) % two_r != 2 % two_r) continue;
            out.push_back({d, e, *tau});
        }
    }
    return out;
}

namespace {

class ColumnSpace {
public:
    explicit ColumnSpace(const CodeSpec& code) : ctx_(code.ctx), q_(code.ctx.q()), p_(code.ctx.p()) {
        if (q_ > 4096) fail(ErrorCode::BudgetExceeded, "dual distance search supports q <= 4096");
        const std::size_t t = code.exponents.size();
        if (sat_pow(q_, static_cast<unsigned>(t)) >= (1ULL << 62)) {
            fail(ErrorCode::BudgetExceeded, "column keys do not fit 64 bits");
        }
        add_.resize(std::size_t(q_) * q_);
        for (std::uint32_t x = 0; x < q_; ++x)
            for (std::uint32_t y = 0; y < q_; ++y) add_[std::size_t(x) * q_ + y] = digit_add(x, y);
        smul_.resize(std::size_t(p_) * q_);
        for (std::uint32_t c = 0; c < p_; ++c)
            for (std::uint32_t x = 0; x < q_; ++x) smul_[std::size_t(c) * q_ + x] = digit_scale(c, x);
        cols_.resize(code.length, std::vector<std::uint32_t>(t));
        for (std::uint32_t j = 0; j < code.length; ++j) {
            for (std::size_t s = 0; s < t; ++s) {
                std::uint64_t idx = std::uint64_t(j) * code.exponents[s] % ctx_.order();
                cols_[j][s] = ctx_.to_vector(FieldElem::from_log(static_cast<std::uint32_t>(idx)));
            }
        }
    }

    using Vec = std::vector<std::uint32_t>;
    const Vec& column(std::uint32_t j) const { return cols_[j]; }
    std::size_t arity() const { return cols_.empty() ? 0 : cols_[0].size(); }

    // acc += c * column(j)
    void axpy(Vec& acc, std::uint32_t c, std::uint32_t j) const {
        const Vec& col = cols_[j];
        for (std::size_t s = 0; s < acc.size(); ++s) acc[s] = add_[std::size_t(acc[s]) * q_ + smul_[std::size_t(c) * q_ + col[s]]];
    }
    Vec negate(const Vec& v) const {
        Vec out(v.size());
        for (std::size_t s = 0; s < v.size(); ++s) out[s] = smul_[std::size_t(p_ - 1) * q_ + v[s]];
        return out;
    }
    std::uint64_t key(const Vec& v) const {
        std::uint64_t k = 0;
        for (std::size_t s = v.size(); s-- > 0;) k = k * q_ + v[s];
        return k;
    }
    std::uint32_t p() const { return p_; }

private:
    std::uint32_t digit_add(std::uint32_t x, std::uint32_t y) const {
        std::uint32_t out = 0, pw = 1;
        while (x > 0 || y > 0) {
            out += ((x % p_ + y % p_) % p_) * pw;
            x /= p_;
            y /= p_;
            pw *= p_;
        }
        return out;
    }
    std::uint32_t digit_scale(std::uint32_t c, std::uint32_t x) const {
        std::uint32_t out = 0, pw = 1;
        while (x > 0) {
            out += (x % p_ * c % p_) * pw;
            x /= p_;
            pw *= p_;
        }
        return out;
    }

    FieldCtx ctx_;
    std::uint32_t q_, p_;
    std::vector<std::uint32_t> add_, smul_;
    std::vector<Vec> cols_;
};

struct PairEntry {
    std::uint64_t key;
    std::uint32_t j1, j2, c1, c2;
    bool operator<(const PairEntry& o) const { return key < o.key; }
};

}  // namespace

DualDistance dual_min_distance_at_most(const CodeSpec& code, unsigned bound, const Budget& budget) {
    if (bound < 2 || bound > 5) fail(ErrorCode::UsageError, "bound must lie in [2, 5]");
    const std::uint64_t n = code.length;
    const std::uint32_t p = code.ctx.p();
    const std::uint64_t pm1 = p - 1;
    std::uint64_t work = sat_mul(n * n, pm1 * pm1);
    if (bound >= 4) work = sat_mul(work, 2);
    if (bound >= 5) work = sat_mul(sat_mul(n * n, n) / 6, pm1 * pm1);
    budget.require(work, "dual distance search on " + code.name());

    ColumnSpace space(code);
    const std::size_t t = space.arity();
    using Vec = ColumnSpace::Vec;
    DualDistance res;

    // Column key -> position, for the normalized leading column of w = 2, 3.
    std::unordered_map<std::uint64_t, std::uint32_t> col_index;
    for (std::uint32_t j = 0; j < n; ++j) {
        if (space.key(space.column(j)) == 0) {
            res.distance = 1;
            res.positions = {j};
            res.coefficients = {1};
            return res;
        }
        col_index.emplace(space.key(space.column(j)), j);
    }

    // w = 2, 3: h_{j1} = -(c2 h_{j2} + c3 h_{j3}) with j1 the smallest position.
    for (unsigned w = 2; w <= std::min(bound, 3u); ++w) {
        for (std::uint32_t j2 = 1; j2 < n; ++j2) {
            for (std::uint32_t c2 = 1; c2 < p; ++c2) {
                Vec partial(t, 0);
                space.axpy(partial, c2, j2);
                if (w == 2) {
                    auto it = col_index.find(space.key(space.negate(partial)));
                    if (it != col_index.end() && it->second < j2) {
                        res.distance = 2;
                        res.positions = {it->second, j2};
                        res.coefficients = {1, c2};
                        return res;
                    }
                    continue;
                }
                for (std::uint32_t j3 = j2 + 1; j3 < n; ++j3) {
                    for (std::uint32_t c3 = 1; c3 < p; ++c3) {
                        Vec sum = partial;
                        space.axpy(sum, c3, j3);
                        auto it = col_index.find(space.key(space.negate(sum)));
                        if (it != col_index.end() && it->second < j2) {
                            res.distance = 3;
                            res.positions = {it->second, j2, j3};
                            res.coefficients = {1, c2, c3};
                            return res;
                        }
                    }
                }
            }
        }
    }
    if (bound < 4) return res;

    // Pair table: every c1 h_{j1} + c2 h_{j2}, j1 < j2, all nonzero coefficients.
    std::vector<PairEntry> pairs;
    pairs.reserve(n * (n - 1) / 2 * pm1 * pm1);
    for (std::uint32_t j1 = 0; j1 < n; ++j1) {
        for (std::uint32_t j2 = j1 + 1; j2 < n; ++j2) {
            for (std::uint32_t c1 = 1; c1 < p; ++c1) {
                Vec base(t, 0);
                space.axpy(base, c1, j1);
                for (std::uint32_t c2 = 1; c2 < p; ++c2) {
                    Vec v = base;
                    space.axpy(v, c2, j2);
                    pairs.push_back({space.key(v), j1, j2, c1, c2});
                }
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairEntry& a, const PairEntry& b) {
        return std::tie(a.key, a.j1, a.j2, a.c1, a.c2) < std::tie(b.key, b.j1, b.j2, b.c1, b.c2);
    });
    auto lookup = [&](const Vec& target) {
        PairEntry probe{space.key(target), 0, 0, 0, 0};
        return std::equal_range(pairs.begin(), pairs.end(), probe);
    };

    // w = 4: (j1 < j2) + (j3 < j4) with j2 < j3, leading coefficient of the second pair 1.
    for (std::uint32_t j3 = 0; j3 < n; ++j3) {
        for (std::uint32_t j4 = j3 + 1; j4 < n; ++j4) {
            for (std::uint32_t c4 = 1; c4 < p; ++c4) {
                Vec v(t, 0);
                space.axpy(v, 1, j3);
                space.axpy(v, c4, j4);
                auto [lo, hi] = lookup(space.negate(v));
                for (auto it = lo; it != hi; ++it) {
                    if (it->j2 < j3) {
                        res.distance = 4;
                        res.positions = {it->j1, it->j2, j3, j4};
                        res.coefficients = {it->c1, it->c2, 1, c4};
                        return res;
                    }
                }
            }
        }
    }
    if (bound < 5) return res;

    // w = 5: (j1 < j2) + (j3 < j4 < j5) with j2 < j3, leading coefficient of the triple 1.
    for (std::uint32_t j3 = 0; j3 < n; ++j3) {
        for (std::uint32_t j4 = j3 + 1; j4 < n; ++j4) {
            for (std::uint32_t c4 = 1; c4 < p; ++c4) {
                Vec partial(t, 0);
                space.axpy(partial, 1, j3);
                space.axpy(partial, c4, j4);
                for (std::uint32_t j5 = j4 + 1; j5 < n; ++j5) {
                    for (std::uint32_t c5 = 1; c5 < p; ++c5) {
                        Vec v = partial;
                        space.axpy(v, c5, j5);
                        auto [lo, hi] = lookup(space.negate(v));
                        for (auto it = lo; it != hi; ++it) {
                            if (it->j2 < j3) {
                                res.distance = 5;
                                res.positions = {it->j1, it->j2, j3, j4, j5};
                                res.coefficients = {it->c1, it->c2, 1, c4, c5};
                                return res;
                            }
                        }
                    }
                }
            }
        }
    }
    return res;
}

}  // namespace apncodes
