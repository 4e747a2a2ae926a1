#include <apncodes/error.hpp>
#include <apncodes/field.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace apncodes {

namespace {

using Residue = std::vector<std::uint64_t>;  // length deg(f), reduced mod f

Residue poly_mulmod(const Residue& a, const Residue& b, const Poly& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    std::vector<std::uint64_t> prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (std::size_t d = 2 * m - 1; d >= m; --d) {
        std::uint64_t lead = prod[d];
        if (lead == 0) continue;
        // f is monic: x^m = -(c0 + ... + c_{m-1} x^{m-1})
        for (std::size_t i = 0; i < m; ++i) {
            prod[d - m + i] = (prod[d - m + i] + (p - lead) * f[i]) % p;
        }
        prod[d] = 0;
    }
    prod.resize(m);
    return prod;
}

Residue x_pow_mod(std::uint64_t e, const Poly& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    Residue result(m, 0);
    result[0] = 1 % p;
    Residue base(m, 0);
    if (m == 1) {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

bool is_one(const Residue& r) {
    if (r.empty() || r[0] != 1) return false;
    return std::all_of(r.begin() + 1, r.end(), [](std::uint64_t c) { return c == 0; });
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

}  // namespace

bool Coset::contains(std::uint64_t j) const { return std::binary_search(members.begin(), members.end(), j); }

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) fail(ErrorCode::UsageError, "integer power overflows 64 bits");
    }
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_primitive_polynomial(std::uint32_t p, const Poly& f) {
    if (f.size() < 2 || f.back() != 1) return false;
    if (std::any_of(f.begin(), f.end(), [p](std::uint32_t c) { return c >= p; })) return false;
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (__builtin_mul_overflow(q, std::uint64_t(p), &q) || q > (1ULL << 63)) {
            fail(ErrorCode::UsageError, "p^m - 1 must be below 2^63 for the primitivity test");
        }
    }
    const std::uint64_t n = q - 1;
    if (!is_one(x_pow_mod(n, f, p))) return false;
    for (std::uint64_t ell : prime_factors(n)) {
        if (is_one(x_pow_mod(n / ell, f, p))) return false;
    }
    return true;
}

std::vector<Poly> primitive_moduli(std::uint32_t p, unsigned m, std::size_t count) {
    std::vector<Poly> found;
    const std::uint64_t total = ipow(p, m);
    for (std::uint64_t idx = 0; idx < total && found.size() < count; ++idx) {
        Poly f(m + 1, 0);
        std::uint64_t v = idx;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        f[m] = 1;
        if (is_primitive_polynomial(p, f)) found.push_back(std::move(f));
    }
    return found;
}

FieldCtx build_field(std::uint32_t p, unsigned m, const std::optional<Poly>& modulus_override) {
    if (!is_prime(p) || p == 2) fail(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
    if (m < 1) fail(ErrorCode::UsageError, "extension degree must be at least 1");
    std::uint64_t q64 = 1;
    for (unsigned i = 0; i < m; ++i) {
        q64 *= p;
        if (q64 > kMaxFieldSize) {
            fail(ErrorCode::BudgetExceeded, "field size exceeds the table limit of 2^24 elements");
        }
    }

    Poly modulus;
    if (modulus_override) {
        modulus = *modulus_override;
        if (modulus.size() != m + 1 || modulus.back() != 1) {
            fail(ErrorCode::UsageError, "modulus must be monic of degree " + std::to_string(m));
        }
        for (auto c : modulus)
            if (c >= p) fail(ErrorCode::UsageError, "modulus coefficients must lie in [0, p)");
        if (!is_primitive_polynomial(p, modulus)) {
            fail(ErrorCode::NotPrimitive, poly_to_string(modulus) + " is not primitive over GF(" +
                                              std::to_string(p) + ")");
        }
    } else {
        auto found = primitive_moduli(p, m, 1);
        if (found.empty()) fail(ErrorCode::NotPrimitive, "no primitive modulus found");
        modulus = found.front();
    }

    auto t = std::make_shared<FieldCtx::Tables>();
    t->p = p;
    t->m = m;
    t->q = static_cast<std::uint32_t>(q64);
    t->modulus = modulus;
    const std::uint32_t q = t->q;
    const std::uint32_t n = q - 1;

    std::vector<std::uint32_t> pw(m);
    pw[0] = 1;
    for (unsigned i = 1; i < m; ++i) pw[i] = pw[i - 1] * p;

    t->antilog.resize(n);
    t->log.assign(q, FieldElem::kZeroRep);
    std::vector<std::uint32_t> v(m, 0);
    v[0] = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t packed = 0;
        for (unsigned d = 0; d < m; ++d) packed += v[d] * pw[d];
        if (packed == 0 || t->log[packed] != FieldElem::kZeroRep) {
            fail(ErrorCode::NotPrimitive, "x does not generate the multiplicative group");
        }
        t->antilog[i] = packed;
        t->log[packed] = i;
        // multiply by x
        std::uint32_t lead = v[m - 1];
        for (unsigned d = m - 1; d > 0; --d) v[d] = v[d - 1];
        v[0] = 0;
        for (unsigned d = 0; d < m; ++d) {
            v[d] = static_cast<std::uint32_t>((v[d] + std::uint64_t(p - lead) * modulus[d]) % p);
        }
    }

    t->zech.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t packed = t->antilog[i];
        std::uint32_t c0 = packed % p;
        std::uint32_t w = packed - c0 + (c0 + 1) % p;
        t->zech[i] = w == 0 ? FieldElem::kZeroRep : t->log[w];
    }

    FieldCtx ctx;
    ctx.t_ = t;

    // Trace of the basis elements x^i = pi^i, computed as sum of conjugates.
    std::vector<std::uint32_t> basis_trace(m);
    for (unsigned i = 0; i < m; ++i) {
        FieldElem beta = FieldElem::from_log(i % n);
        FieldElem acc = FieldElem::zero();
        FieldElem conj = beta;
        for (unsigned j = 0; j < m; ++j) {
            acc = ctx.add(acc, conj);
            conj = ctx.pow(conj, p);
        }
        auto tr = ctx.to_prime_field(acc);
        if (!tr) fail(ErrorCode::IdentityViolated, "trace left the prime field");
        basis_trace[i] = *tr;
    }
    t->trace_vec.resize(q);
    for (std::uint32_t packed = 0; packed < q; ++packed) {
        std::uint32_t s = 0, rest = packed;
        for (unsigned d = 0; d < m; ++d) {
            s += (rest % p) * basis_trace[d];
            rest /= p;
        }
        t->trace_vec[packed] = s % p;
    }
    t->trace_log.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) t->trace_log[i] = t->trace_vec[t->antilog[i]];
    if (p < 256) {
        t->trace_log_bytes.resize(2 * std::size_t(n));
        for (std::uint32_t i = 0; i < 2 * n; ++i) t->trace_log_bytes[i] = static_cast<std::uint8_t>(t->trace_log[i % n]);
    }
    return ctx;
}

FieldElem FieldCtx::from_vector(std::uint32_t v) const {
    if (v >= q()) fail(ErrorCode::UsageError, "vector representation out of range");
    return v == 0 ? FieldElem::zero() : FieldElem::from_log(t_->log[v]);
}

std::vector<std::uint32_t> FieldCtx::coordinates(FieldElem x) const {
    std::vector<std::uint32_t> c(m());
    std::uint32_t v = to_vector(x);
    for (auto& d : c) {
        d = v % p();
        v /= p();
    }
    return c;
}

FieldElem FieldCtx::from_coordinates(std::span<const std::uint32_t> c) const {
    std::uint32_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p() + c[i] % p();
    return from_vector(v);
}

FieldElem FieldCtx::from_prime_field(std::int64_t c) const {
    std::int64_t r = c % static_cast<std::int64_t>(p());
    if (r < 0) r += p();
    return from_vector(static_cast<std::uint32_t>(r));
}

std::optional<std::uint32_t> FieldCtx::to_prime_field(FieldElem x) const {
    std::uint32_t v = to_vector(x);
    if (v >= p()) return std::nullopt;
    return v;
}

FieldElem FieldCtx::add(FieldElem x, FieldElem y) const {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const std::uint32_t n = order();
    std::uint32_t d = y.log() >= x.log() ? y.log() - x.log() : y.log() + n - x.log();
    std::uint32_t z = t_->zech[d];
    if (z == FieldElem::kZeroRep) return FieldElem::zero();
    std::uint64_t r = std::uint64_t(x.log()) + z;
    return FieldElem::from_log(static_cast<std::uint32_t>(r % n));
}

FieldElem FieldCtx::neg(FieldElem x) const {
    if (x.is_zero()) return x;
    return FieldElem::from_log(static_cast<std::uint32_t>((std::uint64_t(x.log()) + order() / 2) % order()));
}

FieldElem FieldCtx::mul(FieldElem x, FieldElem y) const {
    if (x.is_zero() || y.is_zero()) return FieldElem::zero();
    return FieldElem::from_log(static_cast<std::uint32_t>((std::uint64_t(x.log()) + y.log()) % order()));
}

FieldElem FieldCtx::inv(FieldElem x) const {
    if (x.is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    return FieldElem::from_log(x.log() == 0 ? 0 : order() - x.log());
}

FieldElem FieldCtx::pow(FieldElem x, std::int64_t e) const {
    if (x.is_zero()) {
        if (e == 0) return one();
        if (e < 0) fail(ErrorCode::DivisionByZero, "negative power of zero");
        return x;
    }
    const std::int64_t n = order();
    std::int64_t r = e % n;
    if (r < 0) r += n;
    return FieldElem::from_log(static_cast<std::uint32_t>(mulmod_u64(x.log(), static_cast<std::uint64_t>(r), n)));
}

FieldElem FieldCtx::frobenius(FieldElem x, unsigned j) const {
    if (x.is_zero()) return x;
    std::uint64_t e = 1;
    for (unsigned i = 0; i < j; ++i) e = e * p() % order();
    return FieldElem::from_log(static_cast<std::uint32_t>(mulmod_u64(x.log(), e, order())));
}

nlohmann::json FieldCtx::descriptor() const {
    return {{"p", p()}, {"m", m()}, {"modulus", modulus()}, {"primitive", true}};
}

int legendre(std::int64_t y, std::uint32_t p) {
    std::int64_t r = y % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    if (r == 0) return 0;
    std::uint64_t acc = 1, base = static_cast<std::uint64_t>(r);
    std::uint64_t e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return acc == 1 ? 1 : -1;
}

Coset cyclotomic_coset(std::uint64_t p, std::uint64_t n, std::uint64_t j) {
    if (n == 0 || j >= n) fail(ErrorCode::UsageError, "coset index must lie in [0, n)");
    Coset c;
    std::uint64_t x = j;
    do {
        c.members.push_back(x);
        x = mulmod_u64(x, p, n);
    } while (x != j);
    std::sort(c.members.begin(), c.members.end());
    c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
    c.representative = c.members.front();
    return c;
}

std::vector<Coset> all_cosets(std::uint64_t p, std::uint64_t n) {
    std::vector<Coset> out;
    std::vector<bool> seen(n, false);
    for (std::uint64_t j = 0; j < n; ++j) {
        if (seen[j]) continue;
        Coset c = cyclotomic_coset(p, n, j);
        for (auto x : c.members) seen[x] = true;
        out.push_back(std::move(c));
    }
    return out;
}

Poly minimal_polynomial(const FieldCtx& ctx, std::uint64_t i) {
    const std::uint32_t n = ctx.order();
    if (i >= n) fail(ErrorCode::UsageError, "minimal polynomial index must lie in [0, q-2]");
    Coset c = cyclotomic_coset(ctx.p(), n, i);
    std::vector<FieldElem> coeffs{ctx.one()};
    for (auto k : c.members) {
        FieldElem root = FieldElem::from_log(static_cast<std::uint32_t>((n - k) % n));
        // multiply by (X - root)
        std::vector<FieldElem> next(coeffs.size() + 1, FieldElem::zero());
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            next[d + 1] = ctx.add(next[d + 1], coeffs[d]);
            next[d] = ctx.sub(next[d], ctx.mul(root, coeffs[d]));
        }
        coeffs = std::move(next);
    }
    Poly out;
    for (auto x : coeffs) {
        auto v = ctx.to_prime_field(x);
        if (!v) fail(ErrorCode::IdentityViolated, "minimal polynomial coefficient outside GF(p)");
        out.push_back(*v);
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    return out;
}

std::string poly_to_string(const Poly& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t d = f.size(); d-- > 0;) {
        if (f[d] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (d == 0 || f[d] != 1) os << f[d];
        if (d >= 1) os << "x";
        if (d >= 2) os << "^" << d;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace apncodes
