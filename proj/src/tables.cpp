#include <apncodes/error.hpp>
#include <apncodes/tables.hpp>

#include <array>
#include <numeric>

namespace apncodes {

namespace {

struct TableInfo {
    TableId id;
    std::string_view name;
    std::string_view caption;
};

constexpr std::array<TableInfo, 12> kInfo{{
    {TableId::WD_I, "WD-I", "Weight distribution I"},
    {TableId::WD_II, "WD-II", "Weight distribution II"},
    {TableId::WD_III, "WD-III", "Weight distribution III"},
    {TableId::T0_DIST, "T0-DIST", "The value distribution of T0(a,b) for odd m >= 3"},
    {TableId::PAIR_DIST, "PAIR-DIST", "The value distribution of (T0(a,b), T0(-a,b)) for odd m >= 3"},
    {TableId::T_ODD, "T-ODD", "The value distribution of {T(a,b): a,b in F_q} for odd e"},
    {TableId::T_EVEN, "T-EVEN", "The value distribution of {T(a,b): a,b in F_q} for even e"},
    {TableId::S_ODD, "S-ODD", "The value distribution of {S(a,b,c): a,b in F_q, c in Omega} for odd e"},
    {TableId::S_EVEN, "S-EVEN", "The value distribution of {S(a,b,c): a,b in F_q, c in Omega} for even e"},
    {TableId::THM5_ODD, "THM5-ODD", "The weight distribution of C(1,e,s) for odd e"},
    {TableId::THM5_EVEN, "THM5-EVEN", "The weight distribution of C(1,e,s) for even e"},
    {TableId::COR2, "COR2", "The weight distribution of C(1,e,s) for three APN exponents"},
}};

const TableInfo& info(TableId id) {
    for (const auto& i : kInfo)
        if (i.id == id) return i;
    fail(ErrorCode::UsageError, "unknown table id");
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto f : prime_factors(n)) r = r / f * (f - 1);
    return r;
}

}  // namespace

std::string_view table_name(TableId id) { return info(id).name; }
std::string_view table_caption(TableId id) { return info(id).caption; }

std::optional<TableId> parse_table_id(std::string_view name) {
    for (const auto& i : kInfo)
        if (i.name == name) return i.id;
    return std::nullopt;
}

std::string_view residue_class_name(ResidueClass c) {
    switch (c) {
        case ResidueClass::One: return "1";
        case ResidueClass::OnePlusHalf: return "1+(p-1)/2";
        case ResidueClass::Other: return "other";
    }
    return "other";
}

nlohmann::json ExponentCertificate::to_json() const {
    auto wit = [](const std::optional<Witness>& w) -> nlohmann::json {
        if (!w) return nullptr;
        return {{"k", w->k}, {"tau", w->tau}};
    };
    nlohmann::json ids = nlohmann::json::array();
    for (auto id : table_ids) ids.push_back(table_name(id));
    return {{"e", e},
            {"coset_rep", coset_rep},
            {"cc_witness", wit(cc_witness)},
            {"thm1i_witness", wit(thm1i_witness)},
            {"parity", parity == 0 ? "even" : "odd"},
            {"residue_class", residue_class_name(residue_class)},
            {"table_ids", ids}};
}

ExponentCertificate classify_exponent(std::uint32_t p, unsigned m, std::uint64_t e) {
    const std::uint64_t n = ipow(p, m) - 1;
    if (e < 1 || e >= n) fail(ErrorCode::UsageError, "exponent must lie in [1, q-2]");
    ExponentCertificate c;
    c.e = e;
    c.coset_rep = cyclotomic_coset(p, n, e).representative;
    c.parity = static_cast<unsigned>(e % 2);
    const std::uint64_t r = e % (p - 1);
    if (r == 1 % (p - 1)) {
        c.residue_class = ResidueClass::One;
    } else if (r == (1 + (p - 1) / 2) % (p - 1)) {
        c.residue_class = ResidueClass::OnePlusHalf;
    }
    c.cc_witness = cc_witness(p, m, e);
    c.thm1i_witness = thm1i_witness(p, m, e);
    if (c.cc_witness && !check_cc_witness(p, m, e, *c.cc_witness)) {
        fail(ErrorCode::IdentityViolated, "witness search returned an invalid witness");
    }
    if (c.thm1i_witness && !check_thm1i_witness(p, m, e, *c.thm1i_witness)) {
        fail(ErrorCode::IdentityViolated, "witness search returned an invalid witness");
    }
    if (c.cc_witness && c.residue_class == ResidueClass::Other) {
        fail(ErrorCode::IdentityViolated, "exponent " + std::to_string(e) + " has a witness but residue class other");
    }
    if (c.thm1i_witness) c.table_ids.push_back(TableId::WD_I);
    if (c.cc_witness) {
        if (c.residue_class == ResidueClass::OnePlusHalf) c.table_ids.push_back(TableId::WD_II);
        if (c.residue_class == ResidueClass::One) c.table_ids.push_back(TableId::WD_III);
    }
    return c;
}

CcCensus enumerate_cc_exponents(std::uint32_t p, unsigned m) {
    if (m % 2 == 0) fail(ErrorCode::HypothesisViolated, "the census needs odd m");
    const std::uint64_t n = ipow(p, m) - 1;
    CcCensus out;
    for (const auto& coset : all_cosets(p, n)) {
        if (coset.representative == 0) continue;
        ExponentCertificate c = classify_exponent(p, m, coset.representative);
        if (c.cc_witness) {
            out.exponent_count += coset.size();
            out.representatives.push_back(std::move(c));
        } else if (c.thm1i_witness) {
            out.thm1i_only.push_back(coset.representative);
        }
    }
    out.two_phi = 2 * euler_phi(m);
    out.m_plus_two_phi = m + out.two_phi;
    return out;
}

std::vector<ApnExponent> apn_exponent_families(unsigned m) {
    if (m < 3 || m % 2 == 0) fail(ErrorCode::HypothesisViolated, "APN families need odd m >= 3");
    const std::uint64_t q = ipow(3, m), n = q - 1;
    const bool m1 = m % 4 == 1;
    std::vector<ApnExponent> out;
    auto push = [&](unsigned family, std::uint64_t e, std::uint64_t d) {
        e %= n;
        ApnExponent a;
        a.e = e;
        a.family = family;
        a.companion_d = d % n;
        a.certificate = classify_exponent(3, m, e);
        out.push_back(std::move(a));
    };
    const std::uint64_t half = n / 2;
    push(1, (ipow(3, (m + 1) / 2) - 1) / 2 + (m1 ? half : 0), ipow(3, (m + 1) / 2) + 1);
    push(2, (ipow(3, m + 1) - 1) / 8 + (m1 ? half : 0), 4);
    push(3, (q + 1) / 4 + half, 2);
    push(4, ipow(3, (m + 1) / 2) - 1, (ipow(3, m1 ? (m + 1) / 2 : (m - 1) / 2) + 1) / 2);
    if (m % 4 == 3) {
        const unsigned k = (m % 8 == 3) ? (m + 1) / 4 : (3 * m - 1) / 4;
        push(5, (ipow(3, (m + 1) / 4) - 1) * (ipow(3, (m + 1) / 2) + 1), (ipow(3, k) + 1) / 2);
    }
    return out;
}

namespace {

// Exact quotient; IdentityViolated on a remainder.
mpz_class exact(const mpz_class& num, const mpz_class& den) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
        fail(ErrorCode::IdentityViolated, "table entry " + num.get_str() + "/" + den.get_str() + " is not an integer");
    }
    return num / den;
}

struct Params {
    std::uint32_t pp;
    unsigned m;
    mpz_class p, q, P, qp, qp2, W0;

    Params(std::uint32_t p_, unsigned m_) : pp(p_), m(m_) {
        p = p_;
        q = mpz_pow(p_, m_);
        P = mpz_pow(p_, (m_ - 1) / 2);
        qp = q / p;
        qp2 = qp / p;
        W0 = qp * (p - 1);
    }
};

class WeightBuilder {
public:
    WeightBuilder(const Params& x, unsigned dimension) {
        d_.p = x.pp;
        d_.dimension = dimension;
        d_.n = static_cast<std::uint32_t>(mpz_class(x.q - 1).get_ui());
    }
    void row(const mpz_class& weight, const mpz_class& count) {
        if (count < 0) fail(ErrorCode::IdentityViolated, "negative multiplicity");
        if (weight < 0 || weight > d_.n) fail(ErrorCode::IdentityViolated, "weight out of range");
        if (count == 0) return;
        d_.entries[static_cast<std::uint32_t>(weight.get_ui())] += count;
    }
    WeightDist finish() {
        if (!d_.population_ok()) {
            fail(ErrorCode::IdentityViolated, "table population " + d_.total().get_str() + " != " + d_.population().get_str());
        }
        return std::move(d_);
    }

private:
    WeightDist d_;
};

class ValueBuilder {
public:
    explicit ValueBuilder(mpz_class population) { d_.population = std::move(population); }
    // value given doubled, so half-integral coefficients stay exact
    void row2(const CycInt& twice, const mpz_class& count) { row(twice.div_exact(2), count); }
    void row(const CycInt& value, const mpz_class& count) {
        if (count < 0) fail(ErrorCode::IdentityViolated, "negative multiplicity");
        if (count == 0) return;
        d_.add(value, count);
    }
    ValueDist finish() {
        if (d_.total() != d_.population) {
            fail(ErrorCode::IdentityViolated, "table population " + d_.total().get_str() + " != " + d_.population.get_str());
        }
        return std::move(d_);
    }

private:
    ValueDist d_;
};

WeightDist wd_table(TableId id, const Params& x) {
    const mpz_class& p = x.p;
    const mpz_class& q = x.q;
    const mpz_class& P = x.P;
    WeightBuilder b(x, 2 * x.m);
    switch (id) {
        case TableId::WD_I:
            b.row(x.W0 - P, exact((p - 1) * (q - 1) * (x.qp + P), 2));
            b.row(x.W0 + P, exact((p - 1) * (q - 1) * (x.qp - P), 2));
            b.row(x.W0, (q - 1) * (x.qp + 1));
            break;
        case TableId::WD_II:
            b.row(x.W0 - exact((p - 1) * P, 2), (q - 1) * (x.qp + P));
            b.row(x.W0 + exact((p - 1) * P, 2), (q - 1) * (x.qp - P));
            b.row(x.W0, (q - 1) * (q - 2 * x.qp + 1));
            break;
        default:  // WD_III
            b.row(x.W0 - (p - 1) * P, exact((q - 1) * (x.qp + P), 2));
            b.row(x.W0 + (p - 1) * P, exact((q - 1) * (x.qp - P), 2));
            b.row(x.W0, (q - 1) * (q - x.qp + 1));
            break;
    }
    b.row(0, 1);
    return b.finish();
}

WeightDist thm5_table(TableId id, const Params& x) {
    const mpz_class& p = x.p;
    const mpz_class& q = x.q;
    const mpz_class& P = x.P;
    const mpz_class& W0 = x.W0;
    WeightBuilder b(x, 2 * x.m + 1);
    if (id == TableId::THM5_ODD) {
        const mpz_class pm2 = q * p * p, pm3 = mpz_pow(x.pp, (x.m + 3) / 2);
        b.row(W0 - P - 1, exact((q - 1) * (pm2 - q - x.qp - pm3 + P + p * p), 2 * (p + 1)));
        b.row(W0 + P - 1, exact((q - 1) * (pm2 - q - x.qp + pm3 - P + p * p), 2 * (p + 1)));
        b.row(W0 - p * P - 1, exact((q - 1) * (x.qp - 1), 2 * (p + 1)));
        b.row(W0 + p * P - 1, exact((q - 1) * (x.qp - 1), 2 * (p + 1)));
        b.row(W0 - (p - 1) * P, exact((q - 1) * (x.qp + P), 2));
        b.row(W0 + (p - 1) * P, exact((q - 1) * (x.qp - P), 2));
        b.row(W0, (q - 1) * (q - x.qp + 1));
    } else if (id == TableId::THM5_EVEN) {
        const mpz_class half = exact((p - 1) * P, 2);
        b.row(W0 - P - 1, exact((q - 1) * (p * q + q + 2 * x.qp - 2 * p * P - 2 * P + p - 1) * (p - 1), 4 * (p + 1)));
        b.row(W0 + P - 1, exact((q - 1) * (p * q + q + 2 * x.qp + 2 * p * P + 2 * P + p - 1) * (p - 1), 4 * (p + 1)));
        b.row(W0 - half - 1, exact((q - 1) * (x.qp - 1), p + 1));
        b.row(W0 + half - 1, exact((q - 1) * (x.qp - 1), p + 1));
        b.row(W0 - half, (q - 1) * (x.qp + P));
        b.row(W0 + half, (q - 1) * (x.qp - P));
        b.row(W0 - 1, exact((q - 1) * (p * q - q - 2 * x.qp + p + 1), 2));
        b.row(W0, (q - 1) * (q + 1 - 2 * x.qp));
    } else {  // COR2, p = 3
        const mpz_class Q = x.qp;
        b.row(2 * Q - P - 1, (q - 1) * (2 * Q - P));
        b.row(2 * Q + P - 1, (q - 1) * (2 * Q + P));
        b.row(2 * Q - P, (q - 1) * (Q + P));
        b.row(2 * Q + P, (q - 1) * (Q - P));
        b.row(2 * Q - 1, 2 * (q - 1) * (Q + 1));
        b.row(2 * Q, (q - 1) * (Q + 1));
    }
    b.row(q - 1, p - 1);
    b.row(0, 1);
    return b.finish();
}

struct Values {
    CycInt g, nu0, nu1, nu2, q;
};

Values values(const Params& x) {
    Values v;
    v.g = gauss_sum(x.pp);
    v.nu0 = v.g.scale(x.P);
    v.nu1 = CycInt::integer(x.pp, x.p * x.P);
    v.nu2 = v.g.scale(x.p * x.P);
    v.q = CycInt::integer(x.pp, x.q);
    return v;
}

// Multiplicities shared by the value tables.
struct Mults {
    mpz_class nu0, nu1_plus, nu1_minus, nu2;                 // single T0 values
    mpz_class same, opposite, cross_plus, cross_minus, far;  // pair cells
};

Mults mults(const Params& x) {
    const mpz_class& p = x.p;
    const mpz_class& q = x.q;
    const mpz_class& P = x.P;
    Mults r;
    r.nu0 = exact(p * p * (q - 1) * (q - x.qp - x.qp2 + 1), 2 * (p * p - 1));
    r.nu1_plus = exact((q - 1) * (x.qp + P), 2);
    r.nu1_minus = exact((q - 1) * (x.qp - P), 2);
    r.nu2 = exact((q - 1) * (x.qp - 1), 2 * (p * p - 1));
    r.same = exact((q - 1) * (p * q - 3 * q + p + 1), 4 * (p - 1));
    r.opposite = exact((p - 1) * (q * q - 1), 4 * (p + 1));
    r.cross_plus = exact((q - 1) * (x.qp + P), 4);
    r.cross_minus = exact((q - 1) * (x.qp - P), 4);
    r.far = r.nu2;
    return r;
}

ValueDist t0_table(const Params& x) {
    Values v = values(x);
    Mults k = mults(x);
    ValueBuilder b(x.q * x.q);
    b.row(v.nu0, k.nu0);
    b.row(-v.nu0, k.nu0);
    b.row(v.nu1, k.nu1_plus);
    b.row(-v.nu1, k.nu1_minus);
    b.row(v.nu2, k.nu2);
    b.row(-v.nu2, k.nu2);
    b.row(v.q, 1);
    return b.finish();
}

PairDist pair_table(const Params& x) {
    Values v = values(x);
    Mults k = mults(x);
    PairDist d;
    d.population = x.q * x.q;
    auto cell = [&](const CycInt& a, const CycInt& c, const mpz_class& n) {
        if (n != 0) d.add({a, c}, n);
    };
    cell(v.nu0, v.nu0, k.same);
    cell(-v.nu0, -v.nu0, k.same);
    cell(v.nu0, -v.nu0, k.opposite);
    cell(-v.nu0, v.nu0, k.opposite);
    for (const CycInt& s : {v.nu0, -v.nu0}) {
        cell(s, v.nu1, k.cross_plus);
        cell(v.nu1, s, k.cross_plus);
        cell(s, -v.nu1, k.cross_minus);
        cell(-v.nu1, s, k.cross_minus);
    }
    cell(v.nu0, v.nu2, k.far);
    cell(v.nu2, v.nu0, k.far);
    cell(-v.nu0, -v.nu2, k.far);
    cell(-v.nu2, -v.nu0, k.far);
    cell(v.q, v.q, 1);
    if (d.total() != d.population) fail(ErrorCode::IdentityViolated, "pair table population mismatch");
    return d;
}

ValueDist t_table(TableId id, const Params& x) {
    Values v = values(x);
    Mults k = mults(x);
    const mpz_class& p = x.p;
    const mpz_class& q = x.q;
    const mpz_class& P = x.P;
    ValueBuilder b(q * q);
    if (id == TableId::T_ODD) {
        b.row(CycInt(x.pp), (q - 1) * (q - x.qp + 1));
        b.row(v.nu1, k.nu1_plus);
        b.row(-v.nu1, k.nu1_minus);
    } else {
        const CycInt pP = CycInt::integer(x.pp, p * P);
        b.row(CycInt(x.pp), exact((p - 1) * (q * q - 1), 2 * (p + 1)));
        b.row(v.nu0, k.same);
        b.row(-v.nu0, k.same);
        b.row2(v.nu0 + pP, 2 * k.cross_plus);
        b.row2(-v.nu0 + pP, 2 * k.cross_plus);
        b.row2(v.nu0 - pP, 2 * k.cross_minus);
        b.row2(-v.nu0 - pP, 2 * k.cross_minus);
        b.row2(v.nu0.scale(1 + p), exact((q - 1) * (x.qp - 1), p * p - 1));
        b.row2(-v.nu0.scale(1 + p), exact((q - 1) * (x.qp - 1), p * p - 1));
    }
    b.row(v.q, 1);
    return b.finish();
}

ValueDist s_table(TableId id, const Params& x) {
    Values v = values(x);
    Mults k = mults(x);
    const mpz_class& p = x.p;
    const mpz_class& q = x.q;
    const mpz_class& P = x.P;
    ValueBuilder b(q * q * p);
    const CycInt two = CycInt::integer(x.pp, 2);
    for (std::uint32_t t = 0; t < x.pp; ++t) {
        const CycInt wt = CycInt::omega_power(x.pp, t), wmt = CycInt::omega_power(x.pp, -static_cast<std::int64_t>(t));
        const CycInt c = wt + wmt, d = wt - wmt;
        const CycInt base2 = two - c;  // twice 1 - c/2
        if (id == TableId::S_ODD) {
            b.row2(base2 + d * v.nu0, k.nu0);
            b.row2(base2 - d * v.nu0, k.nu0);
            b.row2(base2 + c * v.nu1, k.nu1_plus);
            b.row2(base2 - c * v.nu1, k.nu1_minus);
            b.row2(base2 + d * v.nu2, k.nu2);
            b.row2(base2 - d * v.nu2, k.nu2);
        } else {
            const CycInt gP = v.nu0, pP = CycInt::integer(x.pp, p * P);
            b.row2(base2 + c * v.nu0, k.same);
            b.row2(base2 - c * v.nu0, k.same);
            b.row2(base2 + d * v.nu0, k.opposite);
            b.row2(base2 - d * v.nu0, k.opposite);
            b.row2(base2 + wt * gP + wmt * pP, 2 * k.cross_plus);
            b.row2(base2 - wt * gP + wmt * pP, 2 * k.cross_plus);
            b.row2(base2 + wt * gP - wmt * pP, 2 * k.cross_minus);
            b.row2(base2 - wt * gP - wmt * pP, 2 * k.cross_minus);
            const CycInt mixed = (wt + wmt.scale(p)) * gP;
            b.row2(base2 + mixed, exact((q - 1) * (x.qp - 1), p * p - 1));
            b.row2(base2 - mixed, exact((q - 1) * (x.qp - 1), p * p - 1));
        }
        b.row2(two + c.scale(q - 1), 1);
    }
    return b.finish();
}

bool needs_three_mod_four(TableId id) {
    return id != TableId::WD_I && id != TableId::WD_II && id != TableId::WD_III;
}

}  // namespace

Table generate_table(TableId id, std::uint32_t p, unsigned m) {
    if (!is_prime(p) || p == 2) fail(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
    if (m < 3 || m % 2 == 0) fail(ErrorCode::HypothesisViolated, std::string(table_name(id)) + " needs odd m >= 3");
    if (needs_three_mod_four(id) && p % 4 != 3) {
        fail(ErrorCode::HypothesisViolated, std::string(table_name(id)) + " needs p = 3 mod 4");
    }
    if (id == TableId::COR2 && p != 3) fail(ErrorCode::HypothesisViolated, "COR2 needs p = 3");
    Params x(p, m);
    switch (id) {
        case TableId::WD_I:
        case TableId::WD_II:
        case TableId::WD_III: return wd_table(id, x);
        case TableId::T0_DIST: return t0_table(x);
        case TableId::PAIR_DIST: return pair_table(x);
        case TableId::T_ODD:
        case TableId::T_EVEN: return t_table(id, x);
        case TableId::S_ODD:
        case TableId::S_EVEN: return s_table(id, x);
        case TableId::THM5_ODD:
        case TableId::THM5_EVEN:
        case TableId::COR2: return thm5_table(id, x);
    }
    fail(ErrorCode::UsageError, "unknown table id");
}

std::optional<TableId> weight_table_for(const ExponentCertificate& cert, bool with_s) {
    if (!with_s) return cert.table_id();
    if (!cert.cc_witness) return std::nullopt;
    return cert.parity == 0 ? TableId::THM5_EVEN : TableId::THM5_ODD;
}

}  // namespace apncodes
