#include <apncodes/error.hpp>
#include <apncodes/quad_form.hpp>
#include <apncodes/report.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>

namespace apncodes {

nlohmann::json count_json(const mpz_class& c) { return c.get_str(); }

nlohmann::json to_json(const ValueDist& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [v, c] : d.entries) rows.push_back({{"value", v.to_json()}, {"count", count_json(c)}});
    return {{"population", count_json(d.population)}, {"entries", rows}};
}

nlohmann::json to_json(const PairDist& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [v, c] : d.entries) {
        rows.push_back({{"first", v.first.to_json()}, {"second", v.second.to_json()}, {"count", count_json(c)}});
    }
    return {{"population", count_json(d.population)}, {"entries", rows}};
}

nlohmann::json to_json(const WeightDist& d) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [w, c] : d.entries) rows.push_back({{"weight", w}, {"count", count_json(c)}});
    return {{"n", d.n}, {"dimension", d.dimension}, {"population", count_json(d.population())}, {"weights", rows}};
}

nlohmann::json to_json(const Table& t) {
    return std::visit([](const auto& d) { return to_json(d); }, t);
}

bool VerifyReport::pass() const {
    for (const auto& r : records)
        if (!r.match) return false;
    return true;
}

nlohmann::json VerifyReport::body() const {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : records) {
        recs.push_back({{"claim_id", r.claim_id},
                        {"anchor", r.anchor},
                        {"computed", r.computed},
                        {"expected", r.expected},
                        {"match", r.match}});
    }
    return {{"tool_version", kToolVersion}, {"suite", suite}, {"parameters", parameters}, {"records", recs}, {"pass", pass()}};
}

nlohmann::json VerifyReport::timing() const {
    nlohmann::json t = nlohmann::json::array();
    double total = 0;
    for (const auto& r : records) {
        t.push_back({{"claim_id", r.claim_id}, {"runtime_ms", r.runtime_ms}});
        total += r.runtime_ms;
    }
    return {{"records", t}, {"total_ms", total}};
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json b = body();
    return {{"schema", kReportSchema}, {"body", b}, {"body_fnv1a64", fnv1a64_hex(b.dump())}, {"timing", timing()}};
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Outcome {
    nlohmann::json computed, expected;
    bool match = false;
};

class Suite {
public:
    Suite(VerifyReport& rep, const VerifyOptions& opts) : rep_(rep), opts_(opts) {
        scan_.threads = opts.threads;
        scan_.budget = opts.budget;
    }

    const ScanOptions& scan() const { return scan_; }
    const Budget& budget() const { return opts_.budget; }

    // Runs one check. Budget errors abort the suite; any other library error
    // is a failed record carrying the message.
    void check(std::string id, std::string anchor, const std::function<Outcome()>& body) {
        CheckRecord r;
        r.claim_id = std::move(id);
        r.anchor = std::move(anchor);
        auto t0 = std::chrono::steady_clock::now();
        try {
            Outcome o = body();
            r.computed = std::move(o.computed);
            r.expected = std::move(o.expected);
            r.match = o.match;
        } catch (const Error& e) {
            if (e.code() == ErrorCode::BudgetExceeded) throw;
            r.computed = {{"error", e.what()}};
            r.expected = nullptr;
            r.match = false;
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep_.records.push_back(std::move(r));
    }

private:
    VerifyReport& rep_;
    const VerifyOptions& opts_;
    ScanOptions scan_;
};

Outcome compare(const Table& measured, const Table& expected) {
    return {to_json(measured), to_json(expected), measured == expected};
}

std::string tag(std::uint32_t p, unsigned m) { return "(" + std::to_string(p) + "," + std::to_string(m) + ")"; }

std::vector<unsigned> valid_ks(unsigned m, unsigned limit) {
    std::vector<unsigned> ks;
    for (unsigned k = 1; k < m && ks.size() < limit; ++k)
        if (gcd_u64(k, m) == 1) ks.push_back(k);
    return ks;
}

struct Context {
    std::uint32_t p;
    unsigned m;
    FieldCtx ctx;
    std::string at;
    CcCensus census;
    std::map<std::uint64_t, WeightDist> two_zero;  // keyed by the second exponent
    std::optional<std::uint64_t> first_odd, first_even;
};

const WeightDist& code_dist(Context& c, Suite& s, std::uint64_t e) {
    auto it = c.two_zero.find(e);
    if (it == c.two_zero.end()) it = c.two_zero.emplace(e, weight_distribution(make_code(c.ctx, {1, e}), s.scan())).first;
    return it->second;
}

void sums_checks(Context& c, Suite& s, bool quick) {
    const auto& ctx = c.ctx;
    for (unsigned k : valid_ks(c.m, quick ? 1 : 2)) {
        s.check("t0-distribution" + c.at + "/k=" + std::to_string(k), std::string(table_caption(TableId::T0_DIST)), [&] {
            return compare(quadratic_sum_distribution(ctx, k, s.scan()), generate_table(TableId::T0_DIST, c.p, c.m));
        });
    }
    s.check("pair-distribution" + c.at + "/k=1", std::string(table_caption(TableId::PAIR_DIST)), [&] {
        return compare(quadratic_pair_distribution(ctx, 1, s.scan()), generate_table(TableId::PAIR_DIST, c.p, c.m));
    });
    s.check("power-sums" + c.at + "/k=1", "P1 = q^2, P2 = q^2 (2q^2 - qp - q + p)", [&] {
        PowerSums ps = power_sum_checks(ctx, 1, s.scan());
        return Outcome{{{"p1", count_json(ps.p1)}, {"p2", count_json(ps.p2)}},
                       {{"p1", count_json(ps.expected_p1)}, {"p2", count_json(ps.expected_p2)}},
                       ps.p1 == ps.expected_p1 && ps.p2 == ps.expected_p2};
    });
    s.check("n4" + c.at + "/k=1", "N4 = 2q^2 - qp - q + p", [&] {
        mpz_class formula = n4_formula(c.p, c.m);
        mpz_class conv = n4_convolution(ctx, 1, s.scan());
        nlohmann::json computed = {{"convolution", count_json(conv)}};
        bool ok = conv == formula;
        if (sat_pow(ctx.q(), 4) <= s.budget().steps) {
            mpz_class brute = n4_bruteforce(ctx, 1, s.scan());
            computed["bruteforce"] = count_json(brute);
            ok = ok && brute == formula;
        }
        return Outcome{computed, {{"formula", count_json(formula)}}, ok};
    });
    for (unsigned k : valid_ks(c.m, quick ? 1 : c.m)) {
        s.check("appendix-counts" + c.at + "/k=" + std::to_string(k),
                "N1, N2, |S1(alpha)| and the circle count of the N4 evaluation", [&] {
                    AppendixReport r = verify_appendix(ctx, k, s.scan());
                    auto hist = [](const std::map<std::uint64_t, std::uint64_t>& h) {
                        nlohmann::json j = nlohmann::json::object();
                        for (auto [v, n] : h) j[std::to_string(v)] = n;
                        return j;
                    };
                    nlohmann::json computed = {{"k_used", r.k_used},
                                               {"n1_values", hist(r.n1_values)},
                                               {"n2_values", hist(r.n2_values)},
                                               {"s1_sizes", hist(r.s1_sizes)},
                                               {"violations",
                                                {{"n1", r.n1_violations},
                                                 {"n2", r.n2_violations},
                                                 {"product", r.product_violations},
                                                 {"circle", r.circle_violations},
                                                 {"s1", r.s1_violations}}},
                                               {"zero_cases_ok", r.zero_cases_ok},
                                               {"n4_from_s1", count_json(r.n4_from_s1)}};
                    nlohmann::json expected = {{"expected_s1", r.expected_s1},
                                               {"violations", {{"n1", 0}, {"n2", 0}, {"product", 0}, {"circle", 0}, {"s1", 0}}},
                                               {"zero_cases_ok", true},
                                               {"n4_from_s1", count_json(n4_formula(c.p, c.m))}};
                    return Outcome{computed, expected, r.ok() && r.n4_from_s1 == n4_formula(c.p, c.m)};
                });
    }
}

void exponent_checks(Context& c, Suite& s) {
    s.check("census" + c.at, "exponents satisfying the Congruence Condition, one per cyclotomic coset", [&] {
        nlohmann::json reps = nlohmann::json::array();
        bool sound = true;
        for (const auto& r : c.census.representatives) {
            reps.push_back(r.to_json());
            sound = sound && check_cc_witness(c.p, c.m, r.e, *r.cc_witness) && r.residue_class != ResidueClass::Other;
        }
        return Outcome{{{"representatives", reps},
                        {"coset_count", c.census.representatives.size()},
                        {"exponent_count", c.census.exponent_count},
                        {"thm1i_only", c.census.thm1i_only},
                        {"witnesses_verify", sound}},
                       {{"witnesses_verify", true},
                        {"reference_counts", {{"2phi(m)", c.census.two_phi}, {"m+2phi(m)", c.census.m_plus_two_phi}}}},
                       sound};
    });
    if (c.p != 3) return;
    s.check("apn-families" + c.at, "APN exponents for p = 3 with their companions d", [&] {
        nlohmann::json fam = nlohmann::json::array();
        bool ok = true;
        for (const auto& a : apn_exponent_families(c.m)) {
            fam.push_back({{"family", a.family}, {"e", a.e}, {"companion_d", a.companion_d}, {"certificate", a.certificate.to_json()}});
            ok = ok && !a.certificate.empty();
        }
        return Outcome{fam, {{"every_certificate_nonempty", true}}, ok};
    });
}

void value_checks(Context& c, Suite& s) {
    for (auto [e, odd] : {std::pair{c.first_odd, true}, {c.first_even, false}}) {
        if (!e) continue;
        const std::string es = "/e=" + std::to_string(*e);
        TableId tid = odd ? TableId::T_ODD : TableId::T_EVEN;
        TableId sid = odd ? TableId::S_ODD : TableId::S_EVEN;
        s.check("t-distribution" + c.at + es, std::string(table_caption(tid)), [&, e = *e] {
            return compare(binomial_sum_distribution(c.ctx, e, s.scan()), generate_table(tid, c.p, c.m));
        });
        s.check("s-distribution" + c.at + es, std::string(table_caption(sid)), [&, e = *e] {
            return compare(trinomial_sum_distribution(c.ctx, e, s.scan()), generate_table(sid, c.p, c.m));
        });
    }
}

void weight_checks(Context& c, Suite& s, bool quick) {
    std::vector<ExponentCertificate> certs = c.census.representatives;
    for (auto e : c.census.thm1i_only) certs.push_back(classify_exponent(c.p, c.m, e));
    if (quick && certs.size() > 2) certs.resize(2);
    for (const auto& cert : certs) {
        for (TableId id : cert.table_ids) {
            s.check("weights" + c.at + "/C(1," + std::to_string(cert.e) + ")/" + std::string(table_name(id)),
                    std::string(table_caption(id)), [&] {
                        return compare(code_dist(c, s, cert.e), generate_table(id, c.p, c.m));
                    });
        }
    }
    if (quick) return;
    const std::uint64_t half = c.ctx.order() / 2;
    std::set<std::uint64_t> cor2;
    if (c.p == 3) {
        for (const auto& a : apn_exponent_families(c.m))
            if (a.certificate.cc_witness) cor2.insert(a.e);
    }
    std::vector<std::uint64_t> three;
    for (const auto& r : c.census.representatives) three.push_back(r.e);
    for (auto e : cor2)
        if (std::find(three.begin(), three.end(), e) == three.end()) three.push_back(e);
    for (auto e : three) {
        const std::string name = "/C(1," + std::to_string(e) + "," + std::to_string(half) + ")";
        ExponentCertificate cert = classify_exponent(c.p, c.m, e);
        auto tid = weight_table_for(cert, true);
        if (!tid) continue;
        std::optional<WeightDist> measured;
        s.check("weights3" + c.at + name + "/" + std::string(table_name(*tid)), std::string(table_caption(*tid)), [&] {
            measured = weight_distribution(make_code(c.ctx, {1, e, half}), s.scan());
            return compare(*measured, generate_table(*tid, c.p, c.m));
        });
        if (cor2.count(e) && measured) {
            s.check("weights3" + c.at + name + "/COR2", std::string(table_caption(TableId::COR2)),
                    [&] { return compare(*measured, generate_table(TableId::COR2, c.p, c.m)); });
        }
    }
}

void equidistribution_checks(Context& c, Suite& s) {
    s.check("equidistribution" + c.at, "C(1,d) and C(1,e) share a weight distribution when 2de = 2p^tau and d + e = 2 mod 2^r",
            [&] {
                nlohmann::json rows = nlohmann::json::array();
                bool ok = true;
                for (const auto& pr : scan_equidistribution_pairs(c.ctx)) {
                    bool same = code_dist(c, s, pr.d) == code_dist(c, s, pr.e);
                    rows.push_back({{"d", pr.d}, {"e", pr.e}, {"tau", pr.tau}, {"identical", same}});
                    ok = ok && same;
                }
                return Outcome{{{"pairs", rows}}, {{"all_identical", true}}, ok};
            });
}

void dual_checks(Context& c, Suite& s) {
    if (c.p != 3) return;
    std::set<std::uint64_t> reps;
    std::vector<std::uint64_t> es;
    for (const auto& a : apn_exponent_families(c.m)) {
        if (reps.insert(cyclotomic_coset(3, c.ctx.order(), a.e).representative).second) es.push_back(a.e);
    }
    // Only the first family past m = 3: the weight-5 search grows as n^3.
    if (c.m > 3 && es.size() > 1) es.resize(1);
    const std::uint64_t half = c.ctx.order() / 2;
    for (auto e : es) {
        for (bool with_s : {false, true}) {
            std::vector<std::uint64_t> exps{1, e};
            if (with_s) exps.push_back(half);
            CodeSpec code = make_code(c.ctx, exps);
            const unsigned expect = with_s ? 5 : 4;
            s.check("dual-distance" + c.at + "/" + code.name(), "minimum distance of the dual code", [&] {
                DualDistance d = dual_min_distance_at_most(code, 5, s.budget());
                nlohmann::json computed = d.distance ? nlohmann::json(*d.distance) : nlohmann::json("not found");
                return Outcome{{{"distance", computed}, {"positions", d.positions}, {"coefficients", d.coefficients}},
                               {{"distance", expect}},
                               d.distance == expect};
            });
        }
    }
}

void rank_checks(Context& c, Suite& s) {
    s.check("quadratic-form-ranks" + c.at + "/k=1", "rank >= m-2, and rank m for Q(a,b) or Q(-a,b) when a != 0", [&] {
        RankScan r = rank_scan(c.ctx, 1, s.scan());
        nlohmann::json hist = nlohmann::json::array();
        for (const auto& [rr, n] : r.pair_histogram) hist.push_back({rr.first, rr.second, n});
        return Outcome{{{"forms", r.forms},
                        {"rank_pairs", hist},
                        {"below_bound", r.below_bound},
                        {"pairing_failures", r.pairing_failures},
                        {"sum_mismatches", r.sum_mismatches},
                        {"scaling_failures", r.scaling_failures}},
                       {{"below_bound", 0}, {"pairing_failures", 0}, {"sum_mismatches", 0}, {"scaling_failures", 0}},
                       r.ok()};
    });
}

void invariance_checks(Context& c, Suite& s) {
    Poly second = primitive_moduli(c.p, c.m, 2).at(1);
    FieldCtx alt = build_field(c.p, c.m, second);
    s.check("modulus-invariance" + c.at, "results do not depend on the choice of primitive modulus", [&] {
        nlohmann::json computed = {{"modulus", second}};
        bool ok = quadratic_sum_distribution(alt, 1, s.scan()) == quadratic_sum_distribution(c.ctx, 1, s.scan());
        computed["t0_distribution_identical"] = ok;
        if (!c.census.representatives.empty()) {
            const std::uint64_t e = c.census.representatives.front().e;
            const std::uint64_t half = c.ctx.order() / 2;
            bool two = weight_distribution(make_code(alt, {1, e}), s.scan()) == code_dist(c, s, e);
            bool three = weight_distribution(make_code(alt, {1, e, half}), s.scan()) ==
                         weight_distribution(make_code(c.ctx, {1, e, half}), s.scan());
            computed["e"] = e;
            computed["two_zero_identical"] = two;
            computed["three_zero_identical"] = three;
            ok = ok && two && three;
        }
        return Outcome{computed, {{"identical", true}}, ok};
    });
}

}  // namespace

VerifyReport run_verify_suite(std::string_view suite, const std::vector<std::pair<std::uint32_t, unsigned>>& params,
                              const VerifyOptions& opts) {
    if (suite != "desk" && suite != "quick") fail(ErrorCode::UsageError, "unknown suite '" + std::string(suite) + "'");
    const bool quick = suite == "quick";
    std::vector<std::pair<std::uint32_t, unsigned>> sets = params;
    if (sets.empty() && quick) sets.push_back({3, 3});
    if (sets.empty()) sets.assign(std::begin(kDeskParams), std::end(kDeskParams));
    if (opts.modulus && sets.size() != 1) fail(ErrorCode::UsageError, "--modulus needs a single (p, m)");

    VerifyReport rep;
    rep.suite = std::string(suite);
    Suite s(rep, opts);
    for (auto [p, m] : sets) {
        if (m < 3 || m % 2 == 0 || p % 4 != 3) {
            fail(ErrorCode::HypothesisViolated, "the suite needs p = 3 mod 4 and odd m >= 3, got " + tag(p, m));
        }
        Context c{p, m, build_field(p, m, opts.modulus), tag(p, m), enumerate_cc_exponents(p, m), {}, {}, {}};
        for (const auto& r : c.census.representatives) {
            if (r.parity == 1 && !c.first_odd) c.first_odd = r.e;
            if (r.parity == 0 && !c.first_even) c.first_even = r.e;
        }
        rep.parameters.push_back({{"p", p}, {"m", m}, {"field", c.ctx.descriptor()}});

        sums_checks(c, s, quick);
        exponent_checks(c, s);
        value_checks(c, s);
        weight_checks(c, s, quick);
        if (quick) continue;
        equidistribution_checks(c, s);
        dual_checks(c, s);
        rank_checks(c, s);
        if (!opts.modulus) invariance_checks(c, s);
    }
    return rep;
}

}  // namespace apncodes
