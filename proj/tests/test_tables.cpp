#include <apncodes/error.hpp>
#include <apncodes/tables.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace apncodes;

namespace {

const WeightDist& wd(const Table& t) { return std::get<WeightDist>(t); }
const ValueDist& vd(const Table& t) { return std::get<ValueDist>(t); }

std::map<std::uint32_t, mpz_class> rows(std::initializer_list<std::pair<std::uint32_t, long>> r) {
    std::map<std::uint32_t, mpz_class> m;
    for (auto [w, c] : r) m[w] = c;
    return m;
}

ValueDist conj_half_sum(const ValueDist& t0) {
    ValueDist out;
    out.population = t0.population;
    for (const auto& [v, c] : t0.entries) out.add((v + v.conj()).div_exact(2), c);
    return out;
}

}  // namespace

TEST(Tables, NamesRoundTrip) {
    for (TableId id : kAllTables) {
        EXPECT_EQ(parse_table_id(table_name(id)), id);
        EXPECT_FALSE(table_caption(id).empty());
    }
    EXPECT_EQ(table_caption(TableId::WD_I), "Weight distribution I");
    EXPECT_FALSE(parse_table_id("WD-IV").has_value());
}

TEST(Tables, ClassifyExamples) {
    auto c7 = classify_exponent(3, 3, 7);
    ASSERT_TRUE(c7.cc_witness);
    EXPECT_EQ(*c7.cc_witness, (Witness{1, 0}));
    EXPECT_EQ(c7.parity, 1u);
    EXPECT_EQ(c7.table_id(), TableId::WD_III);

    auto c8 = classify_exponent(3, 3, 8);
    ASSERT_TRUE(c8.cc_witness);
    ASSERT_TRUE(c8.thm1i_witness);
    EXPECT_EQ(*c8.thm1i_witness, (Witness{3, 1}));
    EXPECT_EQ(c8.table_ids, (std::vector<TableId>{TableId::WD_I, TableId::WD_II}));

    EXPECT_TRUE(classify_exponent(3, 3, 5).empty());
    EXPECT_EQ(classify_exponent(3, 3, 5).table_id(), std::nullopt);
}

TEST(Tables, WitnessSearchIsComplete) {
    // Full residue scan: a witness exists iff some k in [1, 2m] and tau hit.
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}}) {
        const std::uint64_t n = ipow(p, m) - 1;
        for (std::uint64_t e = 1; e < n; ++e) {
            bool found = false;
            for (unsigned k = 1; k <= 2 * m && !found; ++k) {
                if (gcd_u64(k, m) != 1) continue;
                for (unsigned tau = 0; tau < m && !found; ++tau)
                    found = check_cc_witness(p, m, e, Witness{k, tau});
            }
            auto c = classify_exponent(p, m, e);
            EXPECT_EQ(found, c.cc_witness.has_value()) << p << "," << m << " e=" << e;
            if (c.cc_witness) EXPECT_NE(c.residue_class, ResidueClass::Other);
        }
    }
}

TEST(Tables, Census) {
    auto c = enumerate_cc_exponents(3, 3);
    std::set<std::uint64_t> reps;
    for (const auto& r : c.representatives) reps.insert(r.coset_rep);
    EXPECT_EQ(reps, (std::set<std::uint64_t>{7, 8}));
    EXPECT_EQ(c.exponent_count, 6u);
    EXPECT_EQ(c.two_phi, 4u);
    EXPECT_EQ(c.m_plus_two_phi, 7u);
    EXPECT_FALSE(enumerate_cc_exponents(3, 5).representatives.empty());
    EXPECT_FALSE(enumerate_cc_exponents(7, 3).representatives.empty());
}

TEST(Tables, ApnFamilies) {
    std::map<unsigned, std::uint64_t> m3, m5;
    for (const auto& a : apn_exponent_families(3)) {
        m3[a.family] = a.e;
        EXPECT_FALSE(a.certificate.empty()) << "family " << a.family;
    }
    for (const auto& a : apn_exponent_families(5)) {
        m5[a.family] = a.e;
        EXPECT_FALSE(a.certificate.empty()) << "family " << a.family;
    }
    EXPECT_EQ(m3, (std::map<unsigned, std::uint64_t>{{1, 4}, {2, 10}, {3, 20}, {4, 8}, {5, 20}}));
    EXPECT_EQ(m5, (std::map<unsigned, std::uint64_t>{{1, 134}, {2, 212}, {3, 182}, {4, 26}}));
}

TEST(Tables, WeightTables33) {
    EXPECT_EQ(wd(generate_table(TableId::WD_I, 3, 3)).entries, rows({{0, 1}, {15, 312}, {18, 260}, {21, 156}}));
    EXPECT_EQ(wd(generate_table(TableId::WD_III, 3, 3)).entries, rows({{0, 1}, {12, 156}, {18, 494}, {24, 78}}));
    EXPECT_EQ(wd(generate_table(TableId::THM5_ODD, 3, 3)).entries,
              rows({{0, 1}, {8, 26}, {12, 156}, {14, 624}, {18, 494}, {20, 780}, {24, 78}, {26, 28}}));
    EXPECT_EQ(wd(generate_table(TableId::COR2, 3, 3)).entries,
              rows({{0, 1}, {14, 390}, {15, 312}, {17, 520}, {18, 260}, {20, 546}, {21, 156}, {26, 2}}));
}

TEST(Tables, PThreeCoincidences) {
    for (unsigned m : {3u, 5u, 7u, 9u}) {
        EXPECT_EQ(wd(generate_table(TableId::WD_I, 3, m)), wd(generate_table(TableId::WD_II, 3, m))) << m;
        EXPECT_EQ(wd(generate_table(TableId::COR2, 3, m)), wd(generate_table(TableId::THM5_EVEN, 3, m))) << m;
    }
    EXPECT_NE(wd(generate_table(TableId::WD_I, 7, 3)), wd(generate_table(TableId::WD_II, 7, 3)));
}

TEST(Tables, FirstMoments) {
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}, {11u, 5u}, {5u, 3u}}) {
        for (TableId id : {TableId::WD_I, TableId::WD_II, TableId::WD_III, TableId::THM5_ODD, TableId::THM5_EVEN}) {
            if (p % 4 != 3 && (id == TableId::THM5_ODD || id == TableId::THM5_EVEN)) continue;
            EXPECT_TRUE(wd(generate_table(id, p, m)).first_moment_ok()) << table_name(id) << " " << p << "," << m;
        }
    }
}

TEST(Tables, ValueTablesFollowFromPairTable) {
    // T and S tables are the pushforward of the pair table under the reductions.
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}, {7u, 5u}, {11u, 3u}}) {
        PairDist pairs = std::get<PairDist>(generate_table(TableId::PAIR_DIST, p, m));
        ValueDist t0 = vd(generate_table(TableId::T0_DIST, p, m));
        EXPECT_EQ(pairs.first_marginal(), t0);
        EXPECT_EQ(vd(generate_table(TableId::T_ODD, p, m)), conj_half_sum(t0));

        ValueDist t_even;
        t_even.population = pairs.population;
        for (const auto& [xy, c] : pairs.entries) t_even.add((xy.first + xy.second).div_exact(2), c);
        EXPECT_EQ(vd(generate_table(TableId::T_EVEN, p, m)), t_even);

        ValueDist s_odd, s_even;
        s_odd.population = s_even.population = pairs.population * p;
        const CycInt two = CycInt::integer(p, 2);
        for (std::uint32_t t = 0; t < p; ++t) {
            CycInt wt = CycInt::omega_power(p, t), wmt = CycInt::omega_power(p, -static_cast<std::int64_t>(t));
            CycInt base2 = two - wt - wmt;
            for (const auto& [x, c] : t0.entries) s_odd.add((base2 + wt * x + wmt * x.conj()).div_exact(2), c);
            for (const auto& [xy, c] : pairs.entries)
                s_even.add((base2 + wt * xy.first + wmt * xy.second).div_exact(2), c);
        }
        EXPECT_EQ(vd(generate_table(TableId::S_ODD, p, m)), s_odd) << p << "," << m;
        EXPECT_EQ(vd(generate_table(TableId::S_EVEN, p, m)), s_even) << p << "," << m;
    }
}

TEST(Tables, Hypotheses) {
    auto code_of = [](TableId id, std::uint32_t p, unsigned m) {
        try {
            generate_table(id, p, m);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::UsageError;
    };
    EXPECT_EQ(code_of(TableId::WD_I, 3, 4), ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of(TableId::T_EVEN, 5, 3), ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of(TableId::COR2, 7, 3), ErrorCode::HypothesisViolated);
    EXPECT_EQ(code_of(TableId::WD_I, 9, 3), ErrorCode::NotPrime);
}

TEST(Tables, MatchMeasured33) {
    FieldCtx f = build_field(3, 3);
    EXPECT_EQ(quadratic_sum_distribution(f, 1), vd(generate_table(TableId::T0_DIST, 3, 3)));
    EXPECT_EQ(quadratic_pair_distribution(f, 1), std::get<PairDist>(generate_table(TableId::PAIR_DIST, 3, 3)));
    EXPECT_EQ(binomial_sum_distribution(f, 7), vd(generate_table(TableId::T_ODD, 3, 3)));
    EXPECT_EQ(binomial_sum_distribution(f, 8), vd(generate_table(TableId::T_EVEN, 3, 3)));
    EXPECT_EQ(trinomial_sum_distribution(f, 7), vd(generate_table(TableId::S_ODD, 3, 3)));
    EXPECT_EQ(trinomial_sum_distribution(f, 8), vd(generate_table(TableId::S_EVEN, 3, 3)));
}

TEST(Tables, MatchMeasured73) {
    FieldCtx f = build_field(7, 3);
    EXPECT_EQ(quadratic_sum_distribution(f, 1), vd(generate_table(TableId::T0_DIST, 7, 3)));
    EXPECT_EQ(quadratic_pair_distribution(f, 1), std::get<PairDist>(generate_table(TableId::PAIR_DIST, 7, 3)));
    EXPECT_EQ(binomial_sum_distribution(f, 43), vd(generate_table(TableId::T_ODD, 7, 3)));
    EXPECT_EQ(binomial_sum_distribution(f, 214), vd(generate_table(TableId::T_EVEN, 7, 3)));
    EXPECT_EQ(weight_distribution(make_code(f, {1, 43})), wd(generate_table(TableId::WD_III, 7, 3)));
}
