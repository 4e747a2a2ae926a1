#include <apncodes/codes.hpp>
#include <apncodes/error.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace apncodes;

namespace {

std::map<std::uint32_t, mpz_class> wd(std::initializer_list<std::pair<std::uint32_t, long>> rows) {
    std::map<std::uint32_t, mpz_class> m;
    for (auto [w, c] : rows) m[w] = c;
    return m;
}

}  // namespace

TEST(Codes, MakeCode) {
    FieldCtx f = build_field(3, 3);
    CodeSpec c = make_code(f, {1, 8, 13});
    EXPECT_EQ(c.length, 26u);
    EXPECT_EQ(c.dimension, 7u);
    EXPECT_FALSE(c.short_coset);
    EXPECT_EQ(c.name(), "C(1,8,13)");
    try {
        make_code(f, {1, 3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OverlappingCosets);
    }
    EXPECT_TRUE(make_code(build_field(3, 4), {1, 10}).short_coset);  // coset {10, 30} has size 2
}

TEST(Codes, WeightDistributions33) {
    FieldCtx f = build_field(3, 3);
    EXPECT_EQ(weight_distribution(make_code(f, {1})).entries, wd({{0, 1}, {18, 26}}));
    EXPECT_EQ(weight_distribution(make_code(f, {1, 7})).entries, wd({{0, 1}, {12, 156}, {18, 494}, {24, 78}}));
    for (std::uint64_t e : {8u, 4u, 10u}) {
        EXPECT_EQ(weight_distribution(make_code(f, {1, e})).entries, wd({{0, 1}, {15, 312}, {18, 260}, {21, 156}}))
            << "e=" << e;
    }
    EXPECT_EQ(weight_distribution(make_code(f, {1, 7, 13})).entries,
              wd({{0, 1}, {8, 26}, {12, 156}, {14, 624}, {18, 494}, {20, 780}, {24, 78}, {26, 28}}));
    auto full = wd({{0, 1}, {14, 390}, {15, 312}, {17, 520}, {18, 260}, {20, 546}, {21, 156}, {26, 2}});
    EXPECT_EQ(weight_distribution(make_code(f, {1, 8, 13})).entries, full);
    EXPECT_EQ(weight_distribution(make_code(f, {1, 20, 13})).entries, full);
}

TEST(Codes, DistributionIdentities) {
    for (auto [p, m, e] : {std::tuple{3u, 3u, 8u}, {3u, 5u, 7u}, {5u, 3u, 3u}}) {
        FieldCtx f = build_field(p, m);
        WeightDist d = weight_distribution(make_code(f, {1, e}));
        EXPECT_TRUE(d.population_ok());
        EXPECT_TRUE(d.first_moment_ok());
        EXPECT_EQ(d.entries.at(0), 1);
    }
}

TEST(Codes, ShortCosetDimension) {
    FieldCtx f = build_field(3, 4);
    CodeSpec c = make_code(f, {1, 10});
    EXPECT_EQ(c.dimension, 6u);
    WeightDist d = weight_distribution(c);
    EXPECT_EQ(d.total(), 729);
    EXPECT_TRUE(d.first_moment_ok());
}

TEST(Codes, WeightRoutesAgree) {
    std::mt19937 rng(4);
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}}) {
        FieldCtx f = build_field(p, m);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
        std::vector<std::uint64_t> exps{1, (p == 7 ? 43u : 7u), f.order() / 2};
        CodeSpec code = make_code(f, exps);
        for (int it = 0; it < 12; ++it) {
            std::vector<FieldElem> msg{f.element(pick(rng)), f.element(pick(rng)), f.element(pick(rng))};
            EXPECT_EQ(codeword_weight(code, msg), codeword_weight_via_sums(code, msg));
        }
    }
}

TEST(Codes, ThreadCountDoesNotChangeResults) {
    FieldCtx f = build_field(3, 5);
    ScanOptions many;
    many.threads = 8;
    CodeSpec c = make_code(f, {1, 7});
    EXPECT_EQ(weight_distribution(c, {}), weight_distribution(c, many));
}

TEST(Codes, DualDistance33) {
    FieldCtx f = build_field(3, 3);
    EXPECT_EQ(dual_min_distance_at_most(make_code(f, {1}), 5).distance, 2u);
    EXPECT_EQ(dual_min_distance_at_most(make_code(f, {1, 8}), 5).distance, 4u);
    EXPECT_EQ(dual_min_distance_at_most(make_code(f, {1, 8}), 3).distance, std::nullopt);
    for (std::uint64_t e : {8u, 20u}) {
        DualDistance d = dual_min_distance_at_most(make_code(f, {1, e, 13}), 5);
        ASSERT_EQ(d.distance, 5u);
        // The witness really is a dual codeword.
        CodeSpec c = make_code(f, {1, e, 13});
        for (std::uint64_t i : c.exponents) {
            FieldElem s = FieldElem::zero();
            for (std::size_t t = 0; t < d.positions.size(); ++t) {
                FieldElem col = f.pow(f.primitive(), static_cast<std::int64_t>(d.positions[t] * i % f.order()));
                s = f.add(s, f.mul(f.from_prime_field(d.coefficients[t]), col));
            }
            EXPECT_TRUE(s.is_zero());
        }
    }
}

TEST(Codes, Equidistribution) {
    FieldCtx f = build_field(3, 3);
    EXPECT_EQ(equidistribution_check(f, 1, 7).status, EquiStatus::NotApplicable);
    auto r = equidistribution_check(f, 7, 11);  // same coset: d e = 77 = 25 mod 26
    EXPECT_TRUE(r.identical);
    FieldCtx g = build_field(3, 5);
    auto pairs = scan_equidistribution_pairs(g);
    EXPECT_FALSE(pairs.empty());
    for (const auto& pr : pairs) {
        auto res = equidistribution_check(g, pr.d, pr.e);
        EXPECT_EQ(res.status, EquiStatus::Holds);
        EXPECT_TRUE(res.identical) << pr.d << "," << pr.e;
    }
}
