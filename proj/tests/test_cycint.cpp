#include <apncodes/cycint.hpp>
#include <apncodes/error.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace apncodes;

namespace {

CycInt random_cyc(std::uint32_t p, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-50, 50);
    std::vector<mpz_class> c(p - 1);
    for (auto& x : c) x = d(rng);
    return CycInt(p, c);
}

}  // namespace

TEST(CycInt, TraceHistogramCanonicalises) {
    std::vector<std::uint64_t> h{9, 12, 6};
    CycInt v = CycInt::from_trace_histogram(3, h);
    EXPECT_EQ(v.coeffs(), (std::vector<mpz_class>{3, 6}));
    EXPECT_EQ(v.pretty(), "3 + 6·ω");
}

TEST(CycInt, OmegaPowers) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        CycInt sum(p);
        for (std::uint32_t t = 0; t < p; ++t) sum += CycInt::omega_power(p, t);
        EXPECT_TRUE(sum.is_zero());
        EXPECT_EQ(CycInt::omega_power(p, p), CycInt::integer(p, 1));
        EXPECT_EQ(CycInt::omega_power(p, -1), CycInt::omega_power(p, p - 1));
        EXPECT_EQ(CycInt::omega_power(p, 2) * CycInt::omega_power(p, p - 1), CycInt::omega_power(p, 1));
    }
}

TEST(CycInt, RingLaws) {
    std::mt19937 rng(11);
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        for (int it = 0; it < 200; ++it) {
            CycInt a = random_cyc(p, rng), b = random_cyc(p, rng), c = random_cyc(p, rng);
            EXPECT_EQ(a * b, b * a);
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_TRUE((a - a).is_zero());
            EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
            EXPECT_EQ(a.rotate(3), a * CycInt::omega_power(p, 3));
            EXPECT_EQ(a.scale(6).div_exact(6), a);
        }
    }
}

TEST(CycInt, DivExactRejectsRemainder) {
    try {
        CycInt(3, {1, 2}).div_exact(2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IdentityViolated);
    }
}

TEST(CycInt, GaussSum) {
    EXPECT_EQ(gauss_sum(3).coeffs(), (std::vector<mpz_class>{1, 2}));
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        CycInt g = gauss_sum(p);
        int sign = (p % 4 == 1) ? 1 : -1;
        EXPECT_EQ(g * g, CycInt::integer(p, sign * static_cast<int>(p)));
        EXPECT_FALSE(g.is_integer());
    }
}

TEST(CycInt, Symbolic) {
    EXPECT_EQ(CycInt::integer(3, 9).symbolic(), "3^2");
    EXPECT_EQ(CycInt::integer(3, -27).symbolic(), "-3^3");
    EXPECT_EQ(CycInt::integer(3, 0).symbolic(), "0");
    EXPECT_EQ(gauss_sum(3).scale(-3).symbolic(), "-3^1*sqrt(-3)");
    EXPECT_EQ(gauss_sum(5).scale(25).symbolic(), "5^2*sqrt(5)");
    EXPECT_EQ(gauss_sum(7).symbolic(), "7^0*sqrt(-7)");
    EXPECT_FALSE(CycInt::integer(3, 6).symbolic().has_value());
    EXPECT_FALSE(CycInt(3, {3, 6}).scale(2).symbolic().has_value());
}

TEST(CycInt, OrderingIsLexicographic) {
    CycInt a(3, {-9, -18}), b(3, {-9, 0}), c(3, {3, 6});
    EXPECT_LT(a, b);
    EXPECT_LT(b, c);
    EXPECT_EQ(CycInt::integer(3, 27).as_integer(), mpz_class(27));
    EXPECT_FALSE(c.as_integer().has_value());
}

TEST(CycInt, Json) {
    auto j = CycInt(3, {3, 6}).to_json();
    EXPECT_EQ(j["coeffs"], nlohmann::json::array({3, 6}));
    EXPECT_EQ(j["pretty"], "3 + 6·ω");
    mpz_class big;
    big = "123456789012345678901234567890";
    auto jb = CycInt::integer(3, big).to_json();
    EXPECT_EQ(jb["coeffs"][0], "123456789012345678901234567890");
}
