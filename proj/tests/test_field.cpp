#include <apncodes/error.hpp>
#include <apncodes/field.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace apncodes;

TEST(Field, CanonicalModuli) {
    EXPECT_EQ(build_field(3, 3).modulus(), (Poly{1, 2, 0, 1}));
    EXPECT_EQ(build_field(3, 5).modulus(), (Poly{1, 2, 0, 0, 0, 1}));
    EXPECT_EQ(build_field(7, 3).modulus(), (Poly{2, 3, 0, 1}));
    EXPECT_EQ(build_field(3, 1).modulus(), (Poly{1, 1}));
    auto two = primitive_moduli(3, 3, 2);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1], (Poly{1, 2, 1, 1}));
}

TEST(Field, RejectsBadInput) {
    try {
        build_field(9, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
    try {
        build_field(2, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
    try {
        build_field(3, 3, Poly{1, 0, 1, 1});  // x^3 + x^2 + 1 = (x - 1)(...)
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPrimitive);
    }
}

TEST(Field, PrimitiveElementHasFullOrder) {
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}, {5u, 2u}, {11u, 1u}}) {
        FieldCtx f = build_field(p, m);
        std::set<std::uint32_t> seen;
        FieldElem x = f.one();
        for (std::uint32_t i = 0; i < f.order(); ++i) {
            seen.insert(f.to_vector(x));
            x = f.mul(x, f.primitive());
        }
        EXPECT_EQ(seen.size(), f.order());
        EXPECT_EQ(x, f.one());
    }
}

TEST(Field, AxiomsOnRandomTriples) {
    std::mt19937 rng(7);
    for (auto [p, m] : {std::pair{3u, 3u}, {3u, 5u}, {7u, 3u}, {5u, 2u}}) {
        FieldCtx f = build_field(p, m);
        std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
        for (int it = 0; it < 2000; ++it) {
            FieldElem a = f.element(pick(rng)), b = f.element(pick(rng)), c = f.element(pick(rng));
            EXPECT_EQ(f.add(a, b), f.add(b, a));
            EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            EXPECT_TRUE(f.add(a, f.neg(a)).is_zero());
            // Addition agrees with coordinate-wise addition.
            auto ca = f.coordinates(a), cb = f.coordinates(b);
            for (unsigned i = 0; i < m; ++i) ca[i] = (ca[i] + cb[i]) % p;
            EXPECT_EQ(f.from_coordinates(ca), f.add(a, b));
            if (!a.is_zero()) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
            // Frobenius is additive.
            EXPECT_EQ(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        }
        try {
            f.inv(FieldElem::zero());
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
        }
    }
}

TEST(Field, TraceIsLinearAndBalanced) {
    for (auto [p, m] : {std::pair{3u, 3u}, {7u, 3u}, {3u, 4u}}) {
        FieldCtx f = build_field(p, m);
        std::vector<std::uint32_t> counts(p, 0);
        for (std::uint32_t i = 0; i < f.q(); ++i) {
            FieldElem x = f.element(i);
            ++counts[f.trace(x)];
            EXPECT_EQ(f.trace(f.frobenius(x, 1)), f.trace(x));
            // Tr(x) = x + x^p + ... as a field element.
            FieldElem s = FieldElem::zero();
            for (unsigned j = 0; j < m; ++j) s = f.add(s, f.frobenius(x, j));
            EXPECT_EQ(f.to_prime_field(s), f.trace(x));
        }
        for (auto c : counts) EXPECT_EQ(c, f.q() / p);
    }
}

TEST(Field, MinusOneAndSquares) {
    FieldCtx f = build_field(3, 3);
    EXPECT_EQ(f.minus_one(), f.neg(f.one()));
    EXPECT_TRUE(f.is_square(f.one()));
    EXPECT_FALSE(f.is_square(f.primitive()));
    EXPECT_EQ(f.to_prime_field(f.from_prime_field(-1)), 2u);
}

TEST(Field, Cosets) {
    auto c = cyclotomic_coset(3, 26, 7);
    EXPECT_EQ(c.representative, 7u);
    EXPECT_EQ(std::set<std::uint64_t>(c.members.begin(), c.members.end()), (std::set<std::uint64_t>{7, 21, 11}));
    EXPECT_EQ(cyclotomic_coset(3, 26, 13).size(), 1u);
    std::size_t total = 0;
    for (const auto& k : all_cosets(3, 26)) total += k.size();
    EXPECT_EQ(total, 26u);
    EXPECT_EQ(all_cosets(3, 26).size(), 10u);
}

TEST(Field, MinimalPolynomials) {
    FieldCtx f = build_field(3, 3);
    // Root pi^{-1}: reciprocal of the modulus, made monic.
    Poly m1 = minimal_polynomial(f, 1);
    ASSERT_EQ(m1.size(), 4u);
    EXPECT_EQ(m1.back(), 1u);
    FieldElem root = f.inv(f.primitive());
    FieldElem acc = FieldElem::zero();
    for (std::size_t i = 0; i < m1.size(); ++i)
        acc = f.add(acc, f.mul(f.from_prime_field(m1[i]), f.pow(root, static_cast<std::int64_t>(i))));
    EXPECT_TRUE(acc.is_zero());
    EXPECT_EQ(minimal_polynomial(f, 13).size(), 2u);
    // The product over all cosets is x^{q-1} - 1.
    Poly prod{1};
    for (const auto& c : all_cosets(3, 26)) prod = poly_mul(prod, minimal_polynomial(f, c.representative), 3);
    Poly expect(27, 0);
    expect[0] = 2;
    expect[26] = 1;
    EXPECT_EQ(prod, expect);
}

TEST(Field, Descriptor) {
    auto d = build_field(3, 3).descriptor();
    EXPECT_EQ(d["p"], 3);
    EXPECT_EQ(d["m"], 3);
    EXPECT_EQ(d["modulus"], nlohmann::json::array({1, 2, 0, 1}));
}
