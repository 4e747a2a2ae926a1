#include <apncodes/kernels.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace apncodes;
namespace k = apncodes::kernels;

namespace {

std::vector<std::uint8_t> random_row(std::size_t len, std::uint32_t p, std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, p - 1);
    std::vector<std::uint8_t> r(len);
    for (auto& x : r) x = static_cast<std::uint8_t>(d(rng));
    return r;
}

}  // namespace

TEST(Kernels, ScalarMatchesDefinition) {
    std::mt19937 rng(3);
    auto u = random_row(1000, 7, rng), v = random_row(1000, 7, rng), w = random_row(1000, 7, rng);
    std::vector<std::uint64_t> counts(7, 0), expect(7, 0);
    for (std::size_t i = 0; i < 1000; ++i) ++expect[(u[i] + v[i] + w[i]) % 7];
    k::scalar::residue_histogram(u.data(), v.data(), w.data(), 1000, 7, counts.data());
    EXPECT_EQ(counts, expect);
    EXPECT_EQ(k::scalar::zero_residues(u.data(), v.data(), w.data(), 1000, 7), expect[0]);
}

TEST(Kernels, Avx2MatchesScalar) {
    if (!k::cpu_has_avx2()) GTEST_SKIP() << "no AVX2 on this CPU";
    std::mt19937 rng(5);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p = 3; p <= k::kMaxKernelPrime; ++p) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= p; ++d) prime &= p % d != 0;
        if (prime) primes.push_back(p);
    }
    // Lengths straddle the vector width and the 255-iteration flush.
    for (std::size_t len : {0u, 1u, 31u, 32u, 33u, 100u, 8160u, 8191u, 9000u}) {
        for (std::uint32_t p : primes) {
            auto u = random_row(len, p, rng), v = random_row(len, p, rng), w = random_row(len, p, rng);
            for (bool with_w : {false, true}) {
                const std::uint8_t* wp = with_w ? w.data() : nullptr;
                std::vector<std::uint64_t> a(p, 1), b(p, 1);
                k::scalar::residue_histogram(u.data(), v.data(), wp, len, p, a.data());
                k::avx2::residue_histogram(u.data(), v.data(), wp, len, p, b.data());
                ASSERT_EQ(a, b) << "p=" << p << " len=" << len << " w=" << with_w;
                ASSERT_EQ(k::scalar::zero_residues(u.data(), v.data(), wp, len, p),
                          k::avx2::zero_residues(u.data(), v.data(), wp, len, p))
                    << "p=" << p << " len=" << len << " w=" << with_w;
            }
        }
    }
}

TEST(Kernels, ExtremeResidues) {
    if (!k::cpu_has_avx2()) GTEST_SKIP() << "no AVX2 on this CPU";
    for (std::uint32_t p : {3u, 31u, 83u, 251u}) {
        std::vector<std::uint8_t> top(777, static_cast<std::uint8_t>(p - 1));
        std::vector<std::uint64_t> a(p, 0), b(p, 0);
        k::scalar::residue_histogram(top.data(), top.data(), top.data(), top.size(), p, a.data());
        k::avx2::residue_histogram(top.data(), top.data(), top.data(), top.size(), p, b.data());
        EXPECT_EQ(a, b);
        EXPECT_EQ(a[(3 * (p - 1)) % p], 777u);
    }
}

TEST(Kernels, DispatchNamesIsa) {
    auto isa = k::active_isa();
    EXPECT_TRUE(k::isa_name(isa) == "scalar" || k::isa_name(isa) == "avx2");
}
