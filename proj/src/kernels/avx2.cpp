#include <apncodes/kernels.hpp>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define APNCODES_HAVE_X86 1
#endif

namespace apncodes::kernels::avx2 {

#ifdef APNCODES_HAVE_X86

namespace {

constexpr std::uint32_t kHistMaxPrime = 31;  // one byte counter per residue class
constexpr std::uint32_t kSumMaxPrime = 85;   // 3(p-1) must fit in a byte

__attribute__((target("avx2"))) inline __m256i reduced_sum(const std::uint8_t* u, const std::uint8_t* v,
                                                           const std::uint8_t* w, std::size_t i, __m256i vp) {
    __m256i s = _mm256_add_epi8(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(u + i)),
                                _mm256_loadu_si256(reinterpret_cast<const __m256i*>(v + i)));
    if (w != nullptr) {
        s = _mm256_add_epi8(s, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i)));
        s = _mm256_min_epu8(s, _mm256_sub_epi8(s, vp));
    }
    return _mm256_min_epu8(s, _mm256_sub_epi8(s, vp));
}

__attribute__((target("avx2"))) inline std::uint64_t horizontal_sad(__m256i acc) {
    __m256i sad = _mm256_sad_epu8(acc, _mm256_setzero_si256());
    return std::uint64_t(_mm256_extract_epi64(sad, 0)) + std::uint64_t(_mm256_extract_epi64(sad, 1)) +
           std::uint64_t(_mm256_extract_epi64(sad, 2)) + std::uint64_t(_mm256_extract_epi64(sad, 3));
}

__attribute__((target("avx2"))) std::uint64_t flush(__m256i* acc, std::uint32_t classes, std::uint64_t* counts) {
    std::uint64_t total = 0;
    for (std::uint32_t t = 0; t < classes; ++t) {
        std::uint64_t c = horizontal_sad(acc[t]);
        counts[t] += c;
        total += c;
        acc[t] = _mm256_setzero_si256();
    }
    return total;
}

}  // namespace

__attribute__((target("avx2"))) void residue_histogram(const std::uint8_t* u, const std::uint8_t* v,
                                                       const std::uint8_t* w, std::size_t len, std::uint32_t p,
                                                       std::uint64_t* counts) {
    if (p > kHistMaxPrime) {
        scalar::residue_histogram(u, v, w, len, p, counts);
        return;
    }
    const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
    // Byte counters for classes 0..p-2; class p-1 is what remains.
    const std::uint32_t classes = p - 1;
    __m256i acc[kHistMaxPrime];
    __m256i target[kHistMaxPrime];
    for (std::uint32_t t = 0; t < classes; ++t) {
        acc[t] = _mm256_setzero_si256();
        target[t] = _mm256_set1_epi8(static_cast<char>(t));
    }
    std::uint64_t counted = 0;
    std::size_t i = 0;
    unsigned pending = 0;
    const std::size_t vec_end = len & ~std::size_t(31);
    for (; i < vec_end; i += 32) {
        __m256i s = reduced_sum(u, v, w, i, vp);
        for (std::uint32_t t = 0; t < classes; ++t) acc[t] = _mm256_sub_epi8(acc[t], _mm256_cmpeq_epi8(s, target[t]));
        if (++pending == 255) {
            counted += flush(acc, classes, counts);
            pending = 0;
        }
    }
    counted += flush(acc, classes, counts);
    counts[classes] += vec_end - counted;
    scalar::residue_histogram(u + i, v + i, w ? w + i : nullptr, len - i, p, counts);
}

__attribute__((target("avx2,popcnt"))) std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v,
                                                            const std::uint8_t* w, std::size_t len,
                                                            std::uint32_t p) {
    if (p > kSumMaxPrime) return scalar::zero_residues(u, v, w, len, p);
    const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
    const __m256i zero = _mm256_setzero_si256();
    std::uint64_t zeros = 0;
    std::size_t i = 0;
    const std::size_t vec_end = len & ~std::size_t(31);
    for (; i < vec_end; i += 32) {
        __m256i s = reduced_sum(u, v, w, i, vp);
        unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(s, zero)));
        zeros += static_cast<std::uint64_t>(__builtin_popcount(mask));
    }
    return zeros + scalar::zero_residues(u + i, v + i, w ? w + i : nullptr, len - i, p);
}

#else

void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts) {
    scalar::residue_histogram(u, v, w, len, p, counts);
}

std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p) {
    return scalar::zero_residues(u, v, w, len, p);
}

#endif

}  // namespace apncodes::kernels::avx2
