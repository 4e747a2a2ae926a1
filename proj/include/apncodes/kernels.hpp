#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Inner loops of every exhaustive scan. Inputs are byte arrays of residues
// in [0, p); `w` may be null. Each pass adds into counts[0..p-1] the number of
// positions i with (u[i] + v[i] + w[i]) mod p == t.
namespace apncodes::kernels {

enum class Isa { Scalar, Avx2 };

inline constexpr std::uint32_t kMaxKernelPrime = 251;

namespace scalar {
void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts);
std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p);
}  // namespace scalar

namespace avx2 {
// Callers must check cpu_has_avx2() first.
void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts);
std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p);
}  // namespace avx2

bool cpu_has_avx2();

// Chosen once: AVX2 when the CPU has it, unless APNCODES_KERNEL=scalar.
Isa active_isa();
std::string_view isa_name(Isa isa);

void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts);
std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p);

}  // namespace apncodes::kernels
