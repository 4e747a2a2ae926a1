#include <apncodes/kernels.hpp>

#include <cstdlib>
#include <cstring>

namespace apncodes::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool has = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return has;
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* env = std::getenv("APNCODES_KERNEL");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    }();
    return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts) {
    if (active_isa() == Isa::Avx2) {
        avx2::residue_histogram(u, v, w, len, p, counts);
    } else {
        scalar::residue_histogram(u, v, w, len, p, counts);
    }
}

std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p) {
    if (active_isa() == Isa::Avx2) return avx2::zero_residues(u, v, w, len, p);
    return scalar::zero_residues(u, v, w, len, p);
}

}  // namespace apncodes::kernels
