#include <apncodes/kernels.hpp>

namespace apncodes::kernels::scalar {

void residue_histogram(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                       std::uint32_t p, std::uint64_t* counts) {
    if (w == nullptr) {
        for (std::size_t i = 0; i < len; ++i) {
            unsigned s = unsigned(u[i]) + v[i];
            if (s >= p) s -= p;
            ++counts[s];
        }
        return;
    }
    for (std::size_t i = 0; i < len; ++i) {
        unsigned s = unsigned(u[i]) + v[i] + w[i];
        if (s >= p) s -= p;
        if (s >= p) s -= p;
        ++counts[s];
    }
}

std::uint64_t zero_residues(const std::uint8_t* u, const std::uint8_t* v, const std::uint8_t* w, std::size_t len,
                            std::uint32_t p) {
    std::uint64_t zeros = 0;
    if (w == nullptr) {
        for (std::size_t i = 0; i < len; ++i) zeros += (unsigned(u[i]) + v[i]) % p == 0;
        return zeros;
    }
    for (std::size_t i = 0; i < len; ++i) zeros += (unsigned(u[i]) + v[i] + w[i]) % p == 0;
    return zeros;
}

}  // namespace apncodes::kernels::scalar
