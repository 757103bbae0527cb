#pragma once
#include <array>
#include <cstdint>

namespace dunkl {

// Philox4x32-10 counter-based generator.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// Deterministic normal draws addressed by (seed; path, stream tag, step, sub, lane).
// Two standard normals per Philox block via Box-Muller on 53-bit uniforms.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)} {}
    // normals j = 0..n-1 of the draw group (path, tag, step, sub)
    void fill(double* out, int n, std::uint32_t path, std::uint32_t tag, std::uint64_t step,
              std::uint32_t sub) const;
    double uniform(std::uint32_t path, std::uint32_t tag, std::uint64_t step, std::uint32_t sub) const;

private:
    std::array<std::uint32_t, 2> key_;
};

} // namespace dunkl
