#include "dunkl/rng.hpp"

#include <cmath>
#include <numbers>

namespace dunkl {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
        std::uint64_t p0 = std::uint64_t(M0) * c[0];
        std::uint64_t p1 = std::uint64_t(M1) * c[2];
        std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += W0;
        k[1] += W1;
    }
    return c;
}

namespace {
// (0,1) open interval, 53 bits
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    std::uint64_t v = (std::uint64_t(hi) << 21) ^ (std::uint64_t(lo) >> 11);
    v &= (std::uint64_t(1) << 53) - 1;
    return (double(v) + 0.5) * 0x1.0p-53;
}
} // namespace

void NormalStream::fill(double* out, int n, std::uint32_t path, std::uint32_t tag, std::uint64_t step,
                        std::uint32_t sub) const {
    for (int lane = 0; 2 * lane < n; ++lane) {
        std::array<std::uint32_t, 4> ctr{path, sub, std::uint32_t(step),
                                         (std::uint32_t(step >> 32) & 0xFFFFu) | (tag << 24) |
                                             (std::uint32_t(lane & 0xFF) << 16)};
        auto r = philox4x32(ctr, key_);
        double u1 = to_unit(r[0], r[1]), u2 = to_unit(r[2], r[3]);
        double rad = std::sqrt(-2.0 * std::log(u1));
        double th = 2.0 * std::numbers::pi * u2;
        out[2 * lane] = rad * std::cos(th);
        if (2 * lane + 1 < n) out[2 * lane + 1] = rad * std::sin(th);
    }
}

double NormalStream::uniform(std::uint32_t path, std::uint32_t tag, std::uint64_t step, std::uint32_t sub) const {
    std::array<std::uint32_t, 4> ctr{path, sub, std::uint32_t(step), (tag << 24) | 0x00FF0000u};
    auto r = philox4x32(ctr, key_);
    return to_unit(r[0], r[1]);
}

} // namespace dunkl
