#pragma once

#include <array>
#include <cstdint>

#include "rsc/numeric.hpp"

namespace rsc {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). A draw is a
// pure function of (key, counter), so any (seed, path, step) triple maps to
// the same numbers no matter how paths are scheduled across threads.
struct Philox4x32 {
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    static constexpr std::uint32_t kMultA = 0xD2511F53u;
    static constexpr std::uint32_t kMultB = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::array<std::uint32_t, 4> ctr) {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMultA) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMultB) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += kWeylA;
            k1 += kWeylB;
        }
        return ctr;
    }
};

// Uniform in (0,1): 64 bits from two words, shifted into the open interval.
inline double u01(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t u = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return (static_cast<double>(u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Per-path stream: one Philox block per (step, substream) yields two uniforms.
// Substream 0 drives the state update and bridge test, substream 1 is reserved
// for the planar angle noise so positional traces never perturb the Z path.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t path_index)
        : seed_(seed), path_(path_index) {}

    struct Pair {
        double a;
        double b;
    };

    Pair uniforms(std::uint64_t step, std::uint32_t substream = 0) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32),
            static_cast<std::uint32_t>(step), substream};
        const auto w = Philox4x32::block(seed_, ctr);
        return {u01(w[0], w[1]), u01(w[2], w[3])};
    }

    double normal(std::uint64_t step, std::uint32_t substream = 0) const {
        return num::normal_icdf(uniforms(step, substream).a);
    }

private:
    std::uint64_t seed_;
    std::uint64_t path_;
};

}  // namespace rsc
