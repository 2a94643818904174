#pragma once

#include <cstdint>
#include <random>

#include "ringcav/types.hpp"

namespace ringcav {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Independent, reproducible substream for (seed, stream_index). Sampling
/// order within a stream never depends on other streams, so parallel Monte
/// Carlo stays deterministic under any scheduling.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream_index + 1));
    const std::uint64_t s0 = detail::splitmix64(s);
    const std::uint64_t s1 = detail::splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(s0), static_cast<std::uint32_t>(s0 >> 32),
                      static_cast<std::uint32_t>(s1), static_cast<std::uint32_t>(s1 >> 32)};
    return std::mt19937_64(seq);
}

/// Box-Muller standard normal. std::normal_distribution is implementation
/// defined; this keeps output byte-identical across standard libraries.
class GaussianSampler {
public:
    explicit GaussianSampler(std::mt19937_64 engine) : engine_(engine) {}

    Scalar operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        Scalar u1 = 0.0;
        while (u1 == 0.0) u1 = uniform_(engine_);
        const Scalar u2 = uniform_(engine_);
        const Scalar r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<Scalar> uniform_{0.0, 1.0};
    bool have_spare_ = false;
    Scalar spare_ = 0.0;
};

}  // namespace ringcav
