#pragma once

#include <cassert>
#include <cstdint>

namespace epidemigrid {

// 64-bit avalanche finalizer (SplitMix64).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Draw purposes get their own streams so that toggling one feature never
// shifts the draws consumed by another.
enum class RngPurpose : std::uint64_t {
    Placement = 1,
    Destination = 2,
    Response = 3,
};

// Counter-based stream: output i is a pure function of (seed, stream, purpose, i),
// so replaying any stream is independent of every other stream and of platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream, RngPurpose purpose) noexcept
        : key_(derive_key(seed, stream, static_cast<std::uint64_t>(purpose))) {}

    std::uint64_t next() noexcept {
        ++counter_;
        return mix64(key_ + kGamma * counter_);
    }

    // Unbiased integer in [0, n) via rejection.
    std::uint64_t uniform_below(std::uint64_t n) noexcept {
        assert(n >= 1);
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Inclusive integer range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
        assert(lo <= hi);
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
        return lo + static_cast<std::int64_t>(uniform_below(span));
    }

    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream,
                                              std::uint64_t purpose) noexcept {
        std::uint64_t k = mix64(seed + kGamma);
        k = mix64(k ^ mix64(stream + 0xD1B54A32D192ED03ULL));
        k = mix64(k ^ mix64(purpose + 0x8CB92BA72F3D8DD7ULL));
        return k;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace epidemigrid
