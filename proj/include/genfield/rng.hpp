#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace genfield {

// Counter-based deterministic stream: SplitMix64 keyed by (seed, stream name).
// Every random quantity in the library flows through one of these, so a run is
// reproducible from the single config seed alone, independent of evaluation order.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::string_view stream)
        : key_(mix(seed ^ fnv1a(stream))), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::complex<double> complex_in_box(double half_width = 1.0) {
        double re = uniform(-half_width, half_width);
        double im = uniform(-half_width, half_width);
        return {re, im};
    }

private:
    static constexpr std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001B3ull;
        }
        return h;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace genfield
