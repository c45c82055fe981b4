// Counter-based splittable random number generator.
//
// Streams are keyed by (seed, stream ids); two generators built from the same
// key produce the same sequence on every platform, independent of how work is
// scheduled across threads. Used for per-realization and per-layer streams.

#pragma once

#include "polsim/common.hpp"

#include <cstdint>

namespace polsim {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(detail::mix64(seed)) {}

    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(seed) { absorb(stream); }

    Rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) : Rng(seed) {
        absorb(stream_a);
        absorb(stream_b);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();

    cxd complex_normal() { return cxd(normal(), normal()) / std::sqrt(2.0); }

private:
    void absorb(std::uint64_t v) { state_ = detail::mix64(state_ ^ detail::mix64(v + 0x9E3779B97F4A7C15ULL)); }

    std::uint64_t state_;
};

// Haar-distributed unitary via QR of a complex Ginibre matrix with the
// standard phase fix on the diagonal of R.
Matrix haar_unitary(int dim, Rng& rng);

}  // namespace polsim
