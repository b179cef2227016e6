#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mallows::rng {

// SplitMix64 finalizer: full-avalanche 64-bit mix.
constexpr std::uint64_t avalanche(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream key derivation: key = H(seed, id_0, id_1, ...). Every fold passes
// through the full avalanche, so (seed, replication, stage) tuples map to
// statistically independent streams. This is the documented split rule used
// for replication-parallel runs: results depend only on the tuple, never on
// thread scheduling.
inline std::uint64_t derive_key(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> ids) noexcept {
    std::uint64_t k = avalanche(seed + 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t id : ids) {
        k = avalanche(k ^ avalanche(id + 0xD6E8FEB86659FD93ULL));
    }
    return k;
}

// Counter-based generator: output i is avalanche(key + i*gamma), i.e. the
// SplitMix64 sequence. Satisfies UniformRandomBitGenerator.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept : state_(key) {}

    static Stream derived(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> ids) noexcept {
        return Stream(derive_key(seed, ids));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return avalanche(state_);
    }

private:
    std::uint64_t state_;
};

// Uniform on (0,1]: 53-bit mantissa, never returns 0, so log() is finite.
template <class URBG>
double unit_open_closed(URBG& g) {
    return static_cast<double>((g() >> 11) + 1) * 0x1.0p-53;
}

// Exp(1) variate; finite because unit_open_closed() > 0.
template <class URBG>
double exponential(URBG& g) {
    return -std::log(unit_open_closed(g));
}

// Unbiased uniform draw from {0, ..., m-1} by rejection.
template <class URBG>
std::uint64_t uniform_below(URBG& g, std::uint64_t m) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % m;
    std::uint64_t x;
    do {
        x = g();
    } while (x >= limit);
    return x % m;
}

// Uniform on {lo, ..., hi} inclusive.
template <class URBG>
int uniform_int(URBG& g, int lo, int hi) {
    return lo + static_cast<int>(uniform_below(
                    g, static_cast<std::uint64_t>(hi - lo) + 1));
}

} // namespace mallows::rng
