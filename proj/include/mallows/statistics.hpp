#pragma once

#include <cstdint>
#include <stdexcept>

#include "mallows/permutation.hpp"

namespace mallows {

// Per-sample statistics tracked along a chain. T3 costs O(n log n), so
// callers may deselect it.
enum class Stat : unsigned {
    T1 = 1u << 0,       // number of fixed points
    T2 = 1u << 1,       // length of the cycle containing ceil(n/2)
    T3 = 1u << 2,       // longest increasing subsequence
    H = 1u << 3,        // L1 energy against the identity
    H2 = 1u << 4,       // L2 energy against the identity
    C = 1u << 5,        // number of cycles
    MeanDisp = 1u << 6, // H / n
};

class StatSet {
public:
    constexpr StatSet() = default;
    constexpr StatSet(Stat s) : bits_(static_cast<unsigned>(s)) {}

    static constexpr StatSet all() { return StatSet(0x7fu); }
    static constexpr StatSet none() { return StatSet(0u); }

    constexpr bool has(Stat s) const { return (bits_ & static_cast<unsigned>(s)) != 0; }
    constexpr StatSet with(Stat s) const { return StatSet(bits_ | static_cast<unsigned>(s)); }
    constexpr StatSet without(Stat s) const { return StatSet(bits_ & ~static_cast<unsigned>(s)); }
    constexpr bool empty() const { return bits_ == 0; }

    friend constexpr StatSet operator|(StatSet a, StatSet b) {
        return StatSet(a.bits_ | b.bits_);
    }

private:
    constexpr explicit StatSet(unsigned bits) : bits_(bits) {}
    unsigned bits_ = 0;
};

constexpr StatSet operator|(Stat a, Stat b) { return StatSet(a) | StatSet(b); }

struct StatisticsRecord {
    std::int32_t t1_fixed_points = 0;
    std::int32_t t2_cycle_len_mid = 0;
    std::int32_t t3_lis = 0;
    std::int32_t cycles = 0;
    std::int64_t h_l1 = 0;
    std::int64_t h_l2 = 0;
    double mean_displacement = 0.0;
};

// \sum_i (sigma(i) - i)^2 without materialising the identity.
inline std::int64_t l2_energy(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(z[i]) - static_cast<std::int64_t>(i);
        s += d * d;
    }
    return s;
}

inline StatisticsRecord compute_statistics(const Permutation& sigma,
                                           StatSet which = StatSet::all()) {
    StatisticsRecord r;
    if (which.has(Stat::T1)) r.t1_fixed_points = fixed_points(sigma);
    if (which.has(Stat::T2))
        r.t2_cycle_len_mid = cycle_length_containing(sigma, (sigma.n() + 1) / 2);
    if (which.has(Stat::T3)) r.t3_lis = lis_length(sigma);
    if (which.has(Stat::C)) r.cycles = cycle_count(sigma);
    if (which.has(Stat::H) || which.has(Stat::MeanDisp)) {
        r.h_l1 = 2 * positive_displacement_sum(sigma);
        if (which.has(Stat::MeanDisp))
            r.mean_displacement = static_cast<double>(r.h_l1) / sigma.n();
    }
    if (which.has(Stat::H2)) r.h_l2 = l2_energy(sigma);
    return r;
}

// Value of a single statistic as a double, for histograms and expectations.
inline double statistic_value(const Permutation& sigma, Stat s) {
    switch (s) {
        case Stat::T1: return fixed_points(sigma);
        case Stat::T2: return cycle_length_containing(sigma, (sigma.n() + 1) / 2);
        case Stat::T3: return lis_length(sigma);
        case Stat::C: return cycle_count(sigma);
        case Stat::H: return static_cast<double>(2 * positive_displacement_sum(sigma));
        case Stat::H2: return static_cast<double>(l2_energy(sigma));
        case Stat::MeanDisp:
            return static_cast<double>(2 * positive_displacement_sum(sigma)) / sigma.n();
    }
    throw std::invalid_argument("statistic_value: unknown statistic");
}

} // namespace mallows
