#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/fenwick.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

namespace detail {

// Places bucketed by effective bound: bucket[l] lists the places whose bound
// equals l, so each place becomes eligible exactly once during the sweep.
inline std::vector<std::vector<std::int32_t>> bound_buckets(const BoundVector& bounds) {
    const int n = bounds.n();
    std::vector<std::vector<std::int32_t>> buckets(static_cast<std::size_t>(n) + 1);
    for (int place = 1; place <= n; ++place) {
        const std::int32_t b = bounds.effective(place);
        if (b >= 1 && b <= n) buckets[static_cast<std::size_t>(b)].push_back(place);
    }
    return buckets;
}

// Greedy symbol placement shared by both directions. Upper places symbols
// n, n-1, ..., 1 (a place is eligible once B_i >= l); Lower places 1, 2,
// ..., n (eligible once B_i <= l). Each symbol goes to a uniform choice
// among the eligible free places, which yields an exact uniform draw from
// the restricted set. The number of available choices at every step must
// equal the slack profile N_l / M_l; this cross-checks count_restricted on
// every draw.
template <class URBG>
Permutation sample_restricted_uniform(const BoundVector& bounds, URBG& g) {
    const int n = bounds.n();
    const std::vector<std::int32_t> slack = slack_profile(bounds);
    for (std::int32_t s : slack)
        if (s < 1) throw std::invalid_argument("sample_restricted_uniform: infeasible bounds");

    const auto buckets = bound_buckets(bounds);
    OccupancyIndex free_places(n);
    std::vector<std::int32_t> img(static_cast<std::size_t>(n), -1);

    const bool upper = bounds.direction() == BoundDirection::Upper;
    for (int step = 0; step < n; ++step) {
        const int symbol = upper ? n - step : 1 + step;
        for (std::int32_t place : buckets[static_cast<std::size_t>(symbol)])
            free_places.activate(place);
        const int avail = free_places.active();
        if (avail != slack[static_cast<std::size_t>(symbol - 1)])
            throw std::logic_error("sample_restricted_uniform: slack mismatch");
        const int k = 1 + static_cast<int>(rng::uniform_below(
                              g, static_cast<std::uint64_t>(avail)));
        const int place = free_places.select(k);
        free_places.deactivate(place);
        img[static_cast<std::size_t>(place - 1)] = symbol - 1;
    }
    return Permutation::unsafe_from_zero_based(std::move(img));
}

} // namespace detail

// Exact uniform draw from { tau : tau(i) <= B_i for every i }.
template <class URBG>
Permutation sample_uniform_upper(const BoundVector& bounds, URBG& g) {
    if (bounds.direction() != BoundDirection::Upper)
        throw std::invalid_argument("sample_uniform_upper: bounds must be Upper");
    return detail::sample_restricted_uniform(bounds, g);
}

// Exact uniform draw from { tau : tau(i) >= B_i for every i }.
template <class URBG>
Permutation sample_uniform_lower(const BoundVector& bounds, URBG& g) {
    if (bounds.direction() != BoundDirection::Lower)
        throw std::invalid_argument("sample_uniform_lower: bounds must be Lower");
    return detail::sample_restricted_uniform(bounds, g);
}

} // namespace mallows
