#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/fenwick.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

struct CouplingOutcome {
    Permutation x;       // uniform on S  = { sigma : sigma(i) >= b_i }
    Permutation x_prime; // uniform on S' = { ... with b_k replaced by b'_k }
    std::int64_t rho;    // adjacent-transposition distance between them
};

namespace detail {

// Coupled sequential placement of the symbols 1, 2, ..., n for two
// Lower-restricted uniform laws whose bound vectors differ only at place k:
// X uses the stricter bound hi, X' the relaxed bound lo < hi. Place k
// becomes eligible for X' at symbol lo and for X at symbol hi, so the run
// has three regimes:
//   l <  lo        shared choices, the two eligible sets coincide;
//   lo <= l < hi   X' has one extra eligible place t (initially k): with
//                  probability 1/(N+1) X' takes t while X draws fresh, and
//                  the place X took becomes the new extra;
//   l >= hi        if a split ever happened, X's extra is k and X''s is t;
//                  the pair (X -> k, X' -> t) is matched with probability
//                  1/N, after which the trajectories coincide.
// Each marginal is a uniform draw from its restricted set, and the outputs
// differ by a chain of shifted assignments, so rho(X, X') <= 2n.
template <class URBG>
std::pair<Permutation, Permutation> couple_lower_pair(
    const std::vector<std::int32_t>& effective, int k, std::int32_t lo, std::int32_t hi,
    URBG& g) {
    const int n = static_cast<int>(effective.size());

    // buckets[l] = places with effective bound l, for X (place k under hi)
    std::vector<std::vector<std::int32_t>> buckets(static_cast<std::size_t>(n) + 1);
    for (int place = 1; place <= n; ++place) {
        const std::int32_t b =
            place == k ? hi : effective[static_cast<std::size_t>(place - 1)];
        buckets[static_cast<std::size_t>(b)].push_back(place);
    }

    OccupancyIndex free_x(n); // X's eligible free places
    std::vector<std::int32_t> img_x(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> img_xp(static_cast<std::size_t>(n), -1);

    int extra = 0;       // X''s extra eligible place; 0 = none
    bool merged = false; // trajectories coincide from here on

    for (int l = 1; l <= n; ++l) {
        for (std::int32_t place : buckets[static_cast<std::size_t>(l)])
            free_x.activate(place);
        if (l == lo && lo < hi) extra = k; // place k opens early for X'
        if (l == hi && extra == static_cast<std::int32_t>(k)) {
            // no split happened while X' was ahead; the sets coincide again
            extra = 0;
        }

        const int avail = free_x.active();
        if (avail < 1) throw std::logic_error("couple_lower_pair: infeasible bounds for X");

        int place_x;
        int place_xp;
        if (extra == 0) {
            const int kth =
                1 + static_cast<int>(rng::uniform_below(g, static_cast<std::uint64_t>(avail)));
            place_x = place_xp = free_x.select(kth);
        } else if (l < hi) {
            // one-extra regime: X' chooses among X's avail places plus `extra`
            const int r = 1 + static_cast<int>(rng::uniform_below(
                                  g, static_cast<std::uint64_t>(avail) + 1));
            if (r <= avail) {
                place_x = place_xp = free_x.select(r);
            } else {
                place_xp = extra;
                const int kth = 1 + static_cast<int>(rng::uniform_below(
                                        g, static_cast<std::uint64_t>(avail)));
                place_x = free_x.select(kth);
                extra = place_x; // taken by X only; stays open for X'
            }
        } else {
            // mirrored-pair regime: X still holds k free, X' still holds `extra`
            const int r =
                1 + static_cast<int>(rng::uniform_below(g, static_cast<std::uint64_t>(avail)));
            const int rank_k = free_x.rank(k);
            if (r == rank_k) {
                place_x = k;
                place_xp = extra;
                extra = 0;
                merged = true;
            } else {
                place_x = place_xp = free_x.select(r);
            }
        }

        free_x.deactivate(place_x);
        img_x[static_cast<std::size_t>(place_x - 1)] = l - 1;
        img_xp[static_cast<std::size_t>(place_xp - 1)] = l - 1;
    }
    if (!merged && extra != 0)
        throw std::logic_error("couple_lower_pair: unresolved extra place");

    return {Permutation::unsafe_from_zero_based(std::move(img_x)),
            Permutation::unsafe_from_zero_based(std::move(img_xp))};
}

} // namespace detail

// Runs the coupled placement for the pair of Lower-restricted sets
//   S  = { sigma : sigma(i) >= B_i for every i },
//   S' = S with the bound at place k replaced by bk_prime,
// and returns (X, X') with X uniform on S, X' uniform on S', and their
// adjacent-transposition distance rho (always <= 2n).
template <class URBG>
CouplingOutcome coupling_lemma_experiment(const BoundVector& bounds, int k, int bk_prime,
                                          URBG& g) {
    if (bounds.direction() != BoundDirection::Lower)
        throw std::invalid_argument("coupling_lemma_experiment: bounds must be Lower");
    const int n = bounds.n();
    if (k < 1 || k > n) throw std::invalid_argument("coupling_lemma_experiment: k out of range");
    if (bk_prime < 1 || bk_prime > n)
        throw std::invalid_argument("coupling_lemma_experiment: b'_k out of range");
    if (!feasible(bounds))
        throw std::invalid_argument("coupling_lemma_experiment: S is empty");

    std::vector<std::int32_t> eff = bounds.effective_bounds();
    const std::int32_t bk = eff[static_cast<std::size_t>(k - 1)];
    {
        std::vector<std::int32_t> eff_prime = eff;
        eff_prime[static_cast<std::size_t>(k - 1)] = static_cast<std::int32_t>(bk_prime);
        if (!feasible(BoundVector::from_integers(BoundDirection::Lower, eff_prime)))
            throw std::invalid_argument("coupling_lemma_experiment: S' is empty");
    }

    CouplingOutcome out = [&]() -> CouplingOutcome {
        if (bk_prime == bk) {
            // identical constraints: run the shared path, X = X'
            auto [x, xp] = detail::couple_lower_pair(eff, k, bk, bk, g);
            return {std::move(x), std::move(xp), 0};
        }
        if (bk_prime < bk) {
            // X strict at hi = b_k, X' relaxed at lo = b'_k
            auto [x, xp] = detail::couple_lower_pair(eff, k, bk_prime, bk, g);
            return {std::move(x), std::move(xp), 0};
        }
        // b'_k > b_k: swap roles, the strict side is S'
        auto [xp, x] = detail::couple_lower_pair(eff, k, bk, bk_prime, g);
        return {std::move(x), std::move(xp), 0};
    }();

    out.rho = adjacent_transposition_distance(out.x, out.x_prime);
    return out;
}

} // namespace mallows
