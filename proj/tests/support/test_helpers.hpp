#pragma once

// Shared test utilities. The enumeration helpers here are deliberate
// brute-force oracles, independent of the library's counting and sampling
// paths.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/gof.hpp"
#include "mallows/oracle.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace test_support {

inline mallows::Permutation perm(std::vector<std::int32_t> one_based) {
    return mallows::Permutation(one_based);
}

// All n! permutations in lexicographic order.
inline std::vector<mallows::Permutation> all_permutations(int n) {
    std::vector<std::int32_t> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 1);
    std::vector<mallows::Permutation> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

inline bool respects_bounds(const mallows::Permutation& sigma,
                            const mallows::BoundVector& bounds) {
    for (int i = 1; i <= sigma.n(); ++i) {
        const bool ok = bounds.direction() == mallows::BoundDirection::Upper
                            ? sigma(i) <= bounds.effective(i)
                            : sigma(i) >= bounds.effective(i);
        if (!ok) return false;
    }
    return true;
}

// Brute-force enumeration of a restricted set by filtering S_n.
inline std::vector<mallows::Permutation> enumerate_restricted(
    const mallows::BoundVector& bounds) {
    std::vector<mallows::Permutation> out;
    for (auto& sigma : all_permutations(bounds.n()))
        if (respects_bounds(sigma, bounds)) out.push_back(std::move(sigma));
    return out;
}

// Histogram of draws over all n! states, indexed by lexicographic rank.
template <class DrawFn>
std::vector<std::int64_t> state_histogram(int n, int draws, DrawFn&& draw) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>([&] {
        std::uint64_t f = 1;
        for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    }()));
    for (int i = 0; i < draws; ++i)
        ++counts[static_cast<std::size_t>(mallows::lexicographic_rank(draw()))];
    return counts;
}

// TV between an empirical histogram and exact probabilities on the same
// support ordering.
inline double empirical_tv(const std::vector<std::int64_t>& counts,
                           const std::vector<double>& probs) {
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    double s = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        s += std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - probs[i]);
    return 0.5 * s;
}

// TV between two empirical histograms over the same support.
inline double empirical_tv(const std::vector<std::int64_t>& a,
                           const std::vector<std::int64_t>& b) {
    std::int64_t ta = 0, tb = 0;
    for (std::int64_t c : a) ta += c;
    for (std::int64_t c : b) tb += c;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::abs(static_cast<double>(a[i]) / static_cast<double>(ta) -
                      static_cast<double>(b[i]) / static_cast<double>(tb));
    return 0.5 * s;
}

// The invariance test for a kernel against its enumerated stationary law: a
// stationary draw followed by one kernel step must still be stationary.
// Exact in distribution, so the chi-squared null holds when the kernel is
// correct.
template <class StepFn>
mallows::GofResult one_step_stationarity(const mallows::ExactModelTable& table, int reps,
                                         std::uint64_t seed, StepFn&& step) {
    mallows::rng::Stream g(seed);
    std::vector<std::int64_t> counts(table.states.size(), 0);
    for (int r = 0; r < reps; ++r) {
        const mallows::Permutation& start = table.sample(g);
        const mallows::Permutation next = step(start, g);
        ++counts[table.index_of(next)];
    }
    return mallows::chi_squared_gof(counts, table.probabilities);
}

// Histogram over all n! states of one-step draws from a fixed start.
template <class StepFn>
std::vector<std::int64_t> one_step_histogram(const mallows::Permutation& start, int reps,
                                             std::uint64_t seed, StepFn&& step) {
    mallows::rng::Stream g(seed);
    return state_histogram(start.n(), reps, [&] { return step(start, g); });
}

} // namespace test_support
