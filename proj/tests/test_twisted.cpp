#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "mallows/gof.hpp"
#include "mallows/restricted.hpp"
#include "mallows/twisted.hpp"
#include "support/test_helpers.hpp"

using namespace mallows;
using test_support::empirical_tv;
using test_support::enumerate_restricted;
using test_support::one_step_histogram;
using test_support::perm;

namespace {

BoundVector upper(std::vector<std::int32_t> b) {
    return BoundVector::from_integers(BoundDirection::Upper, b);
}

// Exact law of Q_{b,beta2} on the enumerated restricted set.
std::pair<std::vector<Permutation>, std::vector<double>> enumerate_twisted(
    const BoundVector& bounds, double beta2) {
    auto members = enumerate_restricted(bounds);
    std::vector<double> probs;
    double z = 0.0;
    for (const auto& tau : members) {
        const double wgt = std::exp(beta2 * cycle_count(tau));
        probs.push_back(wgt);
        z += wgt;
    }
    for (double& p : probs) p /= z;
    return {std::move(members), std::move(probs)};
}

} // namespace

TEST_CASE("staircase bounds force the identity for any beta2") {
    rng::Stream g(1);
    for (const double beta2 : {0.0, 1.0, 3.0}) {
        const auto bounds = upper({1, 2, 3, 4, 5});
        REQUIRE(sample_twisted_restricted(bounds, beta2, g) == Permutation::identity(5));
    }
}

TEST_CASE("twisted sampler validates its preconditions") {
    rng::Stream g(2);
    REQUIRE_THROWS_AS(sample_twisted_restricted(upper({1, 1, 3}), 1.0, g),
                      std::invalid_argument);
    // feasible but with B_1 < 1 ... B_i >= i violated at place 3
    REQUIRE_THROWS_AS(sample_twisted_restricted(upper({3, 3, 2}), 1.0, g),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(sample_twisted_restricted(
                          BoundVector::from_integers(BoundDirection::Lower, {1, 1, 1}), 1.0, g),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(sample_twisted_restricted(upper({3, 3, 3}), -0.5, g),
                      std::invalid_argument);
}

TEST_CASE("beta2 = 0 reduces to the uniform restricted sampler") {
    const auto bounds = upper({3, 4, 5, 5, 5});
    const auto members = enumerate_restricted(bounds);

    rng::Stream g(3);
    const int draws = 100000;
    auto twisted = test_support::state_histogram(
        5, draws, [&] { return sample_twisted_restricted(bounds, 0.0, g); });
    rng::Stream g2(4);
    auto uniform = test_support::state_histogram(
        5, draws, [&] { return sample_uniform_upper(bounds, g2); });
    REQUIRE(empirical_tv(twisted, uniform) < 0.02);

    // and chi-squared against the exact uniform law on the set
    std::vector<std::int64_t> counts;
    std::vector<double> probs(members.size(), 1.0 / static_cast<double>(members.size()));
    for (const auto& m : members)
        counts.push_back(twisted[static_cast<std::size_t>(lexicographic_rank(m))]);
    REQUIRE(chi_squared_gof(counts, probs).passes(1e-3));
}

TEST_CASE("free bounds at n = 3: P(Id) has the closed form") {
    const double beta2 = 1.0;
    const auto bounds = upper({3, 3, 3});
    const double p_id = std::exp(3.0 * beta2) /
                        (std::exp(beta2) * (std::exp(beta2) + 1.0) * (std::exp(beta2) + 2.0));

    rng::Stream g(5);
    const int draws = 100000;
    int hits = 0;
    const auto id = Permutation::identity(3);
    for (int i = 0; i < draws; ++i)
        if (sample_twisted_restricted(bounds, beta2, g) == id) ++hits;
    const double freq = static_cast<double>(hits) / draws;
    const double se = std::sqrt(p_id * (1.0 - p_id) / draws);
    REQUIRE(std::abs(freq - p_id) < 3.0 * se + 1e-12);
}

TEST_CASE("exactness against the enumerated twisted law at n <= 5") {
    const std::vector<std::vector<std::int32_t>> bound_sets{
        {3, 3, 3}, {2, 3, 3}, {1, 3, 3}, {4, 4, 4, 4}, {2, 4, 4, 4}, {3, 4, 5, 5, 5}};
    std::uint64_t seed = 1000;
    for (const auto& b : bound_sets) {
        for (const double beta2 : {0.0, 0.5, 1.0, 3.0}) {
            const auto bounds = upper(b);
            const auto [members, probs] = enumerate_twisted(bounds, beta2);
            std::vector<std::int64_t> counts(members.size(), 0);
            rng::Stream g(seed++);
            const int draws = 60000;
            for (int i = 0; i < draws; ++i) {
                const Permutation tau = sample_twisted_restricted(bounds, beta2, g);
                const auto it = std::find(members.begin(), members.end(), tau);
                REQUIRE(it != members.end());
                ++counts[static_cast<std::size_t>(it - members.begin())];
            }
            if (members.size() < 2) continue;
            INFO("bounds n=" << b.size() << " beta2=" << beta2);
            REQUIRE(chi_squared_gof(counts, probs).passes(1e-3));
        }
    }
}

TEST_CASE("per-draw probability audit at n = 5 and n = 8") {
    rng::Stream g(77);
    for (const int n : {5, 8}) {
        for (const double beta2 : {0.0, 0.7, 2.0}) {
            // random feasible bounds with B_i >= i
            std::vector<std::int32_t> b(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i)
                b[static_cast<std::size_t>(i - 1)] = static_cast<std::int32_t>(
                    i + rng::uniform_below(g, static_cast<std::uint64_t>(n - i + 1)));
            const auto bounds = upper(b);
            for (int draw = 0; draw < 3000; ++draw) {
                const TwistedDraw d = sample_twisted_restricted_audited(bounds, beta2, g);
                REQUIRE(d.cycles_closed == cycle_count(d.perm));
                const double scale = std::max(1.0, std::abs(d.target_log_prob));
                REQUIRE(std::abs(d.trajectory_log_prob - d.target_log_prob) <=
                        1e-10 * scale);
            }
        }
    }
}

TEST_CASE("step_two_param with beta2 = 0 matches step_l1") {
    const int n = 4;
    const int reps = 100000;
    const auto id = Permutation::identity(n);
    auto twisted = one_step_histogram(id, reps, 91, [&](const Permutation& s, rng::Stream& g) {
        return step_two_param(s, TwoParamSpec{0.3, 0.0}, g);
    });
    auto plain = one_step_histogram(id, reps, 92, [&](const Permutation& s, rng::Stream& g) {
        return step_l1(s, 0.3, g);
    });
    REQUIRE(empirical_tv(twisted, plain) < 0.02);
}

TEST_CASE("two_param_log_weight") {
    const TwoParamSpec spec{1.0, 1.0};
    REQUIRE(two_param_log_weight(Permutation::identity(6), TwoParamSpec{0.7, 1.0}) ==
            Catch::Approx(6.0));
    REQUIRE(two_param_log_weight(perm({2, 1}), spec) == Catch::Approx(-1.0));

    // raising beta2 by delta raises every log-weight by delta * C(sigma)
    const auto sigma = perm({2, 3, 1, 5, 4});
    const double delta = 0.25;
    REQUIRE(two_param_log_weight(sigma, TwoParamSpec{0.4, 1.0 + delta}) -
                two_param_log_weight(sigma, TwoParamSpec{0.4, 1.0}) ==
            Catch::Approx(delta * cycle_count(sigma)));

    REQUIRE_THROWS_AS((TwoParamSpec{0.0, 1.0}).validate(), std::invalid_argument);
    REQUIRE_THROWS_AS((TwoParamSpec{1.0, -0.1}).validate(), std::invalid_argument);
}
