#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mallows/diagnostics.hpp"
#include "mallows/oracle.hpp"
#include "support/test_helpers.hpp"

using namespace mallows;
using test_support::all_permutations;

TEST_CASE("enumerate_model: L1 at n = 3 has the hand-computed partition function") {
    const double beta = 0.4;
    const ExactModelTable table = enumerate_model(ModelSpec::l1(beta), 3);
    REQUIRE(table.states.size() == 6);

    // H values over S_3 are {0, 2, 2, 4, 4, 4}
    std::vector<std::int64_t> h;
    for (const auto& sigma : table.states)
        h.push_back(2 * positive_displacement_sum(sigma));
    std::sort(h.begin(), h.end());
    REQUIRE(h == std::vector<std::int64_t>{0, 2, 2, 4, 4, 4});

    const double z = 1.0 + 2.0 * std::exp(-2.0 * beta) + 3.0 * std::exp(-4.0 * beta);
    REQUIRE(std::exp(table.log_z) == Catch::Approx(z).epsilon(1e-12));

    double sum = 0.0;
    for (double p : table.probabilities) sum += p;
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("enumerate_model: every model tends to uniform as beta -> 0") {
    const std::vector<double> w{1.0, 2.0, 2.5, 4.0};
    const std::vector<ModelSpec> models{
        ModelSpec::l1(1e-12),          ModelSpec::l2(1e-12),
        ModelSpec::weighted_l1(1e-12, w), ModelSpec::weighted_l2(1e-12, w),
        ModelSpec::lattice_l1(1e-12, 2, 2), ModelSpec::lattice_l2(1e-12, 2, 2)};
    for (const auto& model : models) {
        const ExactModelTable table = enumerate_model(model, 4);
        for (double p : table.probabilities)
            REQUIRE(p == Catch::Approx(1.0 / 24.0).epsilon(1e-9));
    }
}

TEST_CASE("enumerate_model: two-parameter Z approaches the Cayley closed form") {
    const int n = 5;
    const double beta2 = 0.8;
    const ExactModelTable table = enumerate_model(ModelSpec::two_param(1e-9, beta2), n);
    double rising = 1.0;
    for (int k = 0; k < n; ++k) rising *= std::exp(beta2) + k;
    REQUIRE(std::exp(table.log_z) == Catch::Approx(rising).epsilon(1e-6));
}

TEST_CASE("enumerate_model guards its size limit") {
    REQUIRE_THROWS_AS(enumerate_model(ModelSpec::l1(0.5), 9), std::invalid_argument);
    REQUIRE_THROWS_AS(enumerate_model(ModelSpec::lattice_l1(0.5, 2, 4), 0),
                      std::invalid_argument);
    REQUIRE_NOTHROW(enumerate_model(ModelSpec::l1(0.5), 8));
}

TEST_CASE("exact expectations") {
    // E[T1] under the near-uniform law at n = 3 is 1
    const ExactModelTable uniform3 = enumerate_model(ModelSpec::l1(1e-12), 3);
    REQUIRE(exact_expectation(uniform3, ModelSpec::l1(1e-12), Stat::T1) ==
            Catch::Approx(1.0).epsilon(1e-9));

    // E[H] under the near-point-mass at the identity (large beta) is ~0
    const ExactModelTable frozen = enumerate_model(ModelSpec::l1(40.0), 4);
    REQUIRE(exact_expectation(frozen, ModelSpec::l1(40.0), Stat::H) ==
            Catch::Approx(0.0).margin(1e-10));

    // E[C] under the Cayley weight matches sum_k e^{b2}/(e^{b2}+k)
    const double beta2 = 1.3;
    const ExactModelTable cayley = enumerate_model(ModelSpec::two_param(1e-10, beta2), 3);
    double expected = 0.0;
    for (int k = 0; k < 3; ++k) expected += std::exp(beta2) / (std::exp(beta2) + k);
    REQUIRE(exact_expectation(cayley, ModelSpec::two_param(1e-10, beta2), Stat::C) ==
            Catch::Approx(expected).epsilon(1e-6));
}

TEST_CASE("lattice expectations use lattice energies") {
    const ModelSpec model = ModelSpec::lattice_l1(0.3, 2, 2);
    const ExactModelTable table = enumerate_model(model, 0);
    const LatticeGeometry geo(2, 2);
    double by_hand = 0.0;
    for (std::size_t i = 0; i < table.states.size(); ++i)
        by_hand += table.probabilities[i] *
                   static_cast<double>(lattice_l1_energy_flat(table.states[i], geo));
    REQUIRE(exact_expectation(table, model, Stat::H) == Catch::Approx(by_hand).epsilon(1e-12));
    REQUIRE_THROWS_AS(exact_expectation(table, model, Stat::T3), std::invalid_argument);
}

TEST_CASE("tv_distance") {
    const std::vector<double> p{0.5, 0.5, 0.0};
    const std::vector<double> q{0.0, 0.0, 1.0};
    REQUIRE(tv_distance(p, p) == 0.0);
    REQUIRE(tv_distance(p, q) == 1.0);

    const std::vector<double> point{1.0, 0.0};
    const std::vector<double> half{0.5, 0.5};
    REQUIRE(tv_distance(half, point) == Catch::Approx(0.5));
    REQUIRE(tv_distance(point, half) == Catch::Approx(0.5)); // symmetry

    const std::vector<double> shorter{1.0};
    REQUIRE_THROWS_AS(tv_distance(p, shorter), std::invalid_argument);

    // triangle inequality and the [0,1] range on random triples
    rng::Stream g(5150);
    for (int trial = 0; trial < 200; ++trial) {
        auto random_dist = [&] {
            std::vector<double> v(5);
            double s = 0.0;
            for (double& x : v) {
                x = rng::unit_open_closed(g);
                s += x;
            }
            for (double& x : v) x /= s;
            return v;
        };
        const auto a = random_dist(), b = random_dist(), c = random_dist();
        const double ab = tv_distance(a, b);
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= 1.0);
        REQUIRE(ab <= tv_distance(a, c) + tv_distance(c, b) + 1e-15);
    }
}

TEST_CASE("autocorrelation") {
    std::vector<double> alternating(10000);
    for (std::size_t i = 0; i < alternating.size(); ++i)
        alternating[i] = i % 2 == 0 ? 1.0 : -1.0;
    const auto rho = autocorrelation(alternating, 2);
    REQUIRE(rho[0] == Catch::Approx(1.0));
    REQUIRE(rho[1] == Catch::Approx(-1.0).margin(2e-4)); // O(1/T) estimator bias

    rng::Stream g(6);
    std::vector<double> noise(100000);
    for (double& x : noise) x = rng::unit_open_closed(g);
    REQUIRE(std::abs(autocorrelation(noise, 1)[1]) < 0.02);

    const std::vector<double> constant(100, 3.0);
    REQUIRE_THROWS_AS(autocorrelation(constant, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(autocorrelation(noise, static_cast<int>(noise.size())),
                      std::invalid_argument);
}

TEST_CASE("effective sample size") {
    rng::Stream g(7);
    std::vector<double> iid(100000);
    for (double& x : iid) x = rng::unit_open_closed(g);
    const double ess_iid = effective_sample_size(iid);
    REQUIRE(ess_iid > 0.9 * static_cast<double>(iid.size()));
    REQUIRE(ess_iid < 1.1 * static_cast<double>(iid.size()));

    // duplicated series: rho_1 = 1/2, so 1 + 2*rho_1 = 2 and ESS is near T/2
    std::vector<double> doubled(100000);
    for (std::size_t i = 0; i < doubled.size(); i += 2) {
        const double v = rng::unit_open_closed(g);
        doubled[i] = v;
        if (i + 1 < doubled.size()) doubled[i + 1] = v;
    }
    const double ess_doubled = effective_sample_size(doubled);
    REQUIRE(ess_doubled > 0.4 * static_cast<double>(doubled.size()));
    REQUIRE(ess_doubled < 0.6 * static_cast<double>(doubled.size()));

    // negative lag-1 correlation truncates immediately; the clamp keeps ESS <= T
    std::vector<double> alternating(10000);
    for (std::size_t i = 0; i < alternating.size(); ++i)
        alternating[i] = i % 2 == 0 ? 1.0 : -1.0;
    REQUIRE(effective_sample_size(alternating) ==
            Catch::Approx(static_cast<double>(alternating.size())));
}

TEST_CASE("mixing profile starts at 1 - pi(start) and decays") {
    const ModelSpec model = ModelSpec::l1(0.3);
    const int n = 5;
    const ExactModelTable table = enumerate_model(model, n);
    const auto profile =
        empirical_mixing_profile_exact(model, SamplerKind::HitRun, n, 10, 100000, 31337);

    const double tv0_id = 1.0 - table.probabilities[table.index_of(Permutation::identity(n))];
    const double tv0_rev = 1.0 - table.probabilities[table.index_of(Permutation::reversal(n))];
    REQUIRE(profile[0].tv == Catch::Approx(std::max(tv0_id, tv0_rev)).margin(1e-9));

    // decreasing up to statistical noise, and below 0.05 by step 10
    for (std::size_t t = 0; t + 1 < profile.size(); ++t)
        REQUIRE(profile[t + 1].tv <= profile[t].tv + 0.02);
    REQUIRE(profile[10].tv < 0.05);
}
