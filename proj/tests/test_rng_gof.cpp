#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mallows/gof.hpp"
#include "mallows/rng.hpp"

using namespace mallows;

TEST_CASE("streams are deterministic and distinct") {
    rng::Stream a = rng::Stream::derived(42, {0});
    rng::Stream b = rng::Stream::derived(42, {0});
    rng::Stream c = rng::Stream::derived(42, {1});
    bool all_equal = true;
    bool any_equal_c = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a();
        all_equal = all_equal && va == b();
        any_equal_c = any_equal_c || va == c();
    }
    REQUIRE(all_equal);
    REQUIRE_FALSE(any_equal_c);
}

TEST_CASE("unit_open_closed stays in (0, 1]") {
    rng::Stream g(7);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng::unit_open_closed(g);
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("uniform_below is uniform") {
    rng::Stream g(11);
    const std::uint64_t m = 7;
    std::vector<std::int64_t> counts(m, 0);
    const int draws = 700000;
    for (int i = 0; i < draws; ++i) ++counts[rng::uniform_below(g, m)];
    const std::vector<double> probs(m, 1.0 / static_cast<double>(m));
    const GofResult r = chi_squared_gof(counts, probs);
    REQUIRE(r.passes(1e-3));
}

TEST_CASE("regularized incomplete gamma against known values") {
    // P(1, x) = 1 - e^{-x}
    for (const double x : {0.1, 1.0, 3.0, 9.0})
        REQUIRE(regularized_gamma_p(1.0, x) == Catch::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // Q(1/2, x) = erfc(sqrt(x))
    for (const double x : {0.2, 1.0, 4.0})
        REQUIRE(regularized_gamma_q(0.5, x) ==
                Catch::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
    REQUIRE(regularized_gamma_p(2.5, 0.0) == 0.0);
}

TEST_CASE("chi-squared survival function reference points") {
    // classic table entries
    REQUIRE(chi_squared_sf(3.841458820694124, 1) == Catch::Approx(0.05).epsilon(1e-9));
    REQUIRE(chi_squared_sf(5.991464547107979, 2) == Catch::Approx(0.05).epsilon(1e-9));
    // 0.999 quantile of chi2(23) is about 49.728
    REQUIRE(chi_squared_sf(49.7282, 23) == Catch::Approx(1e-3).epsilon(1e-3));
}

TEST_CASE("chi-squared GOF rejects a wrong distribution") {
    rng::Stream g(17);
    std::vector<std::int64_t> counts(4, 0);
    for (int i = 0; i < 100000; ++i) ++counts[rng::uniform_below(g, 4)];
    const std::vector<double> wrong{0.4, 0.3, 0.2, 0.1};
    REQUIRE_FALSE(chi_squared_gof(counts, wrong).passes(1e-3));
    const std::vector<double> right(4, 0.25);
    REQUIRE(chi_squared_gof(counts, right).passes(1e-3));
}

TEST_CASE("chi-squared GOF input validation") {
    const std::vector<std::int64_t> counts{10, 20};
    const std::vector<double> p3{0.5, 0.25, 0.25};
    REQUIRE_THROWS_AS(chi_squared_gof(counts, p3), std::invalid_argument);
    const std::vector<std::int64_t> zero{0, 0};
    const std::vector<double> p2{0.5, 0.5};
    REQUIRE_THROWS_AS(chi_squared_gof(zero, p2), std::invalid_argument);
}
