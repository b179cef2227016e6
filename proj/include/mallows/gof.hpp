#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace mallows {

namespace detail {

// Regularized lower incomplete gamma P(a,x) by series expansion; valid for
// x < a + 1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by continued fraction; valid for
// x >= a + 1 (Lentz's algorithm).
inline double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 10000; ++k) {
        const double an = -static_cast<double>(k) * (static_cast<double>(k) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace detail

inline double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? detail::gamma_p_series(a, x)
                       : 1.0 - detail::gamma_q_continued_fraction(a, x);
}

inline double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x)
                       : detail::gamma_q_continued_fraction(a, x);
}

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
inline double chi_squared_sf(double stat, double dof) {
    if (stat < 0.0) return 1.0;
    return regularized_gamma_q(dof / 2.0, stat / 2.0);
}

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::int64_t dof = 0;
    std::int64_t draws = 0;

    bool passes(double significance) const { return p_value >= significance; }
};

// Pearson chi-squared goodness of fit of observed counts against a fully
// specified distribution. Cells with zero expected probability must have
// zero observed count.
inline GofResult chi_squared_gof(std::span<const std::int64_t> counts,
                                 std::span<const double> probs) {
    if (counts.size() != probs.size())
        throw std::invalid_argument("chi_squared_gof: length mismatch");
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    if (total <= 0) throw std::invalid_argument("chi_squared_gof: no draws");

    GofResult r;
    r.draws = total;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0.0) {
            if (counts[i] != 0) {
                r.statistic = std::numeric_limits<double>::infinity();
                r.p_value = 0.0;
                return r;
            }
            continue;
        }
        const double diff = static_cast<double>(counts[i]) - expected;
        r.statistic += diff * diff / expected;
        ++r.dof;
    }
    r.dof -= 1;
    if (r.dof < 1) throw std::invalid_argument("chi_squared_gof: needs >= 2 support cells");
    r.p_value = chi_squared_sf(r.statistic, static_cast<double>(r.dof));
    return r;
}

} // namespace mallows
