#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/model.hpp"
#include "mallows/permutation.hpp"
#include "mallows/restricted.hpp"
#include "mallows/rng.hpp"

namespace mallows {

// How the auxiliary bounds are realised. Continuous draws the u_i and takes
// floors/ceilings; Geometric samples the integer effective bound directly
// from its truncated-geometric law. The two induce the same one-step kernel
// and serve as cross-validation of each other.
enum class BoundsMode { Continuous, Geometric };

// ---------------------------------------------------------------------------
// Bound construction from explicit auxiliary variables. These are the paper
// formulas verbatim; the production steps below draw u in log-space instead
// so that e^{2*beta*i*sigma(i)} is never materialised.
// ---------------------------------------------------------------------------

// u_i uniform on (0, e^{-2 beta (sigma(i)-i)_+}];  b_i = i - log(u_i)/(2 beta).
inline BoundVector l1_bounds_from_u(const Permutation& sigma, double beta,
                                    std::span<const double> u) {
    const int n = sigma.n();
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        b[static_cast<std::size_t>(i - 1)] =
            i - std::log(u[static_cast<std::size_t>(i - 1)]) / (2.0 * beta);
    return BoundVector(BoundDirection::Upper, std::move(b));
}

// u_i uniform on (0, e^{2 beta i sigma(i)}];  b_i = log(u_i)/(2 beta i).
inline BoundVector l2_bounds_from_u(const Permutation& sigma, double beta,
                                    std::span<const double> u) {
    const int n = sigma.n();
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        b[static_cast<std::size_t>(i - 1)] =
            std::log(u[static_cast<std::size_t>(i - 1)]) / (2.0 * beta * i);
    return BoundVector(BoundDirection::Lower, std::move(b));
}

// u_i uniform on (0, e^{-2 beta (w(sigma(i))-w(i))_+}]; b_i = w(i) - log(u_i)/(2 beta);
// integer bound q_i = max{ j : w(j) <= b_i }.
inline BoundVector weighted_l1_bounds_from_u(const Permutation& sigma, double beta,
                                             std::span<const double> w,
                                             std::span<const double> u) {
    const int n = sigma.n();
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double b = w[static_cast<std::size_t>(i - 1)] -
                         std::log(u[static_cast<std::size_t>(i - 1)]) / (2.0 * beta);
        // last index with w(j) <= b (w is non-decreasing)
        const auto it = std::upper_bound(w.begin(), w.end(), b);
        q[static_cast<std::size_t>(i - 1)] = static_cast<double>(it - w.begin());
    }
    return BoundVector(BoundDirection::Upper, std::move(q));
}

// u_i uniform on (0, e^{2 beta w(i) w(sigma(i))}]; b_i = log(u_i)/(2 beta w(i));
// integer bound q_i = min{ j : w(j) >= b_i }.
inline BoundVector weighted_l2_bounds_from_u(const Permutation& sigma, double beta,
                                             std::span<const double> w,
                                             std::span<const double> u) {
    const int n = sigma.n();
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double b = std::log(u[static_cast<std::size_t>(i - 1)]) /
                         (2.0 * beta * w[static_cast<std::size_t>(i - 1)]);
        const auto it = std::lower_bound(w.begin(), w.end(), b);
        q[static_cast<std::size_t>(i - 1)] = static_cast<double>(it - w.begin()) + 1.0;
    }
    return BoundVector(BoundDirection::Lower, std::move(q));
}

// ---------------------------------------------------------------------------
// Production bound draws. With u = U * M for U uniform on (0,1] and M the
// interval's right endpoint, the bounds simplify to
//   L1:  b_i = max(i, sigma(i)) + Exp(1)/(2 beta)            (Upper)
//   L2:  b_i = sigma(i) - Exp(1)/(2 beta i)                  (Lower)
// so the current state always satisfies the bounds and no exponential of
// order beta*n^2 is ever formed.
// ---------------------------------------------------------------------------

namespace detail {

// floor(Exp(1)/(2 beta)) is Geometric(1 - e^{-2 beta}); both bound modes
// reduce to this integer jump.
template <class URBG>
std::int64_t geometric_slack(double two_beta, URBG& g) {
    return static_cast<std::int64_t>(std::floor(rng::exponential(g) / two_beta));
}

} // namespace detail

template <class URBG>
BoundVector draw_l1_bounds(const Permutation& sigma, double beta, URBG& g,
                           BoundsMode mode = BoundsMode::Continuous) {
    const int n = sigma.n();
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double base = static_cast<double>(std::max<std::int32_t>(i, sigma(i)));
        if (mode == BoundsMode::Continuous) {
            b[static_cast<std::size_t>(i - 1)] = base + rng::exponential(g) / (2.0 * beta);
        } else {
            const std::int64_t jump = detail::geometric_slack(2.0 * beta, g);
            b[static_cast<std::size_t>(i - 1)] =
                std::min<double>(base + static_cast<double>(jump), n);
        }
    }
    return BoundVector(BoundDirection::Upper, std::move(b));
}

template <class URBG>
BoundVector draw_l2_bounds(const Permutation& sigma, double beta, URBG& g,
                           BoundsMode mode = BoundsMode::Continuous) {
    const int n = sigma.n();
    std::vector<double> b(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double base = static_cast<double>(sigma(i));
        if (mode == BoundsMode::Continuous) {
            b[static_cast<std::size_t>(i - 1)] = base - rng::exponential(g) / (2.0 * beta * i);
        } else {
            const std::int64_t jump = detail::geometric_slack(2.0 * beta * i, g);
            b[static_cast<std::size_t>(i - 1)] =
                std::max<double>(base - static_cast<double>(jump), 1.0);
        }
    }
    return BoundVector(BoundDirection::Lower, std::move(b));
}

template <class URBG>
BoundVector draw_weighted_l1_bounds(const Permutation& sigma, double beta,
                                    std::span<const double> w, URBG& g) {
    const int n = sigma.n();
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double base = std::max(w[static_cast<std::size_t>(i - 1)],
                                     w[static_cast<std::size_t>(sigma(i) - 1)]);
        const double b = base + rng::exponential(g) / (2.0 * beta);
        const auto it = std::upper_bound(w.begin(), w.end(), b);
        q[static_cast<std::size_t>(i - 1)] = static_cast<double>(it - w.begin());
    }
    return BoundVector(BoundDirection::Upper, std::move(q));
}

template <class URBG>
BoundVector draw_weighted_l2_bounds(const Permutation& sigma, double beta,
                                    std::span<const double> w, URBG& g) {
    const int n = sigma.n();
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double b = w[static_cast<std::size_t>(sigma(i) - 1)] -
                         rng::exponential(g) / (2.0 * beta * w[static_cast<std::size_t>(i - 1)]);
        const auto it = std::lower_bound(w.begin(), w.end(), b);
        q[static_cast<std::size_t>(i - 1)] = static_cast<double>(it - w.begin()) + 1.0;
    }
    return BoundVector(BoundDirection::Lower, std::move(q));
}

namespace detail {

// The bound vector must admit the current state; a violation means a bug in
// the bound construction, not bad luck.
inline void check_admits(const BoundVector& bounds, const Permutation& sigma) {
    for (int i = 1; i <= sigma.n(); ++i) {
        const bool ok = bounds.direction() == BoundDirection::Upper
                            ? sigma(i) <= bounds.effective(i)
                            : sigma(i) >= bounds.effective(i);
        if (!ok) throw std::logic_error("hit-and-run: bounds exclude the current state");
    }
}

} // namespace detail

// One hit-and-run step for the L1 model (stationary law P_beta).
template <class URBG>
Permutation step_l1(const Permutation& sigma, double beta, URBG& g,
                    BoundsMode mode = BoundsMode::Continuous) {
    const BoundVector bounds = draw_l1_bounds(sigma, beta, g, mode);
    detail::check_admits(bounds, sigma);
    return sample_uniform_upper(bounds, g);
}

// One hit-and-run step for the L2 model (stationary law P~_beta).
template <class URBG>
Permutation step_l2(const Permutation& sigma, double beta, URBG& g,
                    BoundsMode mode = BoundsMode::Continuous) {
    const BoundVector bounds = draw_l2_bounds(sigma, beta, g, mode);
    detail::check_admits(bounds, sigma);
    return sample_uniform_lower(bounds, g);
}

template <class URBG>
Permutation step_weighted_l1(const Permutation& sigma, double beta,
                             std::span<const double> w, URBG& g) {
    const BoundVector bounds = draw_weighted_l1_bounds(sigma, beta, w, g);
    detail::check_admits(bounds, sigma);
    return sample_uniform_upper(bounds, g);
}

template <class URBG>
Permutation step_weighted_l2(const Permutation& sigma, double beta,
                             std::span<const double> w, URBG& g) {
    const BoundVector bounds = draw_weighted_l2_bounds(sigma, beta, w, g);
    detail::check_admits(bounds, sigma);
    return sample_uniform_lower(bounds, g);
}

} // namespace mallows
