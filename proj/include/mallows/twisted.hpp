#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/fenwick.hpp"
#include "mallows/hitrun.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"

namespace mallows {

// Parameters of the two-parameter model P(sigma) ~ exp(-beta1 H(sigma,Id) +
// beta2 C(sigma)), mixing the L1 distance with the Cayley distance
// n - C(sigma).
struct TwoParamSpec {
    double beta1 = 0.0;
    double beta2 = 0.0;

    void validate() const {
        if (!(beta1 > 0.0)) throw std::invalid_argument("TwoParamSpec: beta1 must be > 0");
        if (beta2 < 0.0) throw std::invalid_argument("TwoParamSpec: beta2 must be >= 0");
    }
};

inline double two_param_log_weight(const Permutation& sigma, const TwoParamSpec& spec) {
    return -spec.beta1 * static_cast<double>(2 * positive_displacement_sum(sigma)) +
           spec.beta2 * static_cast<double>(cycle_count(sigma));
}

// Head/tail bookkeeping for the incomplete cycles ("open arcs") formed while
// symbols n, n-1, ..., 1 are placed one at a time. At any point every
// untaken place is the head of exactly one open arc and every unplaced
// symbol is the tail of exactly one; the two maps below are mutually inverse
// bijections over the open arcs. Placing symbol l at the head of its own arc
// closes a cycle; placing it at any other free place merges two arcs in
// O(1).
class OpenArcRegistry {
public:
    explicit OpenArcRegistry(int n)
        : head_of_tail_(static_cast<std::size_t>(n) + 1),
          tail_of_head_(static_cast<std::size_t>(n) + 1), open_arcs_(n) {
        for (int x = 1; x <= n; ++x) {
            head_of_tail_[static_cast<std::size_t>(x)] = x; // trivial arc (x)
            tail_of_head_[static_cast<std::size_t>(x)] = x;
        }
    }

    int open_arcs() const noexcept { return open_arcs_; }

    // Head place of the arc whose tail is the unplaced symbol `tail`.
    int head_of(int tail) const {
        const int h = head_of_tail_[static_cast<std::size_t>(tail)];
        if (h == kNone) throw std::logic_error("OpenArcRegistry: symbol is not a tail");
        return h;
    }

    // Record that symbol l goes to place h = head_of(l), closing a cycle.
    void close_cycle(int l) {
        const int h = take(l);
        tail_of_head_[static_cast<std::size_t>(h)] = kNone;
    }

    // Record that symbol l goes to the free place p != head_of(l): the arc
    // with tail l absorbs the arc headed at p.
    void merge(int l, int p) {
        const int h = take(l);
        const int t2 = tail_of_head_[static_cast<std::size_t>(p)];
        if (t2 == kNone) throw std::logic_error("OpenArcRegistry: place is not a head");
        tail_of_head_[static_cast<std::size_t>(p)] = kNone;
        head_of_tail_[static_cast<std::size_t>(t2)] = h;
        tail_of_head_[static_cast<std::size_t>(h)] = t2;
    }

private:
    static constexpr int kNone = 0;

    int take(int l) {
        const int h = head_of_tail_[static_cast<std::size_t>(l)];
        if (h == kNone) throw std::logic_error("OpenArcRegistry: symbol already placed");
        head_of_tail_[static_cast<std::size_t>(l)] = kNone;
        --open_arcs_;
        return h;
    }

    std::vector<std::int32_t> head_of_tail_;
    std::vector<std::int32_t> tail_of_head_;
    int open_arcs_;
};

struct TwistedDraw {
    Permutation perm;
    double trajectory_log_prob; // sum of the log-probabilities of the choices made
    double target_log_prob;     // beta2*C(perm) - sum_l log(e^{beta2} + N_l - 1)
    int cycles_closed;
};

namespace detail {

// Exact draw from Q_{b,beta2}(tau) ~ e^{beta2 C(tau)} 1{tau(i) <= B_i}. For
// l = n down to 1: among the N_l eligible free places, the head h of the
// open arc with tail l is chosen with probability e^{beta2}/(e^{beta2} +
// N_l - 1) (closing a cycle) and each other place with probability
// 1/(e^{beta2} + N_l - 1). When N_l = 1 the only eligible place is h and the
// closing branch fires with probability one.
template <class URBG>
TwistedDraw sample_twisted_restricted_impl(const BoundVector& bounds, double beta2,
                                           URBG& g) {
    if (bounds.direction() != BoundDirection::Upper)
        throw std::invalid_argument("sample_twisted_restricted: bounds must be Upper");
    if (beta2 < 0.0)
        throw std::invalid_argument("sample_twisted_restricted: beta2 must be >= 0");
    const int n = bounds.n();
    const std::vector<std::int32_t> slack = slack_profile(bounds);
    for (std::int32_t s : slack)
        if (s < 1) throw std::invalid_argument("sample_twisted_restricted: infeasible bounds");
    for (int i = 1; i <= n; ++i)
        if (bounds.effective(i) < i)
            throw std::invalid_argument("sample_twisted_restricted: requires B_i >= i");

    const double exp_beta2 = std::exp(beta2);
    const auto buckets = detail::bound_buckets(bounds);
    OccupancyIndex free_places(n);
    OpenArcRegistry arcs(n);
    std::vector<std::int32_t> img(static_cast<std::size_t>(n), -1);

    double traj_log_prob = 0.0;
    double log_denominators = 0.0;
    int closes = 0;

    for (int l = n; l >= 1; --l) {
        for (std::int32_t place : buckets[static_cast<std::size_t>(l)])
            free_places.activate(place);
        const int avail = free_places.active();
        if (avail != slack[static_cast<std::size_t>(l - 1)])
            throw std::logic_error("sample_twisted_restricted: slack mismatch");
        // one open arc per unplaced symbol (equivalently per untaken place)
        if (arcs.open_arcs() != l)
            throw std::logic_error("sample_twisted_restricted: arc count mismatch");

        const int h = arcs.head_of(l);
        // merging always promotes heads, so h >= l; with B_h >= h >= l the
        // head is among the eligible free places
        if (h < l) throw std::logic_error("sample_twisted_restricted: head below symbol");
        const double denom = exp_beta2 + static_cast<double>(avail - 1);
        const double log_denom = std::log(denom);
        log_denominators += log_denom;

        int place;
        if (avail == 1 || rng::unit_open_closed(g) * denom <= exp_beta2) {
            place = h;
            arcs.close_cycle(l);
            ++closes;
            traj_log_prob += beta2 - log_denom;
        } else {
            const int k = 1 + static_cast<int>(rng::uniform_below(
                                  g, static_cast<std::uint64_t>(avail - 1)));
            place = free_places.select_excluding(k, h);
            arcs.merge(l, place);
            traj_log_prob += -log_denom;
        }
        free_places.deactivate(place);
        img[static_cast<std::size_t>(place - 1)] = l - 1;
    }

    TwistedDraw draw{Permutation::unsafe_from_zero_based(std::move(img)), traj_log_prob,
                     0.0, closes};
    draw.target_log_prob =
        beta2 * static_cast<double>(cycle_count(draw.perm)) - log_denominators;
    return draw;
}

inline void audit_twisted_draw(const TwistedDraw& draw, double beta2) {
    if (draw.cycles_closed != cycle_count(draw.perm))
        throw std::logic_error("twisted audit: closing choices != cycle count");
    const double diff = std::abs(draw.trajectory_log_prob - draw.target_log_prob);
    const double scale = std::max(1.0, std::abs(draw.target_log_prob));
    if (diff > 1e-10 * scale)
        throw std::logic_error("twisted audit: trajectory probability mismatch");
    (void)beta2;
}

} // namespace detail

// Audited draw: returns the permutation along with the recomputed
// trajectory and target log-probabilities (verified to 1e-10 relative).
template <class URBG>
TwistedDraw sample_twisted_restricted_audited(const BoundVector& bounds, double beta2,
                                              URBG& g) {
    TwistedDraw draw = detail::sample_twisted_restricted_impl(bounds, beta2, g);
    detail::audit_twisted_draw(draw, beta2);
    return draw;
}

// Plain draw; the probability audit stays on at desk scale where it is free.
template <class URBG>
Permutation sample_twisted_restricted(const BoundVector& bounds, double beta2, URBG& g) {
    TwistedDraw draw = detail::sample_twisted_restricted_impl(bounds, beta2, g);
    if (bounds.n() <= 8) detail::audit_twisted_draw(draw, beta2);
    return std::move(draw.perm);
}

// One step of the twisted hit-and-run chain: L1 auxiliary bounds with
// beta1, then a Q_{b,beta2} draw. Reversible with respect to
// P_{beta1,beta2}; beta2 = 0 reduces exactly to step_l1.
template <class URBG>
Permutation step_two_param(const Permutation& sigma, const TwoParamSpec& spec, URBG& g) {
    spec.validate();
    const BoundVector bounds = draw_l1_bounds(sigma, spec.beta1, g);
    detail::check_admits(bounds, sigma);
    return sample_twisted_restricted(bounds, spec.beta2, g);
}

} // namespace mallows
