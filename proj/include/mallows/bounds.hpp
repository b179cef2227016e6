#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mallows/bigint.hpp"

namespace mallows {

enum class BoundDirection { Upper, Lower };

// Per-place one-sided bounds on a permutation of [n]:
//   Upper: the restricted set is { tau : tau(i) <= b_i for every i },
//   Lower: the restricted set is { tau : tau(i) >= b_i for every i }.
// Real bounds are reduced to integer effective bounds immediately: the
// restricted set depends only on floor(b_i) (Upper) / ceil(b_i) (Lower).
// Effective bounds are clamped to [0, n] (Upper) or [1, n+1] (Lower); the
// values 0 and n+1 mark a place no symbol can occupy.
class BoundVector {
public:
    BoundVector(BoundDirection dir, std::vector<double> raw)
        : dir_(dir), raw_(std::move(raw)) {
        if (raw_.empty()) throw std::invalid_argument("BoundVector: n must be >= 1");
        const auto n = static_cast<std::int32_t>(raw_.size());
        effective_.reserve(raw_.size());
        for (double b : raw_) {
            if (!std::isfinite(b))
                throw std::invalid_argument("BoundVector: bounds must be finite");
            if (dir_ == BoundDirection::Upper) {
                const double f = std::floor(b);
                effective_.push_back(f < 0 ? 0 : (f > n ? n : static_cast<std::int32_t>(f)));
            } else {
                const double c = std::ceil(b);
                effective_.push_back(c < 1 ? 1
                                           : (c > n ? n + 1 : static_cast<std::int32_t>(c)));
            }
        }
    }

    static BoundVector from_integers(BoundDirection dir, const std::vector<std::int32_t>& b) {
        std::vector<double> raw(b.begin(), b.end());
        return BoundVector(dir, std::move(raw));
    }

    int n() const noexcept { return static_cast<int>(raw_.size()); }
    BoundDirection direction() const noexcept { return dir_; }

    // 1-based place.
    std::int32_t effective(int place) const {
        return effective_[static_cast<std::size_t>(place - 1)];
    }
    double raw(int place) const { return raw_[static_cast<std::size_t>(place - 1)]; }

    const std::vector<std::int32_t>& effective_bounds() const noexcept { return effective_; }
    const std::vector<double>& raw_bounds() const noexcept { return raw_; }

private:
    BoundDirection dir_;
    std::vector<double> raw_;
    std::vector<std::int32_t> effective_;
};

// Slack profile of the restricted set, indexed by symbol l = 1..n (entry
// l-1). For Upper bounds this is N_l = #{i : B_i >= l} - (n - l): the number
// of eligible free places when the symbol l is placed (symbols placed in
// order n, n-1, ..., 1). For Lower bounds it is the mirror
// M_l = #{i : B_i <= l} - (l - 1) (symbols placed in order 1, 2, ..., n).
// The set is nonempty iff every entry is >= 1, and its size is the product
// of the entries.
inline std::vector<std::int32_t> slack_profile(const BoundVector& bounds) {
    const int n = bounds.n();
    std::vector<std::int32_t> count(static_cast<std::size_t>(n) + 2, 0);
    for (std::int32_t b : bounds.effective_bounds()) {
        if (b >= 0 && b <= n + 1) ++count[static_cast<std::size_t>(b)];
    }
    std::vector<std::int32_t> slack(static_cast<std::size_t>(n));
    if (bounds.direction() == BoundDirection::Upper) {
        // suffix counts: #{i : B_i >= l}
        std::int32_t ge = 0;
        for (int l = n; l >= 1; --l) {
            ge += count[static_cast<std::size_t>(l)];
            slack[static_cast<std::size_t>(l - 1)] = ge - (n - l);
        }
    } else {
        std::int32_t le = 0;
        for (int l = 1; l <= n; ++l) {
            le += count[static_cast<std::size_t>(l)];
            slack[static_cast<std::size_t>(l - 1)] = le - (l - 1);
        }
    }
    return slack;
}

inline bool feasible(const BoundVector& bounds) {
    for (std::int32_t s : slack_profile(bounds))
        if (s < 1) return false;
    return true;
}

// |{tau : tau respects the bounds}| = prod_l N_l (or M_l), exactly.
inline BigUint count_restricted(const BoundVector& bounds) {
    BigUint count(1);
    for (std::int32_t s : slack_profile(bounds)) {
        if (s < 1) return BigUint(0);
        count *= static_cast<std::uint64_t>(s);
    }
    return count;
}

// log of the count; usable far past the ~170! overflow point of doubles.
inline double log_count_restricted(const BoundVector& bounds) {
    double log_count = 0.0;
    for (std::int32_t s : slack_profile(bounds)) {
        if (s < 1) return -std::numeric_limits<double>::infinity();
        log_count += std::log(static_cast<double>(s));
    }
    return log_count;
}

} // namespace mallows
