#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace mallows {

// Rank/select over a 0/1 occupancy array of the places 1..n, backed by a
// binary indexed tree. Supports the "pick the k-th free eligible place"
// primitive of every restricted sampler in O(log n).
class OccupancyIndex {
public:
    explicit OccupancyIndex(int n) : n_(n), tree_(static_cast<std::size_t>(n) + 1, 0) {
        log_ = 0;
        while ((1 << (log_ + 1)) <= n_) ++log_;
    }

    int size() const noexcept { return n_; }
    int active() const noexcept { return active_; }

    void activate(int pos) {
        assert(pos >= 1 && pos <= n_);
        add(pos, +1);
        ++active_;
    }

    void deactivate(int pos) {
        assert(pos >= 1 && pos <= n_);
        add(pos, -1);
        --active_;
    }

    // Number of active places <= pos.
    int rank(int pos) const {
        assert(pos >= 0 && pos <= n_);
        int s = 0;
        for (int i = pos; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
        return s;
    }

    // The k-th smallest active place, 1 <= k <= active().
    int select(int k) const {
        assert(k >= 1 && k <= active_);
        int pos = 0;
        for (int step = 1 << log_; step > 0; step >>= 1) {
            const int next = pos + step;
            if (next <= n_ && tree_[static_cast<std::size_t>(next)] < k) {
                pos = next;
                k -= tree_[static_cast<std::size_t>(pos)];
            }
        }
        return pos + 1;
    }

    // The k-th smallest active place skipping `excluded` (which must be
    // active), 1 <= k <= active() - 1. Rank arithmetic, no rejection.
    int select_excluding(int k, int excluded) const {
        assert(k >= 1 && k <= active_ - 1);
        const int r = rank(excluded); // excluded is the r-th active place
        return k < r ? select(k) : select(k + 1);
    }

private:
    void add(int pos, int delta) {
        for (int i = pos; i <= n_; i += i & -i) tree_[static_cast<std::size_t>(i)] += delta;
    }

    int n_;
    int log_ = 0;
    int active_ = 0;
    std::vector<std::int32_t> tree_;
};

} // namespace mallows
