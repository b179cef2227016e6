#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace mallows {

// A permutation of [n] = {1, ..., n}. All symbols and places are 1-based at
// the interface; storage is 0-based. Instances are immutable once built and
// safe to share across threads.
class Permutation {
public:
    // Validating constructor from 1-based images (entry i-1 holds sigma(i)).
    explicit Permutation(const std::vector<std::int32_t>& one_based_images) {
        const auto n = static_cast<std::int32_t>(one_based_images.size());
        if (n < 1) throw std::invalid_argument("Permutation: n must be >= 1");
        img_.resize(one_based_images.size());
        std::vector<bool> seen(one_based_images.size(), false);
        for (std::size_t i = 0; i < img_.size(); ++i) {
            const std::int32_t v = one_based_images[i];
            if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
                throw std::invalid_argument("Permutation: images are not a bijection of [n]");
            seen[static_cast<std::size_t>(v - 1)] = true;
            img_[i] = v - 1;
        }
    }

    static Permutation identity(int n) {
        require_positive(n);
        std::vector<std::int32_t> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        return Permutation(private_tag{}, std::move(img));
    }

    // (n, n-1, ..., 1): the far-from-identity start used in mixing experiments.
    static Permutation reversal(int n) {
        require_positive(n);
        std::vector<std::int32_t> img(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = n - 1 - i;
        return Permutation(private_tag{}, std::move(img));
    }

    // Trusted constructor for samplers that build bijections by construction.
    static Permutation unsafe_from_zero_based(std::vector<std::int32_t> zero_based) {
        assert(is_zero_based_bijection(zero_based));
        return Permutation(private_tag{}, std::move(zero_based));
    }

    int n() const noexcept { return static_cast<int>(img_.size()); }

    // sigma(place), both 1-based.
    std::int32_t operator()(int place) const noexcept {
        assert(place >= 1 && place <= n());
        return img_[static_cast<std::size_t>(place - 1)] + 1;
    }

    std::span<const std::int32_t> zero_based() const noexcept { return img_; }

    Permutation inverse() const {
        std::vector<std::int32_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i)
            inv[static_cast<std::size_t>(img_[i])] = static_cast<std::int32_t>(i);
        return Permutation(private_tag{}, std::move(inv));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

    // Lexicographic order on the image array; the canonical state order.
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.img_ < b.img_;
    }

private:
    struct private_tag {};
    Permutation(private_tag, std::vector<std::int32_t> zero_based)
        : img_(std::move(zero_based)) {}

    static void require_positive(int n) {
        if (n < 1) throw std::invalid_argument("Permutation: n must be >= 1");
    }

    static bool is_zero_based_bijection(const std::vector<std::int32_t>& img) {
        std::vector<bool> seen(img.size(), false);
        for (std::int32_t v : img) {
            if (v < 0 || v >= static_cast<std::int32_t>(img.size()) ||
                seen[static_cast<std::size_t>(v)])
                return false;
            seen[static_cast<std::size_t>(v)] = true;
        }
        return !img.empty();
    }

    std::vector<std::int32_t> img_;
};

inline void require_equal_size(const Permutation& a, const Permutation& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("permutation size mismatch");
}

// (a o b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    require_equal_size(a, b);
    const auto za = a.zero_based();
    const auto zb = b.zero_based();
    std::vector<std::int32_t> img(za.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        img[i] = za[static_cast<std::size_t>(zb[i])];
    return Permutation::unsafe_from_zero_based(std::move(img));
}

// Spearman's footrule \sum_i |a(i) - b(i)|.
inline std::int64_t l1_distance(const Permutation& a, const Permutation& b) {
    require_equal_size(a, b);
    const auto za = a.zero_based();
    const auto zb = b.zero_based();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < za.size(); ++i)
        s += std::abs(static_cast<std::int64_t>(za[i]) - zb[i]);
    return s;
}

// Spearman's rank correlation distance \sum_i (a(i) - b(i))^2.
inline std::int64_t l2_distance(const Permutation& a, const Permutation& b) {
    require_equal_size(a, b);
    const auto za = a.zero_based();
    const auto zb = b.zero_based();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < za.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(za[i]) - zb[i];
        s += d * d;
    }
    return s;
}

// \sum_i (sigma(i) - i)_+ ; equals l1_distance(sigma, Id) / 2.
inline std::int64_t positive_displacement_sum(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::int64_t d = static_cast<std::int64_t>(z[i]) - static_cast<std::int64_t>(i);
        if (d > 0) s += d;
    }
    return s;
}

// \sum_i i * sigma(i), 1-based; l2_distance(sigma, Id) = 2*\sum i^2 - 2*cross_term.
inline std::int64_t cross_term(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    std::int64_t s = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
        s += static_cast<std::int64_t>(i + 1) * (z[i] + 1);
    return s;
}

inline int cycle_count(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    std::vector<bool> seen(z.size(), false);
    int cycles = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(z[j])) seen[j] = true;
    }
    return cycles;
}

inline int fixed_points(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    int f = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (z[i] == static_cast<std::int32_t>(i)) ++f;
    return f;
}

// Length of the cycle of sigma containing the element k (1-based).
inline int cycle_length_containing(const Permutation& sigma, int k) {
    if (k < 1 || k > sigma.n())
        throw std::invalid_argument("cycle_length_containing: k out of range");
    const auto z = sigma.zero_based();
    int len = 1;
    for (std::int32_t j = z[static_cast<std::size_t>(k - 1)]; j != k - 1;
         j = z[static_cast<std::size_t>(j)])
        ++len;
    return len;
}

// Longest increasing subsequence via patience sorting, O(n log n).
inline int lis_length(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    std::vector<std::int32_t> tails;
    tails.reserve(z.size());
    for (std::int32_t v : z) {
        auto it = std::lower_bound(tails.begin(), tails.end(), v);
        if (it == tails.end())
            tails.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tails.size());
}

namespace detail {

// Inversion count by merge sort.
inline std::int64_t count_inversions(std::vector<std::int32_t>& v,
                                     std::vector<std::int32_t>& scratch,
                                     std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(v, scratch, lo, mid) +
                       count_inversions(v, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[i] <= v[j]) {
            scratch[k++] = v[i++];
        } else {
            inv += static_cast<std::int64_t>(mid - i);
            scratch[k++] = v[j++];
        }
    }
    while (i < mid) scratch[k++] = v[i++];
    while (j < hi) scratch[k++] = v[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

} // namespace detail

// Minimal number of left-multiplications by adjacent transpositions taking a
// to b; equals the inversion number of b o a^{-1} (Coxeter length).
inline std::int64_t adjacent_transposition_distance(const Permutation& a,
                                                    const Permutation& b) {
    require_equal_size(a, b);
    const Permutation w = compose(b, a.inverse());
    std::vector<std::int32_t> v(w.zero_based().begin(), w.zero_based().end());
    std::vector<std::int32_t> scratch(v.size());
    return detail::count_inversions(v, scratch, 0, v.size());
}

// Rank of sigma among all n! permutations in lexicographic image order.
// Requires n <= 20 so the rank fits in 64 bits.
inline std::uint64_t lexicographic_rank(const Permutation& sigma) {
    const auto z = sigma.zero_based();
    const int n = sigma.n();
    if (n > 20) throw std::invalid_argument("lexicographic_rank: n too large");
    std::uint64_t factorial = 1;
    for (int i = 2; i < n; ++i) factorial *= static_cast<std::uint64_t>(i);
    std::uint64_t rank = 0;
    std::uint64_t f = factorial; // (n-1)!
    for (int i = 0; i < n - 1; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (z[static_cast<std::size_t>(j)] < z[static_cast<std::size_t>(i)]) ++smaller;
        rank += static_cast<std::uint64_t>(smaller) * f;
        if (n - 1 - i > 0) f /= static_cast<std::uint64_t>(n - 1 - i);
    }
    return rank;
}

} // namespace mallows
