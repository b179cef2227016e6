#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"
#include "mallows/twisted.hpp"

namespace mallows {

// Log acceptance ratios for the proposal sigma -> sigma (i,j), i.e. swapping
// the images at places i and j (1-based). Zero-based image array in, so the
// chain hot path never copies the state.

inline double metro_l1_log_ratio(const std::vector<std::int32_t>& img, int i, int j,
                                 double beta) {
    const std::int64_t si = img[static_cast<std::size_t>(i - 1)] + 1;
    const std::int64_t sj = img[static_cast<std::size_t>(j - 1)] + 1;
    return -beta * static_cast<double>(std::abs(si - j) + std::abs(sj - i) -
                                       std::abs(si - i) - std::abs(sj - j));
}

inline double metro_l2_log_ratio(const std::vector<std::int32_t>& img, int i, int j,
                                 double beta) {
    const std::int64_t si = img[static_cast<std::size_t>(i - 1)] + 1;
    const std::int64_t sj = img[static_cast<std::size_t>(j - 1)] + 1;
    return -2.0 * beta * static_cast<double>((i - j) * (si - sj));
}

// C(sigma (i,j)) - C(sigma) is +1 when i and j share a cycle (the swap
// splits it) and -1 otherwise (the swap merges two cycles). Walk the cycle
// from i looking for j instead of decomposing the whole permutation.
inline int cycle_delta_of_swap(const std::vector<std::int32_t>& img, int i, int j) {
    const std::int32_t target = static_cast<std::int32_t>(j - 1);
    std::int32_t x = img[static_cast<std::size_t>(i - 1)];
    while (x != static_cast<std::int32_t>(i - 1)) {
        if (x == target) return +1;
        x = img[static_cast<std::size_t>(x)];
    }
    return -1;
}

inline double metro_two_param_log_ratio(const std::vector<std::int32_t>& img, int i, int j,
                                        const TwoParamSpec& spec) {
    return metro_l1_log_ratio(img, i, j, spec.beta1) +
           spec.beta2 * static_cast<double>(cycle_delta_of_swap(img, i, j));
}

namespace detail {

template <class URBG, class LogRatio>
bool metro_step_inplace(std::vector<std::int32_t>& img, URBG& g, LogRatio&& log_ratio) {
    const int n = static_cast<int>(img.size());
    const int i = rng::uniform_int(g, 1, n);
    const int j = rng::uniform_int(g, 1, n);
    if (i == j) return false; // the paper's stay rule, probability 1/n
    const double lr = log_ratio(img, i, j);
    if (lr < 0.0 && rng::unit_open_closed(g) > std::exp(lr)) return false;
    std::swap(img[static_cast<std::size_t>(i - 1)], img[static_cast<std::size_t>(j - 1)]);
    return true;
}

} // namespace detail

template <class URBG>
bool metro_step_l1_inplace(std::vector<std::int32_t>& img, double beta, URBG& g) {
    return detail::metro_step_inplace(img, g, [beta](const auto& v, int i, int j) {
        return metro_l1_log_ratio(v, i, j, beta);
    });
}

template <class URBG>
bool metro_step_l2_inplace(std::vector<std::int32_t>& img, double beta, URBG& g) {
    return detail::metro_step_inplace(img, g, [beta](const auto& v, int i, int j) {
        return metro_l2_log_ratio(v, i, j, beta);
    });
}

template <class URBG>
bool metro_step_two_param_inplace(std::vector<std::int32_t>& img, const TwoParamSpec& spec,
                                  URBG& g) {
    return detail::metro_step_inplace(img, g, [&spec](const auto& v, int i, int j) {
        return metro_two_param_log_ratio(v, i, j, spec);
    });
}

// Value-semantics wrappers.

template <class URBG>
Permutation metro_step_l1(const Permutation& sigma, double beta, URBG& g) {
    if (!(beta > 0.0)) throw std::invalid_argument("metro_step_l1: beta must be > 0");
    std::vector<std::int32_t> img(sigma.zero_based().begin(), sigma.zero_based().end());
    metro_step_l1_inplace(img, beta, g);
    return Permutation::unsafe_from_zero_based(std::move(img));
}

template <class URBG>
Permutation metro_step_l2(const Permutation& sigma, double beta, URBG& g) {
    if (!(beta > 0.0)) throw std::invalid_argument("metro_step_l2: beta must be > 0");
    std::vector<std::int32_t> img(sigma.zero_based().begin(), sigma.zero_based().end());
    metro_step_l2_inplace(img, beta, g);
    return Permutation::unsafe_from_zero_based(std::move(img));
}

template <class URBG>
Permutation metro_step_two_param(const Permutation& sigma, const TwoParamSpec& spec,
                                 URBG& g) {
    spec.validate();
    std::vector<std::int32_t> img(sigma.zero_based().begin(), sigma.zero_based().end());
    metro_step_two_param_inplace(img, spec, g);
    return Permutation::unsafe_from_zero_based(std::move(img));
}

} // namespace mallows
