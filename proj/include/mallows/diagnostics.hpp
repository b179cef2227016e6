#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mallows/chain.hpp"
#include "mallows/model.hpp"
#include "mallows/oracle.hpp"
#include "mallows/rng.hpp"
#include "mallows/statistics.hpp"

namespace mallows {

// Total variation distance (1/2) sum_i |p_i - q_i| between two distributions
// on the same ordered support.
inline double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

inline std::vector<double> counts_to_distribution(std::span<const std::int64_t> counts) {
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    if (total <= 0) throw std::invalid_argument("counts_to_distribution: no observations");
    std::vector<double> p(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return p;
}

// Sample autocorrelation at lags 0..max_lag (standard biased estimator).
inline std::vector<double> autocorrelation(std::span<const double> series, int max_lag) {
    const auto t = static_cast<std::int64_t>(series.size());
    if (max_lag < 0 || t <= max_lag)
        throw std::invalid_argument("autocorrelation: series length must exceed max_lag");
    double mean = 0.0;
    for (double x : series) mean += x;
    mean /= static_cast<double>(t);
    double var = 0.0;
    for (double x : series) var += (x - mean) * (x - mean);
    if (var == 0.0)
        throw std::invalid_argument("autocorrelation: series is constant");
    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
    for (int k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::int64_t i = 0; i + k < t; ++i)
            s += (series[static_cast<std::size_t>(i)] - mean) *
                 (series[static_cast<std::size_t>(i + k)] - mean);
        rho[static_cast<std::size_t>(k)] = s / var;
    }
    return rho;
}

// ESS = T / (1 + 2 sum_k rho_k) with the sum truncated at the first
// non-positive autocorrelation, clamped to [1, T].
inline double effective_sample_size(std::span<const double> series) {
    const auto t = static_cast<std::int64_t>(series.size());
    if (t < 3) throw std::invalid_argument("effective_sample_size: series too short");
    const int max_lag = static_cast<int>(std::min<std::int64_t>(t - 1, 1000));
    const std::vector<double> rho = autocorrelation(series, max_lag);
    double s = 0.0;
    for (int k = 1; k <= max_lag; ++k) {
        if (rho[static_cast<std::size_t>(k)] <= 0.0) break;
        s += rho[static_cast<std::size_t>(k)];
    }
    const double ess = static_cast<double>(t) / (1.0 + 2.0 * s);
    return std::clamp(ess, 1.0, static_cast<double>(t));
}

struct MixingPoint {
    int step = 0;
    double tv = 0.0;
};

namespace detail {

template <class StepFn>
void accumulate_state_histogram(const Permutation& start, int steps, int reps,
                                std::uint64_t seed, std::uint64_t stage, int threads,
                                const ExactModelTable& table, StepFn&& step,
                                std::vector<std::vector<std::int64_t>>& hist) {
    // hist[t][state] over replications; worker w owns a private block to
    // keep the accumulation deterministic and lock-free.
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::vector<std::vector<std::vector<std::int64_t>>> partial(
        static_cast<std::size_t>(threads),
        std::vector<std::vector<std::int64_t>>(
            static_cast<std::size_t>(steps) + 1,
            std::vector<std::int64_t>(table.states.size(), 0)));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            auto& mine = partial[static_cast<std::size_t>(w)];
            for (int r = w; r < reps; r += threads) {
                rng::Stream g =
                    rng::Stream::derived(seed, {stage, static_cast<std::uint64_t>(r)});
                Permutation current = start;
                ++mine[0][table.index_of(current)];
                for (int t = 1; t <= steps; ++t) {
                    current = step(current, g);
                    ++mine[static_cast<std::size_t>(t)][table.index_of(current)];
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& mine : partial)
        for (std::size_t t = 0; t < mine.size(); ++t)
            for (std::size_t s = 0; s < mine[t].size(); ++s) hist[t][s] += mine[t][s];
}

} // namespace detail

// Empirical mixing profile in exact mode: the empirical state distribution
// over `reps` replications at each step, against the enumerated stationary
// law, started from the worse of {Id, reversal}. tv[t] is the max over the
// two starts.
inline std::vector<MixingPoint> empirical_mixing_profile_exact(
    const ModelSpec& model, SamplerKind sampler, int n, int max_steps, int reps,
    std::uint64_t seed, int threads = 0) {
    const ExactModelTable table = enumerate_model(model, n);
    const int domain = table.n;

    std::vector<Permutation> starts{Permutation::identity(domain),
                                    Permutation::reversal(domain)};
    std::vector<std::vector<double>> tv_per_start;

    const bool lattice = model.is_lattice();
    std::uint64_t stage = 0;
    for (const Permutation& start : starts) {
        std::vector<std::vector<std::int64_t>> hist(
            static_cast<std::size_t>(max_steps) + 1,
            std::vector<std::int64_t>(table.states.size(), 0));
        if (sampler == SamplerKind::HitRun && !lattice) {
            detail::accumulate_state_histogram(
                start, max_steps, reps, seed, stage, threads, table,
                [&](const Permutation& s, rng::Stream& g) { return hitrun_step(model, s, g); },
                hist);
        } else if (sampler == SamplerKind::HitRun) {
            const LatticeGeometry geo(model.lattice_side, model.lattice_dim);
            detail::accumulate_state_histogram(
                start, max_steps, reps, seed, stage, threads, table,
                [&](const Permutation& s, rng::Stream& g) {
                    const LatticeBijection cur(geo, s);
                    const LatticeBijection next = model.family == ModelFamily::LatticeL2
                                                      ? gibbs_sweep_l2(cur, model.beta, g)
                                                      : gibbs_sweep_l1(cur, model.beta, g);
                    return next.flat();
                },
                hist);
        } else {
            detail::accumulate_state_histogram(
                start, max_steps, reps, seed, stage, threads, table,
                [&](const Permutation& s, rng::Stream& g) {
                    return metropolis_step(model, s, g);
                },
                hist);
        }
        std::vector<double> tv(static_cast<std::size_t>(max_steps) + 1);
        for (int t = 0; t <= max_steps; ++t) {
            const std::vector<double> empirical =
                counts_to_distribution(hist[static_cast<std::size_t>(t)]);
            tv[static_cast<std::size_t>(t)] = tv_distance(empirical, table.probabilities);
        }
        tv_per_start.push_back(std::move(tv));
        ++stage;
    }

    std::vector<MixingPoint> profile;
    profile.reserve(static_cast<std::size_t>(max_steps) + 1);
    for (int t = 0; t <= max_steps; ++t)
        profile.push_back({t, std::max(tv_per_start[0][static_cast<std::size_t>(t)],
                                       tv_per_start[1][static_cast<std::size_t>(t)])});
    return profile;
}

// Proxy profile for sizes beyond enumeration: TV between the marginal law of
// one statistic at step t and a reference marginal taken at ref_steps
// (which must be comfortably past mixing). The proxy lower-bounds the true
// state TV.
inline std::vector<MixingPoint> empirical_mixing_profile_proxy(
    const ModelSpec& model, SamplerKind sampler, int n, Stat stat, int max_steps, int reps,
    int ref_steps, std::uint64_t seed, int threads = 0) {
    if (model.is_lattice())
        throw std::invalid_argument("proxy mixing profile: lattice models not supported");
    if (ref_steps <= max_steps)
        throw std::invalid_argument("proxy mixing profile: ref_steps must exceed max_steps");

    const Permutation start = Permutation::identity(n);
    // value histograms per step; statistics tracked here are integer-valued in [0, n]
    auto bucket = [n](double v) {
        const auto b = static_cast<std::int64_t>(std::llround(v));
        return std::clamp<std::int64_t>(b, 0, n);
    };

    std::vector<std::vector<std::int64_t>> hist(
        static_cast<std::size_t>(max_steps) + 1,
        std::vector<std::int64_t>(static_cast<std::size_t>(n) + 1, 0));
    std::vector<std::int64_t> ref_hist(static_cast<std::size_t>(n) + 1, 0);

    (void)threads;
    // Replication r feeds the per-step histograms and the reference
    // histogram from independent streams.
    for (int r = 0; r < reps; ++r) {
        rng::Stream g = rng::Stream::derived(seed, {0, static_cast<std::uint64_t>(r)});
        Permutation current = start;
        ++hist[0][static_cast<std::size_t>(bucket(statistic_value(current, stat)))];
        for (int t = 1; t <= max_steps; ++t) {
            current = sampler == SamplerKind::HitRun ? hitrun_step(model, current, g)
                                                     : metropolis_step(model, current, g);
            ++hist[static_cast<std::size_t>(t)]
                  [static_cast<std::size_t>(bucket(statistic_value(current, stat)))];
        }
        rng::Stream gr = rng::Stream::derived(seed, {1, static_cast<std::uint64_t>(r)});
        Permutation ref = start;
        for (int t = 1; t <= ref_steps; ++t)
            ref = sampler == SamplerKind::HitRun ? hitrun_step(model, ref, gr)
                                                 : metropolis_step(model, ref, gr);
        ++ref_hist[static_cast<std::size_t>(bucket(statistic_value(ref, stat)))];
    }

    const std::vector<double> reference = counts_to_distribution(ref_hist);
    std::vector<MixingPoint> profile;
    profile.reserve(static_cast<std::size_t>(max_steps) + 1);
    for (int t = 0; t <= max_steps; ++t) {
        const std::vector<double> empirical =
            counts_to_distribution(hist[static_cast<std::size_t>(t)]);
        profile.push_back({t, tv_distance(empirical, reference)});
    }
    return profile;
}

} // namespace mallows
