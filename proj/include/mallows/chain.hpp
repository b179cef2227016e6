#pragma once

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "mallows/hitrun.hpp"
#include "mallows/lattice.hpp"
#include "mallows/metropolis.hpp"
#include "mallows/model.hpp"
#include "mallows/rng.hpp"
#include "mallows/statistics.hpp"
#include "mallows/twisted.hpp"

namespace mallows {

enum class SamplerKind { HitRun, Metropolis };

inline const char* sampler_name(SamplerKind s) {
    return s == SamplerKind::HitRun ? "hitrun" : "metropolis";
}

// One hit-and-run step for any S_n model family.
template <class URBG>
Permutation hitrun_step(const ModelSpec& model, const Permutation& sigma, URBG& g,
                        BoundsMode mode = BoundsMode::Continuous) {
    switch (model.family) {
        case ModelFamily::L1: return step_l1(sigma, model.beta, g, mode);
        case ModelFamily::L2: return step_l2(sigma, model.beta, g, mode);
        case ModelFamily::WeightedL1:
            return step_weighted_l1(sigma, model.beta, model.weights, g);
        case ModelFamily::WeightedL2:
            return step_weighted_l2(sigma, model.beta, model.weights, g);
        case ModelFamily::TwoParam:
            return step_two_param(sigma, TwoParamSpec{model.beta, model.beta2}, g);
        case ModelFamily::LatticeL1:
        case ModelFamily::LatticeL2:
            throw std::invalid_argument("hitrun_step: lattice models use run_lattice_chain");
    }
    throw std::invalid_argument("hitrun_step: unknown family");
}

template <class URBG>
bool metropolis_step_inplace(const ModelSpec& model, std::vector<std::int32_t>& img,
                             URBG& g) {
    switch (model.family) {
        case ModelFamily::L1: return metro_step_l1_inplace(img, model.beta, g);
        case ModelFamily::L2: return metro_step_l2_inplace(img, model.beta, g);
        case ModelFamily::TwoParam:
            return metro_step_two_param_inplace(img, TwoParamSpec{model.beta, model.beta2}, g);
        default:
            throw std::invalid_argument(
                "metropolis_step_inplace: only l1, l2 and twoparam have Metropolis kernels");
    }
}

template <class URBG>
Permutation metropolis_step(const ModelSpec& model, const Permutation& sigma, URBG& g) {
    std::vector<std::int32_t> img(sigma.zero_based().begin(), sigma.zero_based().end());
    metropolis_step_inplace(model, img, g);
    return Permutation::unsafe_from_zero_based(std::move(img));
}

struct ChainSeries {
    std::vector<StatisticsRecord> records;
    std::vector<Permutation> states; // populated only when keep_states is set
};

struct ChainResult {
    std::vector<ChainSeries> replications; // merged by replication index
};

namespace detail {

// Runs fn(r) for r = 0..count-1 on up to `threads` workers; slot r of the
// output is owned by exactly one worker, so the merge is deterministic.
template <class Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > count) threads = count;
    if (threads <= 1) {
        for (int r = 0; r < count; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([w, count, threads, &fn] {
            for (int r = w; r < count; r += threads) fn(r);
        });
    }
    for (auto& t : pool) t.join();
}

inline StatSet validated_stats(const ModelSpec& model, StatSet collect) {
    if (model.is_lattice() && collect.has(Stat::T3))
        throw std::invalid_argument(
            "run_chain: the longest increasing subsequence is undefined for lattice models");
    return collect;
}

} // namespace detail

// All statistics a lattice chain supports.
inline StatSet lattice_stats() { return StatSet::all().without(Stat::T3); }

// Runs `replications` independent chains of the given model and sampler.
// Deterministic given cfg.seed: replication r draws from the stream derived
// from (seed, r), regardless of thread count. A record is taken at steps
// burn_in + thinning, burn_in + 2*thinning, ..., up to cfg.steps.
inline ChainResult run_chain(const ModelSpec& model, SamplerKind sampler,
                             const Permutation& start, const ChainConfig& cfg,
                             StatSet collect = StatSet::all(), bool keep_states = false) {
    if (model.is_lattice())
        throw std::invalid_argument("run_chain: lattice models use run_lattice_chain");
    model.validate(start.n());
    cfg.validate();
    detail::validated_stats(model, collect);
    if (sampler == SamplerKind::Metropolis) {
        // validate the family eagerly rather than inside worker threads
        if (model.family != ModelFamily::L1 && model.family != ModelFamily::L2 &&
            model.family != ModelFamily::TwoParam)
            throw std::invalid_argument("run_chain: unsupported model/sampler combination");
    }

    ChainResult result;
    result.replications.resize(static_cast<std::size_t>(cfg.replications));
    detail::parallel_for_index(cfg.replications, cfg.threads, [&](int r) {
        rng::Stream g = rng::Stream::derived(cfg.seed, {static_cast<std::uint64_t>(r)});
        ChainSeries& series = result.replications[static_cast<std::size_t>(r)];
        series.records.reserve(static_cast<std::size_t>(cfg.retained()));

        if (sampler == SamplerKind::HitRun) {
            Permutation current = start;
            for (std::int64_t t = 1; t <= cfg.steps; ++t) {
                current = hitrun_step(model, current, g);
                if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thinning == 0) {
                    series.records.push_back(compute_statistics(current, collect));
                    if (keep_states) series.states.push_back(current);
                }
            }
        } else {
            std::vector<std::int32_t> img(start.zero_based().begin(),
                                          start.zero_based().end());
            for (std::int64_t t = 1; t <= cfg.steps; ++t) {
                metropolis_step_inplace(model, img, g);
                if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thinning == 0) {
                    Permutation snapshot =
                        Permutation::unsafe_from_zero_based(std::vector<std::int32_t>(img));
                    series.records.push_back(compute_statistics(snapshot, collect));
                    if (keep_states) series.states.push_back(std::move(snapshot));
                }
            }
        }
    });
    return result;
}

namespace detail {

inline StatisticsRecord lattice_statistics(const LatticeBijection& sigma, StatSet which) {
    // T1, T2 and C act on the flat permutation; the energies need the geometry.
    StatisticsRecord r = compute_statistics(
        sigma.flat(), which.without(Stat::H).without(Stat::H2).without(Stat::MeanDisp));
    if (which.has(Stat::H) || which.has(Stat::MeanDisp)) {
        r.h_l1 = lattice_l1_energy(sigma);
        if (which.has(Stat::MeanDisp))
            r.mean_displacement =
                static_cast<double>(r.h_l1) / static_cast<double>(sigma.size());
    }
    if (which.has(Stat::H2)) r.h_l2 = lattice_l2_energy(sigma);
    return r;
}

} // namespace detail

// Lattice analogue of run_chain. One step is one full Gibbs sweep over the d
// coordinate directions. Only the hit-and-run sampler exists for lattice
// models.
inline ChainResult run_lattice_chain(const ModelSpec& model, SamplerKind sampler,
                                     const LatticeBijection& start, const ChainConfig& cfg,
                                     StatSet collect = lattice_stats(),
                                     bool keep_states = false) {
    if (!model.is_lattice())
        throw std::invalid_argument("run_lattice_chain: model is not a lattice family");
    if (sampler != SamplerKind::HitRun)
        throw std::invalid_argument("run_lattice_chain: unsupported model/sampler combination");
    if (start.geometry().side() != model.lattice_side ||
        start.geometry().dim() != model.lattice_dim)
        throw std::invalid_argument("run_lattice_chain: geometry mismatch");
    model.validate(static_cast<int>(start.size()));
    cfg.validate();
    detail::validated_stats(model, collect);
    const bool l2 = model.family == ModelFamily::LatticeL2;

    ChainResult result;
    result.replications.resize(static_cast<std::size_t>(cfg.replications));
    detail::parallel_for_index(cfg.replications, cfg.threads, [&](int r) {
        rng::Stream g = rng::Stream::derived(cfg.seed, {static_cast<std::uint64_t>(r)});
        ChainSeries& series = result.replications[static_cast<std::size_t>(r)];
        series.records.reserve(static_cast<std::size_t>(cfg.retained()));
        LatticeBijection current = start;
        for (std::int64_t t = 1; t <= cfg.steps; ++t) {
            current = l2 ? gibbs_sweep_l2(current, model.beta, g)
                         : gibbs_sweep_l1(current, model.beta, g);
            if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thinning == 0) {
                series.records.push_back(detail::lattice_statistics(current, collect));
                if (keep_states) series.states.push_back(current.flat());
            }
        }
    });
    return result;
}

} // namespace mallows
