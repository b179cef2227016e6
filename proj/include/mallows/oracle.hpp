#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mallows/lattice.hpp"
#include "mallows/model.hpp"
#include "mallows/permutation.hpp"
#include "mallows/rng.hpp"
#include "mallows/statistics.hpp"
#include "mallows/twisted.hpp"

namespace mallows {

// Unnormalized log-weight of a state under any of the seven models. Lattice
// families interpret the permutation as a flat bijection of [N]^d.
inline double model_log_weight(const ModelSpec& model, const Permutation& sigma) {
    switch (model.family) {
        case ModelFamily::L1:
            return -model.beta * static_cast<double>(2 * positive_displacement_sum(sigma));
        case ModelFamily::L2:
            return -model.beta * static_cast<double>(l2_energy(sigma));
        case ModelFamily::WeightedL1: {
            double s = 0.0;
            for (int i = 1; i <= sigma.n(); ++i)
                s += std::abs(model.weights[static_cast<std::size_t>(sigma(i) - 1)] -
                              model.weights[static_cast<std::size_t>(i - 1)]);
            return -model.beta * s;
        }
        case ModelFamily::WeightedL2: {
            double s = 0.0;
            for (int i = 1; i <= sigma.n(); ++i) {
                const double d = model.weights[static_cast<std::size_t>(sigma(i) - 1)] -
                                 model.weights[static_cast<std::size_t>(i - 1)];
                s += d * d;
            }
            return -model.beta * s;
        }
        case ModelFamily::TwoParam:
            return two_param_log_weight(sigma, TwoParamSpec{model.beta, model.beta2});
        case ModelFamily::LatticeL1: {
            const LatticeGeometry geo(model.lattice_side, model.lattice_dim);
            return -model.beta * static_cast<double>(lattice_l1_energy_flat(sigma, geo));
        }
        case ModelFamily::LatticeL2: {
            const LatticeGeometry geo(model.lattice_side, model.lattice_dim);
            return -model.beta * static_cast<double>(lattice_l2_energy_flat(sigma, geo));
        }
    }
    throw std::invalid_argument("model_log_weight: unknown family");
}

// Full enumeration of a small model: every state in lexicographic order,
// log-weights, log_Z by stable log-sum-exp, and exact probabilities.
struct ExactModelTable {
    int n = 0; // domain size (N^d for lattice families)
    std::vector<Permutation> states;
    std::vector<double> log_weights;
    std::vector<double> probabilities;
    std::vector<double> cdf;
    double log_z = 0.0;

    // Lexicographic rank doubles as the table index.
    std::size_t index_of(const Permutation& sigma) const {
        return static_cast<std::size_t>(lexicographic_rank(sigma));
    }

    template <class URBG>
    const Permutation& sample(URBG& g) const {
        const double u = rng::unit_open_closed(g);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        return states[idx];
    }
};

inline ExactModelTable enumerate_model(const ModelSpec& model, int n) {
    const std::int64_t domain = model.domain_size(n);
    if (model.is_lattice()) {
        if (domain > 9)
            throw std::invalid_argument("enumeration limit exceeded: lattice N^d must be <= 9");
    } else if (n > 8) {
        throw std::invalid_argument("enumeration limit exceeded: n must be <= 8");
    }
    model.validate(n);

    ExactModelTable table;
    table.n = static_cast<int>(domain);
    std::vector<std::int32_t> img(static_cast<std::size_t>(domain));
    std::iota(img.begin(), img.end(), 1);
    do {
        Permutation sigma(img);
        table.log_weights.push_back(model_log_weight(model, sigma));
        table.states.push_back(std::move(sigma));
    } while (std::next_permutation(img.begin(), img.end()));

    const double max_lw =
        *std::max_element(table.log_weights.begin(), table.log_weights.end());
    double sum = 0.0;
    for (double lw : table.log_weights) sum += std::exp(lw - max_lw);
    table.log_z = max_lw + std::log(sum);

    table.probabilities.reserve(table.states.size());
    table.cdf.reserve(table.states.size());
    double acc = 0.0;
    for (double lw : table.log_weights) {
        const double p = std::exp(lw - table.log_z);
        table.probabilities.push_back(p);
        acc += p;
        table.cdf.push_back(acc);
    }
    table.cdf.back() = 1.0;
    return table;
}

inline double exact_expectation(const ExactModelTable& table,
                                const std::function<double(const Permutation&)>& f) {
    double e = 0.0;
    for (std::size_t i = 0; i < table.states.size(); ++i)
        e += table.probabilities[i] * f(table.states[i]);
    return e;
}

// Expectation of a tracked statistic. Lattice energies need the geometry, so
// the model rides along.
inline double exact_expectation(const ExactModelTable& table, const ModelSpec& model,
                                Stat stat) {
    if (model.is_lattice() && (stat == Stat::H || stat == Stat::H2 || stat == Stat::MeanDisp)) {
        const LatticeGeometry geo(model.lattice_side, model.lattice_dim);
        return exact_expectation(table, [&](const Permutation& sigma) {
            const double h = stat == Stat::H2
                                 ? static_cast<double>(lattice_l2_energy_flat(sigma, geo))
                                 : static_cast<double>(lattice_l1_energy_flat(sigma, geo));
            return stat == Stat::MeanDisp ? h / static_cast<double>(geo.size()) : h;
        });
    }
    if (model.is_lattice() && stat == Stat::T3)
        throw std::invalid_argument("exact_expectation: T3 is undefined for lattice models");
    return exact_expectation(table,
                             [stat](const Permutation& sigma) { return statistic_value(sigma, stat); });
}

} // namespace mallows
