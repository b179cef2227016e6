#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mallows {

enum class ModelFamily {
    L1,         // P(sigma) ~ exp(-beta * sum |sigma(i)-i|)
    L2,         // P(sigma) ~ exp(-beta * sum (sigma(i)-i)^2)
    WeightedL1, // P(sigma) ~ exp(-beta * sum |w(sigma(i))-w(i)|)
    WeightedL2, // P(sigma) ~ exp(-beta * sum (w(sigma(i))-w(i))^2)
    TwoParam,   // P(sigma) ~ exp(-beta1 * H(sigma,Id) + beta2 * C(sigma))
    LatticeL1,  // bijections of [N]^d, L1 displacement energy
    LatticeL2,  // bijections of [N]^d, squared Euclidean displacement energy
};

inline const char* family_name(ModelFamily f) {
    switch (f) {
        case ModelFamily::L1: return "l1";
        case ModelFamily::L2: return "l2";
        case ModelFamily::WeightedL1: return "wl1";
        case ModelFamily::WeightedL2: return "wl2";
        case ModelFamily::TwoParam: return "twoparam";
        case ModelFamily::LatticeL1: return "lattice-l1";
        case ModelFamily::LatticeL2: return "lattice-l2";
    }
    return "?";
}

// One of the seven target distributions together with its parameters.
struct ModelSpec {
    ModelFamily family = ModelFamily::L1;
    double beta = 0.0;  // the scale parameter; beta1 for TwoParam
    double beta2 = 0.0; // cycle-weight exponent, TwoParam only
    std::vector<double> weights; // weighted variants; non-decreasing, positive
    int lattice_side = 0;        // N, lattice variants
    int lattice_dim = 0;         // d, lattice variants

    static ModelSpec l1(double beta) { return {ModelFamily::L1, beta, 0.0, {}, 0, 0}; }
    static ModelSpec l2(double beta) { return {ModelFamily::L2, beta, 0.0, {}, 0, 0}; }
    static ModelSpec weighted_l1(double beta, std::vector<double> w) {
        return {ModelFamily::WeightedL1, beta, 0.0, std::move(w), 0, 0};
    }
    static ModelSpec weighted_l2(double beta, std::vector<double> w) {
        return {ModelFamily::WeightedL2, beta, 0.0, std::move(w), 0, 0};
    }
    static ModelSpec two_param(double beta1, double beta2) {
        return {ModelFamily::TwoParam, beta1, beta2, {}, 0, 0};
    }
    static ModelSpec lattice_l1(double beta, int side, int dim) {
        return {ModelFamily::LatticeL1, beta, 0.0, {}, side, dim};
    }
    static ModelSpec lattice_l2(double beta, int side, int dim) {
        return {ModelFamily::LatticeL2, beta, 0.0, {}, side, dim};
    }

    bool is_lattice() const {
        return family == ModelFamily::LatticeL1 || family == ModelFamily::LatticeL2;
    }
    bool is_weighted() const {
        return family == ModelFamily::WeightedL1 || family == ModelFamily::WeightedL2;
    }

    // Number of points the state moves: n, or N^d for lattice families.
    std::int64_t domain_size(int n) const {
        if (!is_lattice()) return n;
        std::int64_t m = 1;
        for (int i = 0; i < lattice_dim; ++i) m *= lattice_side;
        return m;
    }

    // n is the intended state size (ignored by lattice families).
    void validate(int n) const {
        if (!(beta > 0.0))
            throw std::invalid_argument("ModelSpec: the scale parameter must be positive");
        if (family == ModelFamily::TwoParam && beta2 < 0.0)
            throw std::invalid_argument("ModelSpec: beta2 must be >= 0");
        if (is_weighted()) {
            if (static_cast<int>(weights.size()) != n)
                throw std::invalid_argument("ModelSpec: weight vector must have length n");
            double prev = 0.0;
            for (double w : weights) {
                if (!(w > 0.0))
                    throw std::invalid_argument("ModelSpec: weights must be positive");
                if (w < prev)
                    throw std::invalid_argument("ModelSpec: weights must be non-decreasing");
                prev = w;
            }
        }
        if (is_lattice()) {
            if (lattice_side < 1 || lattice_dim < 1)
                throw std::invalid_argument("ModelSpec: lattice needs N >= 1 and d >= 1");
        }
    }
};

// Deterministic chain schedule. steps are counted in kernel applications
// (one full Gibbs sweep for lattice models); a sample is retained at steps
// burn_in + thinning, burn_in + 2*thinning, ..., up to steps.
struct ChainConfig {
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    std::int64_t burn_in = 0;
    std::int64_t thinning = 1;
    int replications = 1;
    int threads = 0; // 0 = hardware concurrency

    void validate() const {
        if (steps < 0 || burn_in < 0)
            throw std::invalid_argument("ChainConfig: negative step counts");
        if (steps < burn_in)
            throw std::invalid_argument("ChainConfig: steps must be >= burn_in");
        if (thinning < 1) throw std::invalid_argument("ChainConfig: thinning must be >= 1");
        if (replications < 1)
            throw std::invalid_argument("ChainConfig: replications must be >= 1");
    }

    std::int64_t retained() const { return (steps - burn_in) / thinning; }
};

} // namespace mallows
