#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mallows/bounds.hpp"
#include "mallows/permutation.hpp"
#include "mallows/restricted.hpp"
#include "mallows/rng.hpp"

namespace mallows {

// Row-major geometry of [N]^d: the last coordinate varies fastest.
// Coordinates are 1-based, linear indices 0-based.
class LatticeGeometry {
public:
    LatticeGeometry(int side, int dim) : side_(side), dim_(dim) {
        if (side < 1 || dim < 1)
            throw std::invalid_argument("LatticeGeometry: need N >= 1 and d >= 1");
        size_ = 1;
        for (int i = 0; i < dim; ++i) {
            if (size_ > (1ll << 40) / side)
                throw std::invalid_argument("LatticeGeometry: N^d too large");
            size_ *= side;
        }
    }

    int side() const noexcept { return side_; }
    int dim() const noexcept { return dim_; }
    std::int64_t size() const noexcept { return size_; }

    // 1-based coordinate i of the point with linear index idx.
    int coordinate(std::int64_t idx, int i) const {
        std::int64_t div = 1;
        for (int k = dim_; k > i; --k) div *= side_;
        return static_cast<int>((idx / div) % side_) + 1;
    }

    void coordinates(std::int64_t idx, std::vector<int>& out) const {
        out.resize(static_cast<std::size_t>(dim_));
        for (int i = dim_; i >= 1; --i) {
            out[static_cast<std::size_t>(i - 1)] = static_cast<int>(idx % side_) + 1;
            idx /= side_;
        }
    }

    std::int64_t index(const std::vector<int>& coords) const {
        std::int64_t idx = 0;
        for (int i = 0; i < dim_; ++i)
            idx = idx * side_ + (coords[static_cast<std::size_t>(i)] - 1);
        return idx;
    }

private:
    int side_;
    int dim_;
    std::int64_t size_;
};

// A bijection of [N]^d, stored as a permutation of the row-major linear
// indices. Immutable like Permutation.
class LatticeBijection {
public:
    LatticeBijection(LatticeGeometry geometry, Permutation flat)
        : geo_(geometry), flat_(std::move(flat)) {
        if (flat_.n() != geo_.size())
            throw std::invalid_argument("LatticeBijection: size mismatch");
    }

    static LatticeBijection identity(int side, int dim) {
        LatticeGeometry geo(side, dim);
        return LatticeBijection(geo, Permutation::identity(static_cast<int>(geo.size())));
    }

    const LatticeGeometry& geometry() const noexcept { return geo_; }
    const Permutation& flat() const noexcept { return flat_; }
    std::int64_t size() const noexcept { return geo_.size(); }

    // 1-based coordinate i of sigma(x) for the point with linear index idx.
    int image_coordinate(std::int64_t idx, int i) const {
        return geo_.coordinate(flat_.zero_based()[static_cast<std::size_t>(idx)], i);
    }

    friend bool operator==(const LatticeBijection&, const LatticeBijection&) = default;

private:
    LatticeGeometry geo_;
    Permutation flat_;
};

// H_d(sigma) = sum_x sum_i |sigma(x)_i - x_i| for a flat permutation of the
// linear indices, given the geometry.
inline std::int64_t lattice_l1_energy_flat(const Permutation& flat,
                                           const LatticeGeometry& geo) {
    std::int64_t s = 0;
    const auto z = flat.zero_based();
    for (std::int64_t x = 0; x < geo.size(); ++x)
        for (int i = 1; i <= geo.dim(); ++i)
            s += std::abs(geo.coordinate(z[static_cast<std::size_t>(x)], i) -
                          geo.coordinate(x, i));
    return s;
}

inline std::int64_t lattice_l2_energy_flat(const Permutation& flat,
                                           const LatticeGeometry& geo) {
    std::int64_t s = 0;
    const auto z = flat.zero_based();
    for (std::int64_t x = 0; x < geo.size(); ++x)
        for (int i = 1; i <= geo.dim(); ++i) {
            const std::int64_t d = geo.coordinate(z[static_cast<std::size_t>(x)], i) -
                                   geo.coordinate(x, i);
            s += d * d;
        }
    return s;
}

inline std::int64_t lattice_l1_energy(const LatticeBijection& sigma) {
    return lattice_l1_energy_flat(sigma.flat(), sigma.geometry());
}

inline std::int64_t lattice_l2_energy(const LatticeBijection& sigma) {
    return lattice_l2_energy_flat(sigma.flat(), sigma.geometry());
}

// Per-(point, coordinate) real bounds b_{x,i}, indexed [x * d + (i-1)].
struct LatticeBounds {
    LatticeBounds(const LatticeGeometry& geo, std::vector<double> values)
        : b(std::move(values)) {
        if (static_cast<std::int64_t>(b.size()) != geo.size() * geo.dim())
            throw std::invalid_argument("LatticeBounds: size mismatch");
        for (double v : b)
            if (!std::isfinite(v))
                throw std::invalid_argument("LatticeBounds: entries must be finite");
    }
    double at(std::int64_t x, int i, int dim) const {
        return b[static_cast<std::size_t>(x * dim + (i - 1))];
    }
    std::vector<double> b;
};

namespace detail {

// One Gibbs sweep over the coordinate directions j = 1..d. Within direction
// j the domain points are partitioned into fibers by the frozen image
// coordinates z = (sigma(x))_{-j}; each fiber has exactly N points and its
// j-th image coordinates are resampled as a 1-d restricted permutation with
// bounds b_{x,j}. `lower` selects the restriction side: Lower for the L2
// model, Upper for the L1 model.
template <class URBG>
LatticeBijection gibbs_sweep(const LatticeBijection& sigma, const LatticeBounds& bounds,
                             bool lower, URBG& g) {
    const LatticeGeometry& geo = sigma.geometry();
    const int side = geo.side();
    const int dim = geo.dim();
    const std::int64_t m = geo.size();

    std::vector<std::int32_t> img(sigma.flat().zero_based().begin(),
                                  sigma.flat().zero_based().end());
    std::vector<int> coords(static_cast<std::size_t>(dim));

    // fiber key = linear index of the (d-1)-tuple of frozen image coordinates
    std::int64_t key_count = 1;
    for (int i = 0; i < dim - 1; ++i) key_count *= side;
    std::vector<std::vector<std::int64_t>> fibers(static_cast<std::size_t>(key_count));

    for (int j = 1; j <= dim; ++j) {
        for (auto& f : fibers) f.clear();
        for (std::int64_t x = 0; x < m; ++x) {
            geo.coordinates(img[static_cast<std::size_t>(x)], coords);
            std::int64_t key = 0;
            for (int i = 1; i <= dim; ++i)
                if (i != j) key = key * side + (coords[static_cast<std::size_t>(i - 1)] - 1);
            fibers[static_cast<std::size_t>(key)].push_back(x);
        }

        for (const auto& fiber : fibers) {
            if (static_cast<int>(fiber.size()) != side)
                throw std::logic_error("gibbs_sweep: fiber is not of size N");
            std::vector<double> fb(fiber.size());
            for (std::size_t l = 0; l < fiber.size(); ++l)
                fb[l] = bounds.at(fiber[l], j, dim);
            const BoundVector fiber_bounds(
                lower ? BoundDirection::Lower : BoundDirection::Upper, std::move(fb));
            const Permutation gamma = detail::sample_restricted_uniform(fiber_bounds, g);
            for (std::size_t l = 0; l < fiber.size(); ++l) {
                const std::int64_t x = fiber[l];
                geo.coordinates(img[static_cast<std::size_t>(x)], coords);
                coords[static_cast<std::size_t>(j - 1)] = gamma(static_cast<int>(l) + 1);
                img[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(geo.index(coords));
            }
        }
    }
    return LatticeBijection(geo, Permutation::unsafe_from_zero_based(std::move(img)));
}

inline void check_lattice_admits(const LatticeBijection& sigma, const LatticeBounds& bounds,
                                 bool lower) {
    const LatticeGeometry& geo = sigma.geometry();
    for (std::int64_t x = 0; x < geo.size(); ++x)
        for (int i = 1; i <= geo.dim(); ++i) {
            const double b = bounds.at(x, i, geo.dim());
            const int v = sigma.image_coordinate(x, i);
            if (lower ? v < b : v > b)
                throw std::logic_error("gibbs_sweep: bounds exclude the current state");
        }
}

} // namespace detail

// Sweep with explicit bounds, shared by tests and the production steps.
template <class URBG>
LatticeBijection gibbs_sweep_l2_with_bounds(const LatticeBijection& sigma,
                                            const LatticeBounds& bounds, URBG& g) {
    detail::check_lattice_admits(sigma, bounds, /*lower=*/true);
    return detail::gibbs_sweep(sigma, bounds, /*lower=*/true, g);
}

template <class URBG>
LatticeBijection gibbs_sweep_l1_with_bounds(const LatticeBijection& sigma,
                                            const LatticeBounds& bounds, URBG& g) {
    detail::check_lattice_admits(sigma, bounds, /*lower=*/false);
    return detail::gibbs_sweep(sigma, bounds, /*lower=*/false, g);
}

// One step of the generalized hit-and-run chain for the lattice L2 model:
// draw b_{x,i} = sigma(x)_i - Exp(1)/(2 beta x_i), then run a full Gibbs
// sweep over the d directions. Stationary law P~_{beta,d}.
template <class URBG>
LatticeBijection gibbs_sweep_l2(const LatticeBijection& sigma, double beta, URBG& g) {
    const LatticeGeometry& geo = sigma.geometry();
    std::vector<double> b(static_cast<std::size_t>(geo.size() * geo.dim()));
    for (std::int64_t x = 0; x < geo.size(); ++x)
        for (int i = 1; i <= geo.dim(); ++i)
            b[static_cast<std::size_t>(x * geo.dim() + (i - 1))] =
                sigma.image_coordinate(x, i) -
                rng::exponential(g) / (2.0 * beta * geo.coordinate(x, i));
    return gibbs_sweep_l2_with_bounds(sigma, LatticeBounds(geo, std::move(b)), g);
}

// Mirror for the lattice L1 model: b_{x,i} = max(x_i, sigma(x)_i) +
// Exp(1)/(2 beta), Upper-restricted fibers. Stationary law P_{beta,d}.
template <class URBG>
LatticeBijection gibbs_sweep_l1(const LatticeBijection& sigma, double beta, URBG& g) {
    const LatticeGeometry& geo = sigma.geometry();
    std::vector<double> b(static_cast<std::size_t>(geo.size() * geo.dim()));
    for (std::int64_t x = 0; x < geo.size(); ++x)
        for (int i = 1; i <= geo.dim(); ++i)
            b[static_cast<std::size_t>(x * geo.dim() + (i - 1))] =
                std::max(geo.coordinate(x, i), sigma.image_coordinate(x, i)) +
                rng::exponential(g) / (2.0 * beta);
    return gibbs_sweep_l1_with_bounds(sigma, LatticeBounds(geo, std::move(b)), g);
}

} // namespace mallows
