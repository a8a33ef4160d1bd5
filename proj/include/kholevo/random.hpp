// random.hpp
// Seeded random states, unitaries and ensembles for the property suites.

#pragma once

#include "kholevo/core.hpp"

#include <cstdint>
#include <random>

namespace kholevo {

using Rng = std::mt19937_64;

/// Derives an independent stream seed for case `index` of a sweep (splitmix64).
inline std::uint64_t case_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// rows x cols array of standard complex Gaussians (real and imaginary parts N(0,1)).
inline Operator gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Operator g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = complex(re, im);
        }
    return g;
}

inline DensityOperator random_density(std::size_t dim, std::size_t rank, Rng& rng) {
    if (dim == 0 || rank == 0 || rank > dim)
        throw std::invalid_argument("random_density: need 1 <= rank <= dim, got rank " + std::to_string(rank) +
                                    " for dim " + std::to_string(dim));
    const Operator g = gaussian_matrix(dim, rank, rng);
    Operator rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator::trusted(std::move(rho));
}

/// G G† / Tr(G G†) with G a dim x rank complex Gaussian array.
inline DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dim, rank, rng);
}

inline Operator random_unitary(std::size_t dim, Rng& rng) {
    if (dim == 0) throw std::invalid_argument("random_unitary: dimension must be positive");
    const Operator z = gaussian_matrix(dim, dim, rng);
    Eigen::HouseholderQR<Operator> qr(z);
    Operator q = qr.householderQ() * Operator::Identity(z.rows(), z.cols());
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix phases so that R has a positive real diagonal
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const complex rkk = r(k, k);
        const double mag = std::abs(rkk);
        if (mag > 0.0) q.col(k) *= rkk / mag;
    }
    return q;
}

/// Q factor of a complex Gaussian array, phases fixed so R has a positive diagonal.
inline Operator random_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(dim, rng);
}

inline Ket random_ket(std::size_t dim, Rng& rng) {
    return gaussian_matrix(dim, 1, rng).col(0).normalized();
}

/// Probability vector drawn uniformly from the simplex.
inline std::vector<double> random_probabilities(std::size_t n, Rng& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& x : p) sum += (x = expo(rng));
    for (auto& x : p) x /= sum;
    return p;
}

/// Ensemble of `members` random states of rank 1..max_rank on `dim`.
inline Ensemble random_ensemble(std::size_t dim, std::size_t members, std::size_t max_rank, Rng& rng) {
    if (max_rank == 0 || max_rank > dim) throw std::invalid_argument("random_ensemble: need 1 <= max_rank <= dim");
    auto probs = random_probabilities(members, rng);
    std::vector<DensityOperator> states;
    std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
    for (std::size_t i = 0; i < members; ++i) states.push_back(random_density(dim, rank_dist(rng), rng));
    return Ensemble(std::move(probs), std::move(states));
}

inline Ensemble random_pure_ensemble(std::size_t dim, std::size_t members, Rng& rng) {
    return random_ensemble(dim, members, 1, rng);
}

/// Ensemble of states diagonal in the computational basis.
inline Ensemble random_diagonal_ensemble(std::size_t dim, std::size_t members, Rng& rng) {
    auto probs = random_probabilities(members, rng);
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < members; ++i) {
        const auto diag = random_probabilities(dim, rng);
        Operator rho = Operator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t k = 0; k < dim; ++k) rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = diag[k];
        states.push_back(DensityOperator::trusted(std::move(rho)));
    }
    return Ensemble(std::move(probs), std::move(states));
}

/// Random full-rank state on the given layout.
inline MultipartiteState random_multipartite(const SubsystemLayout& layout, Rng& rng) {
    const auto n = layout.total_dim();
    return MultipartiteState(random_density(n, n, rng), layout);
}

}  // namespace kholevo
