#pragma once

#include <cmath>
#include <vector>

#include "qcoh/density.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

/// Haar-random unitary: QR factorization of a complex Ginibre matrix with
/// the R diagonal kept positive (modified Gram-Schmidt, re-orthogonalized).
inline Matrix haar_unitary(std::size_t dim, Rng& rng) {
    Matrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();

    Matrix q(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<Complex> v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = g(i, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * v[i];
                for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q(i, k);
            }
        }
        double norm = 0.0;
        for (const Complex& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < dim; ++i) q(i, j) = v[i] / norm;
    }
    return q;
}

/// Random unit vector in C^dim.
inline std::vector<Complex> random_pure_vector(std::size_t dim, Rng& rng) {
    std::vector<Complex> v(dim);
    double norm = 0.0;
    for (Complex& z : v) {
        z = rng.complex_normal();
        norm += std::norm(z);
    }
    norm = std::sqrt(norm);
    for (Complex& z : v) z /= norm;
    return v;
}

/// Random density matrix of the given rank: Haar-random eigenvectors with
/// Dirichlet(1,...,1) eigenvalues on the first `rank` of them.
inline DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
    if (rank == 0 || rank > dim)
        throw Error("random_density: rank must be in [1, dim]");
    const Matrix u = haar_unitary(dim, rng);
    std::vector<double> w(rank);
    double total = 0.0;
    for (double& x : w) {
        x = -std::log(rng.uniform01());
        total += x;
    }
    Matrix m(dim);
    for (std::size_t k = 0; k < rank; ++k) {
        const double wk = w[k] / total;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                m(i, j) += wk * u(i, k) * std::conj(u(j, k));
    }
    return DensityMatrix(hermitian_part(m));
}

inline DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(dim, rank, rng);
}

}  // namespace qcoh
