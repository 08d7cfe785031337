#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcoh/matrix.hpp"

namespace qcoh {

/// Spectral decomposition A = V diag(eigenvalues) V† with eigenvalues
/// ascending and V unitary (columns are the eigenvectors).
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

namespace detail {

constexpr double kHermitianTol = 1e-12;
constexpr double kOffdiagConvergence = 1e-14;
constexpr int kMaxSweeps = 100;

inline double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace detail

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation annihilates one off-diagonal pair (p, q) with the unitary
/// plane rotation U_pp = c, U_pq = -s e^{i b}, U_qp = s e^{-i b}, U_qq = c,
/// where b is the phase of a_pq and tan(2 theta) = 2|a_pq| / (a_pp - a_qq).
/// Sweeps stop when the off-diagonal Frobenius mass falls below 1e-14
/// (relative to the matrix scale); the sweep cap is 100.
inline EigenDecomposition hermitian_eig(const Matrix& input) {
    const std::size_t n = input.dim();
    if (hermiticity_defect(input) > detail::kHermitianTol)
        throw NotHermitianError("hermitian_eig: matrix is not Hermitian within 1e-12");

    Matrix a = hermitian_part(input);
    Matrix v = Matrix::identity(n);

    const double scale = std::max(1.0, frobenius_norm(a));
    const double stop = detail::kOffdiagConvergence * scale;
    const double skip = 1e-18 * scale;

    bool converged = (n == 1) || detail::offdiag_frobenius(a) < stop;
    for (int sweep = 0; sweep < detail::kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= skip) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const Complex phase = apq / r;  // e^{i b}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();

                // t = tan(theta) from tan(2 theta) = 2r / (app - aqq),
                // smaller-angle root for stability.
                const double eta = (app - aqq) / (2.0 * r);
                double t;
                if (eta >= 0.0)
                    t = 1.0 / (eta + std::sqrt(eta * eta + 1.0));
                else
                    t = -1.0 / (-eta + std::sqrt(eta * eta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex sp = s * phase;        // s e^{i b}
                const Complex spc = std::conj(sp);   // s e^{-i b}

                // A <- U† A U, touching rows/columns p and q only.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + spc * akq;
                    a(k, q) = -sp * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + sp * aqk;
                    a(q, k) = -spc * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp + spc * vkq;
                    v(k, q) = -sp * vkp + c * vkq;
                }
            }
        }
        converged = detail::offdiag_frobenius(a) < stop;
    }
    if (!converged)
        throw NoConvergenceError("hermitian_eig: no convergence within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), Matrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const Matrix& a) { return hermitian_eig(a).min(); }

}  // namespace qcoh
