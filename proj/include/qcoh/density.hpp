#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "qcoh/eig.hpp"
#include "qcoh/matrix.hpp"

namespace qcoh {

namespace tol {

// Density-matrix admission tolerances.
constexpr double kHermitian = 1e-12;
constexpr double kTrace = 1e-12;
constexpr double kPsdMinEig = -1e-10;

// Diagonal entries at or below this count as zero populations (the
// rho_d^{-1/2} convention maps them to 0 instead of diverging).
constexpr double kZeroDiag = 1e-12;

// Coherence below this counts as incoherent.
constexpr double kIncoherent = 1e-10;

}  // namespace tol

/// Validated quantum state: Hermitian within 1e-12 entrywise, unit trace
/// within 1e-12, and positive semidefinite with min eigenvalue >= -1e-10
/// (slack for states produced by channel application round-off).
class DensityMatrix {
  public:
    explicit DensityMatrix(const Matrix& m) : m_(m) {
        const double herm = hermiticity_defect(m);
        if (herm > tol::kHermitian) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "density matrix violates hermiticity: defect %.3e > 1e-12", herm);
            throw InvalidDensityMatrixError(buf);
        }
        const double tr = trace(m).real();
        if (std::abs(tr - 1.0) > tol::kTrace) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "density matrix violates unit trace: |tr - 1| = %.3e > 1e-12",
                          std::abs(tr - 1.0));
            throw InvalidDensityMatrixError(buf);
        }
        const double lmin = hermitian_eig(m).min();
        if (lmin < tol::kPsdMinEig) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "density matrix violates positivity: min eigenvalue %.3e < -1e-10",
                          lmin);
            throw InvalidDensityMatrixError(buf);
        }
    }

    DensityMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : DensityMatrix(Matrix(rows)) {}

    static DensityMatrix maximally_mixed(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
        return DensityMatrix(m);
    }

    std::size_t dim() const { return m_.dim(); }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& matrix() const { return m_; }

  private:
    Matrix m_;
};

/// Entrywise modulus |A|, i.e. |A|_ij = |a_ij| (real, non-negative).
inline Matrix entrywise_abs(const Matrix& a) {
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::abs(a(i, j));
    return c;
}

/// Diagonal part rho_d of a state: diagonal copied, off-diagonal exactly zero.
inline Matrix diag_part(const DensityMatrix& rho) {
    Matrix c(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) c(i, i) = rho(i, i);
    return c;
}

/// Diagonal matrix with entries rho_ii^{-1/2}, with zero populations mapped
/// to 0 rather than infinity.
inline Matrix diag_inv_sqrt(const DensityMatrix& rho) {
    Matrix c(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        const double p = rho(i, i).real();
        c(i, i) = (p > tol::kZeroDiag) ? 1.0 / std::sqrt(p) : 0.0;
    }
    return c;
}

}  // namespace qcoh
