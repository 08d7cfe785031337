#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "qcoh/errors.hpp"

namespace qcoh {

using Complex = std::complex<double>;

/// Dense complex square matrix, row-major, sized for dimensions up to ~16.
/// Entries are validated to be finite on construction from data.
class Matrix {
  public:
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, Complex{0.0, 0.0}) {
        if (dim == 0) throw Error("Matrix: dimension must be positive");
    }

    Matrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), a_(std::move(entries)) {
        if (dim == 0) throw Error("Matrix: dimension must be positive");
        if (a_.size() != dim * dim) throw Error("Matrix: entry count does not match dimension");
        for (const Complex& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw Error("Matrix: non-finite entry");
    }

    /// Row-of-rows construction, mainly for literals in tests and examples.
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : Matrix(rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) throw Error("Matrix: ragged initializer");
            std::size_t j = 0;
            for (const Complex& z : row) {
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                    throw Error("Matrix: non-finite entry");
                a_[i * dim_ + j] = z;
                ++j;
            }
            ++i;
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<Complex>& data() const { return a_; }

  private:
    std::size_t dim_;
    std::vector<Complex> a_;
};

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw Error("Matrix: dimension mismatch");
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw Error("Matrix: dimension mismatch");
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw Error("Matrix: dimension mismatch");
    const std::size_t n = a.dim();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline Matrix operator*(Complex s, const Matrix& a) {
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = s * a(i, j);
    return c;
}

inline Matrix operator*(double s, const Matrix& a) { return Complex{s, 0.0} * a; }

inline Matrix adjoint(const Matrix& a) {
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::conj(a(j, i));
    return c;
}

inline Complex trace(const Matrix& a) {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (const Complex& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw Error("Matrix: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

/// Largest deviation from Hermitian symmetry, max_ij |a_ij - conj(a_ji)|.
inline double hermiticity_defect(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

/// (A + A†)/2, used to clean round-off after channel application.
inline Matrix hermitian_part(const Matrix& a) {
    Matrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            c(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return c;
}

/// Sum of |a_ij| over i != j.
inline double offdiag_abs_sum(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::abs(a(i, j));
    return s;
}

inline double max_offdiag_abs(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

/// Cholesky factorization A = L L† for Hermitian positive-definite A.
/// Returns the lower factor, or nullopt as soon as a pivot drops to or
/// below `pivot_floor` (which doubles as the positive-definiteness test).
inline std::optional<Matrix> try_cholesky(const Matrix& a, double pivot_floor = 0.0) {
    const std::size_t n = a.dim();
    Matrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > pivot_floor)) return std::nullopt;
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / ljj;
        }
    }
    return l;
}

/// Solves L y = b by forward substitution (L lower triangular).
inline std::vector<Complex> forward_solve(const Matrix& l, const std::vector<Complex>& b) {
    const std::size_t n = l.dim();
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    return y;
}

/// Solves L† x = y by backward substitution (L lower triangular).
inline std::vector<Complex> backward_solve(const Matrix& l, const std::vector<Complex>& y) {
    const std::size_t n = l.dim();
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

/// Solves A x = b for Hermitian positive-definite A via Cholesky.
inline std::optional<std::vector<Complex>> solve_pd(const Matrix& a,
                                                    const std::vector<Complex>& b) {
    const auto l = try_cholesky(a);
    if (!l) return std::nullopt;
    return backward_solve(*l, forward_solve(*l, b));
}

}  // namespace qcoh
