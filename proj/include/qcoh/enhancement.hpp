#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

namespace detail {
constexpr double kKrausEntry = 1e-12;       // entries above this count as structure
constexpr double kSubNormSlack = 1e-10;     // allowed excess of sum K'K over I
constexpr double kEnhanceDecision = 1e-9;   // ceiling must beat c_l1 by this margin
}  // namespace detail

/// Kraus operator of a strictly incoherent operation: at most one entry
/// above threshold in every row and in every column, so both K I K† and
/// K† I K stay inside the incoherent set.
class KrausOperator {
  public:
    explicit KrausOperator(const Matrix& m) : m_(m) {
        for (std::size_t i = 0; i < m.dim(); ++i) {
            std::size_t in_row = 0, in_col = 0;
            for (std::size_t j = 0; j < m.dim(); ++j) {
                if (std::abs(m(i, j)) > detail::kKrausEntry) ++in_row;
                if (std::abs(m(j, i)) > detail::kKrausEntry) ++in_col;
            }
            if (in_row > 1)
                throw InvalidKrausError("Kraus operator has two entries in one row");
            if (in_col > 1)
                throw InvalidKrausError("Kraus operator has two entries in one column");
        }
    }

    const Matrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }

  private:
    Matrix m_;
};

/// Sub-normalized collection {K_1, ..., K_L} of strictly incoherent Kraus
/// operators: sum K_n† K_n <= I within 1e-10, defining the post-selected
/// channel rho -> sum K_n rho K_n† / tr(...).
class StochasticSIO {
  public:
    explicit StochasticSIO(std::vector<KrausOperator> kraus) : kraus_(std::move(kraus)) {
        if (kraus_.empty()) throw InvalidChannelError("stochastic SIO needs at least one Kraus");
        const std::size_t d = kraus_.front().dim();
        Matrix s(d);
        for (const KrausOperator& k : kraus_) {
            if (k.dim() != d) throw InvalidChannelError("Kraus dimensions disagree");
            s = s + adjoint(k.matrix()) * k.matrix();
        }
        const double excess = hermitian_eig(hermitian_part(s)).max() - 1.0;
        if (excess > detail::kSubNormSlack)
            throw InvalidChannelError("Kraus collection violates sub-normalization");
    }

    const std::vector<KrausOperator>& kraus() const { return kraus_; }
    std::size_t dim() const { return kraus_.front().dim(); }

  private:
    std::vector<KrausOperator> kraus_;
};

/// Outcome of the enhancement no-go test on one state.
struct EnhancementReport {
    double c_l1_in;
    double lambda_max;           // top eigenvalue of rho_d^{-1/2} |rho| rho_d^{-1/2}
    double ceiling;              // lambda_max - 1, the best l1 coherence any sSIO reaches
    bool enhanceable;
    double condition_residual;   // max_i |rho_ii - sum_{n != i} |rho_in| / C_l1|
    std::optional<StochasticSIO> witness;  // populated when enhanceable
};

/// The matrix rho_d^{-1/2} |rho| rho_d^{-1/2}: real symmetric, entrywise
/// non-negative, with unit diagonal on every populated row.
inline Matrix m_matrix(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    std::vector<double> b(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double p = rho(i, i).real();
        b[i] = (p > tol::kZeroDiag) ? 1.0 / std::sqrt(p) : 0.0;
    }
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = std::abs(rho(i, j)) * b[i] * b[j];
    return m;
}

namespace detail {

inline void require_coherent(double cl1) {
    if (cl1 <= tol::kIncoherent)
        throw IncoherentInputError("state is incoherent; enhancement analysis is vacuous");
}

inline void require_populated_rows(const DensityMatrix& rho) {
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if (rho(i, i).real() > tol::kZeroDiag) continue;
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j && std::abs(rho(i, j)) > tol::kIncoherent)
                throw ZeroPopulationError("zero population on a row carrying coherence");
    }
}

}  // namespace detail

/// Largest l1 coherence reachable from rho by any stochastic SIO:
/// lambda_max(rho_d^{-1/2} |rho| rho_d^{-1/2}) - 1. Never below c_l1(rho).
inline double enhancement_ceiling(const DensityMatrix& rho) {
    detail::require_coherent(c_l1(rho));
    detail::require_populated_rows(rho);
    return hermitian_eig(m_matrix(rho)).max() - 1.0;
}

/// Single diagonal Kraus filter attaining the enhancement ceiling. Its
/// amplitudes are x_i / sqrt(rho_ii) for the principal eigenvector x of
/// the m-matrix, rescaled so the largest amplitude is 1.
inline StochasticSIO optimal_kraus(const DensityMatrix& rho) {
    detail::require_coherent(c_l1(rho));
    detail::require_populated_rows(rho);
    const std::size_t d = rho.dim();
    const EigenDecomposition eig = hermitian_eig(m_matrix(rho));

    std::vector<double> c(d, 0.0);
    double cmax = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double p = rho(i, i).real();
        if (p <= tol::kZeroDiag) continue;  // dead level, filtered out
        // The principal eigenvector of an entrywise non-negative symmetric
        // matrix can be taken non-negative; |.| folds away the sign noise.
        c[i] = std::abs(eig.eigenvectors(i, d - 1)) / std::sqrt(p);
        cmax = std::max(cmax, c[i]);
    }
    Matrix k(d);
    for (std::size_t i = 0; i < d; ++i) k(i, i) = c[i] / cmax;
    return StochasticSIO({KrausOperator(k)});
}

/// Applies the post-selected channel and returns the renormalized output
/// together with the success probability p = tr sum K_n rho K_n†.
inline std::pair<DensityMatrix, double> apply_ssio(const StochasticSIO& channel,
                                                   const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) throw Error("apply_ssio: dimension mismatch");
    Matrix s(rho.dim());
    for (const KrausOperator& k : channel.kraus())
        s = s + k.matrix() * rho.matrix() * adjoint(k.matrix());
    const double p = trace(s).real();
    if (p <= 1e-14)
        throw ZeroProbabilityError("post-selection never succeeds on this state");
    const Matrix out = hermitian_part((1.0 / p) * s);
    return {DensityMatrix(out), std::min(p, 1.0)};
}

/// Decides enhanceability from the exact population condition
/// rho_ii = sum_{n != i} |rho_in| / C_l1(rho): the state is stuck at its
/// current coherence iff every row satisfies it. The spectral route
/// (ceiling vs c_l1) is recomputed as a cross-check; the two can only
/// disagree through numerical failure, which raises VerdictMismatch.
inline EnhancementReport enhancement_check(const DensityMatrix& rho, double tolerance) {
    if (!(tolerance > 0.0)) throw Error("enhancement_check: tolerance must be positive");
    const double cl1 = c_l1(rho);
    detail::require_coherent(cl1);
    detail::require_populated_rows(rho);
    const std::size_t d = rho.dim();

    double residual = 0.0;
    double min_pop = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) row += std::abs(rho(i, j));
        residual = std::max(residual, std::abs(rho(i, i).real() - row / cl1));
        if (rho(i, i).real() > tol::kZeroDiag) min_pop = std::min(min_pop, rho(i, i).real());
    }

    const double lambda_max = hermitian_eig(m_matrix(rho)).max();
    const double ceiling = lambda_max - 1.0;
    const double gap = ceiling - cl1;
    const bool enhanceable = residual > tolerance;

    // The vector of square-root populations always gives Rayleigh quotient
    // 1 + C_l1, so the ceiling can never drop below c_l1.
    if (gap < -detail::kEnhanceDecision * std::max(1.0, cl1))
        throw VerdictMismatchError("ceiling fell below c_l1: eigensolver failure");
    // When the condition holds within the tolerance, a Collatz-Wielandt
    // bound caps the gap at C_l1 * tolerance / min population.
    if (!enhanceable && gap > cl1 * tolerance / min_pop + detail::kEnhanceDecision)
        throw VerdictMismatchError("residual says stuck but the spectral gap is large");

    std::optional<StochasticSIO> witness;
    if (enhanceable) witness = optimal_kraus(rho);
    return {cl1, lambda_max, ceiling, enhanceable, residual, std::move(witness)};
}

/// Random sub-normalized strictly incoherent channel: each Kraus is a
/// permutation pattern with random complex amplitudes; the collection is
/// rescaled so the largest eigenvalue of sum K†K is exactly 1.
inline StochasticSIO random_ssio(std::size_t dim, std::size_t n_kraus, std::uint64_t seed) {
    if (dim < 2) throw Error("random_ssio: dim must be at least 2");
    if (n_kraus < 1 || n_kraus > dim * dim)
        throw Error("random_ssio: n_kraus must lie in [1, dim^2]");
    Rng rng(seed);

    std::vector<Matrix> ks(n_kraus, Matrix(dim));
    std::vector<double> colsum(dim, 0.0);
    for (Matrix& k : ks) {
        const std::vector<std::size_t> perm = rng.permutation(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const double mag = rng.uniform01();
            k(perm[i], i) = mag * rng.unit_phase();
            colsum[i] += mag * mag;
        }
    }
    const double scale = 1.0 / std::sqrt(*std::max_element(colsum.begin(), colsum.end()));
    std::vector<KrausOperator> out;
    out.reserve(n_kraus);
    for (Matrix& k : ks) out.emplace_back(scale * k);
    return StochasticSIO(std::move(out));
}

/// Random trace-preserving SIO (sum K†K = I): per column the squared
/// amplitudes across the Kraus set are a random point on the simplex.
inline StochasticSIO random_full_sio(std::size_t dim, std::size_t n_kraus, std::uint64_t seed) {
    if (dim < 2) throw Error("random_full_sio: dim must be at least 2");
    if (n_kraus < 1 || n_kraus > dim * dim)
        throw Error("random_full_sio: n_kraus must lie in [1, dim^2]");
    Rng rng(seed);

    std::vector<Matrix> ks(n_kraus, Matrix(dim));
    std::vector<std::vector<std::size_t>> perms;
    perms.reserve(n_kraus);
    for (std::size_t n = 0; n < n_kraus; ++n) perms.push_back(rng.permutation(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> w(n_kraus);
        double total = 0.0;
        for (double& x : w) {
            x = -std::log(rng.uniform01());
            total += x;
        }
        for (std::size_t n = 0; n < n_kraus; ++n)
            ks[n](perms[n][i], i) = std::sqrt(w[n] / total) * rng.unit_phase();
    }
    std::vector<KrausOperator> out;
    out.reserve(n_kraus);
    for (Matrix& k : ks) out.emplace_back(k);
    return StochasticSIO(std::move(out));
}

}  // namespace qcoh
