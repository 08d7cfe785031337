#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/enhancement.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/rng.hpp"

namespace qcoh {

/// Pure-state ensemble {p_i, |psi_i>} realizing some density matrix.
struct Ensemble {
    std::vector<double> weights;
    std::vector<std::vector<Complex>> states;

    Matrix mixture() const {
        const std::size_t d = states.front().size();
        Matrix m(d);
        for (std::size_t k = 0; k < weights.size(); ++k)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    m(i, j) += weights[k] * states[k][i] * std::conj(states[k][j]);
        return m;
    }

    /// Normalized weight on members whose projector carries off-diagonal
    /// mass above 1e-10 (the band below counts as incoherent, which biases
    /// the value downward, the safe direction for an upper bound). The
    /// ratio form keeps the all-coherent and all-incoherent endpoints
    /// exactly 1 and 0.
    double coherent_mass() const {
        double coherent = 0.0, incoherent = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            const auto& v = states[k];
            double off = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    if (i != j) off += std::abs(v[i] * std::conj(v[j]));
            (off > tol::kIncoherent ? coherent : incoherent) += weights[k];
        }
        if (coherent == 0.0) return 0.0;
        return coherent / (coherent + incoherent);
    }
};

/// Exhaustive grid check of the coherent weight for qubits: scans diagonal
/// subtractions (d0, d1) on a lattice of the given step, keeping rho - D
/// positive semidefinite by the 2x2 trace/determinant test, and returns
/// 1 - max(d0 + d1). Accurate to O(step).
inline double cw_grid_oracle_qubit(const DensityMatrix& rho, double step) {
    if (rho.dim() != 2) throw WrongDimensionError("cw_grid_oracle_qubit: qubit states only");
    if (!(step > 0.0) || step > 1e-3) throw Error("cw_grid_oracle_qubit: step must be in (0, 1e-3]");
    const double p0 = rho(0, 0).real();
    const double p1 = rho(1, 1).real();
    const double off2 = std::norm(rho(0, 1));
    constexpr double slack = 1e-12;

    double best = 0.0;
    for (double d0 = 0.0; d0 <= p0 + slack; d0 += step) {
        const double a = p0 - d0;
        if (a < -slack) break;
        // For fixed d0 feasibility is monotone in d1, so stop at first failure.
        for (double d1 = 0.0; d1 <= p1 + slack; d1 += step) {
            const double b = p1 - d1;
            if (b < -slack || a * b - off2 < -slack) break;
            best = std::max(best, d0 + d1);
        }
    }
    return 1.0 - best;
}

namespace detail {

/// Ensemble of rho from a k x k unitary mixing of its square-root
/// decomposition (Schrodinger-HJW): member j is sum_m U*_jm sqrt(l_m) |v_m>.
inline Ensemble mixed_ensemble(const EigenDecomposition& eig,
                               const std::vector<std::size_t>& support, const Matrix& u) {
    const std::size_t d = eig.eigenvectors.dim();
    const std::size_t k = u.dim();
    Ensemble e;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<Complex> v(d, Complex{0.0, 0.0});
        for (std::size_t m = 0; m < support.size() && m < k; ++m) {
            const Complex amp = std::conj(u(j, m)) * std::sqrt(eig.eigenvalues[support[m]]);
            for (std::size_t i = 0; i < d; ++i) v[i] += amp * eig.eigenvectors(i, support[m]);
        }
        double w = 0.0;
        for (const Complex& z : v) w += std::norm(z);
        if (w <= 1e-30) continue;
        const double inv = 1.0 / std::sqrt(w);
        for (Complex& z : v) z *= inv;
        e.weights.push_back(w);
        e.states.push_back(std::move(v));
    }
    return e;
}

}  // namespace detail

/// Random search over pure-state ensembles of rho for the one with the
/// least coherent mass, an upper bound on the Boolean coherence measure.
/// Trials alternate Haar-random mixings of the eigen-decomposition with
/// basis-pinned ensembles (a feasible diagonal subtraction plus the
/// eigenvectors of the remainder), which is the arm that can actually
/// shed coherent weight.
inline double cb_ensemble_oracle(const DensityMatrix& rho, std::size_t n_trials,
                                 std::uint64_t seed) {
    if (rho.dim() > 3) throw Error("cb_ensemble_oracle: dimensions above 3 unsupported");
    if (n_trials < 1000) throw Error("cb_ensemble_oracle: need at least 1000 trials");
    const std::size_t d = rho.dim();
    const std::size_t k = d * d;
    Rng rng(seed);

    const EigenDecomposition eig = hermitian_eig(rho.matrix());
    std::vector<std::size_t> support;
    for (std::size_t m = 0; m < d; ++m)
        if (eig.eigenvalues[m] > tol::kZeroDiag) support.push_back(m);

    // Trial zero: the eigen-decomposition itself.
    Ensemble base;
    for (std::size_t m : support) {
        std::vector<Complex> v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = eig.eigenvectors(i, m);
        base.weights.push_back(eig.eigenvalues[m]);
        base.states.push_back(std::move(v));
    }
    double best = base.coherent_mass();

    for (std::size_t t = 1; t < n_trials && best > 0.0; ++t) {
        if (t % 2 == 1) {
            const Matrix u = haar_unitary(k, rng);
            best = std::min(best, detail::mixed_ensemble(eig, support, u).coherent_mass());
            continue;
        }
        // Basis-pinned arm: scale a random diagonal subtraction to the
        // positivity boundary and decompose the remainder spectrally.
        Matrix dm(d);
        for (std::size_t i = 0; i < d; ++i) dm(i, i) = rng.uniform01() * rho(i, i).real();
        double lo = 0.0, hi = 1.0;
        if (hermitian_eig(rho.matrix() - dm).min() >= 0.0) {
            lo = 1.0;
        } else {
            for (int it = 0; it < 30; ++it) {
                const double mid = 0.5 * (lo + hi);
                (hermitian_eig(rho.matrix() - mid * dm).min() >= 0.0 ? lo : hi) = mid;
            }
        }
        if (lo <= 0.0) continue;
        const Matrix rem = rho.matrix() - lo * dm;
        const EigenDecomposition re = hermitian_eig(hermitian_part(rem));
        Ensemble e;
        for (std::size_t i = 0; i < d; ++i) {
            const double w = lo * dm(i, i).real();
            if (w <= 0.0) continue;
            std::vector<Complex> basis(d, Complex{0.0, 0.0});
            basis[i] = 1.0;
            e.weights.push_back(w);
            e.states.push_back(std::move(basis));
        }
        for (std::size_t m = 0; m < d; ++m) {
            if (re.eigenvalues[m] <= tol::kZeroDiag) continue;
            std::vector<Complex> v(d);
            for (std::size_t i = 0; i < d; ++i) v[i] = re.eigenvectors(i, m);
            e.weights.push_back(re.eigenvalues[m]);
            e.states.push_back(std::move(v));
        }
        best = std::min(best, e.coherent_mass());
    }
    return best;
}

/// Best post-selected l1 coherence found over random stochastic SIOs.
/// The identity channel is always candidate zero, and even trials use a
/// pure diagonal filter (the family the optimum belongs to), so the sweep
/// approaches the ceiling from below as channels accumulate.
inline double ssio_sweep(const DensityMatrix& rho, std::size_t n_channels, std::uint64_t seed) {
    const double cl1 = c_l1(rho);
    if (cl1 <= tol::kIncoherent)
        throw IncoherentInputError("ssio_sweep: state carries no coherence");
    const std::size_t d = rho.dim();
    Rng rng(seed);

    double best = cl1;  // identity channel
    for (std::size_t t = 1; t < n_channels; ++t) {
        StochasticSIO channel = [&] {
            if (t % 2 == 0) {
                Matrix k(d);
                for (std::size_t i = 0; i < d; ++i) k(i, i) = rng.uniform01();
                return StochasticSIO({KrausOperator(k)});
            }
            const std::size_t nk = 1 + rng.index(d);
            return random_ssio(d, nk, rng.fork());
        }();
        try {
            const auto [out, p] = apply_ssio(channel, rho);
            best = std::max(best, c_l1(out));
        } catch (const ZeroProbabilityError&) {
            // dead filter for this state; skip
        }
    }
    return best;
}

/// Random state satisfying the stuck-coherence condition
/// rho_ii = sum_{n != i} |rho_in| / C_l1 exactly: the diagonal is derived
/// from a random dense off-diagonal pattern (the identity is scale
/// invariant), and the pattern is scaled partway to the positivity
/// boundary. All populations and the total coherence stay well away from
/// zero so the condition is numerically crisp.
inline DensityMatrix make_stuck_state(std::size_t dim, Rng& rng) {
    if (dim < 2) throw Error("make_stuck_state: dim must be at least 2");
    for (;;) {
        Matrix z(dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j) {
                Complex e = rng.complex_normal();
                while (std::abs(e) < 0.05) e = rng.complex_normal();
                z(i, j) = e;
                z(j, i) = std::conj(e);
            }
        std::vector<double> row(dim, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                if (i != j) row[i] += std::abs(z(i, j));
            total += row[i];
        }
        bool thin = false;
        for (std::size_t i = 0; i < dim; ++i)
            if (row[i] / total < 0.06) thin = true;
        if (thin) continue;

        Matrix base(dim);
        for (std::size_t i = 0; i < dim; ++i) base(i, i) = row[i] / total;

        // Largest admissible off-diagonal scale; min eigenvalue is concave
        // in the scale, so plain bisection brackets the boundary.
        double hi = 1.0;
        while (hermitian_eig(base + hi * z).min() > 0.0 && hi < 1024.0) hi *= 2.0;
        double lo = 0.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (hermitian_eig(base + mid * z).min() > 0.0 ? lo : hi) = mid;
        }
        const double t = 0.55 * lo;
        const DensityMatrix rho{hermitian_part(base + t * z)};
        if (c_l1(rho) < 0.1) continue;
        return rho;
    }
}

/// Shifts population between two levels of a stuck-coherence state, which
/// moves the condition residual to about `residual` while leaving the
/// off-diagonal pattern (and hence C_l1) untouched.
inline DensityMatrix perturb_stuck_state(const DensityMatrix& rho, double residual, Rng& rng) {
    const std::size_t d = rho.dim();
    for (int attempt = 0; attempt < 64; ++attempt) {
        const std::size_t a = rng.index(d);
        std::size_t b = rng.index(d);
        if (a == b) continue;
        Matrix m = rho.matrix();
        m(a, a) += residual;
        m(b, b) -= residual;
        if (m(b, b).real() <= 0.01) continue;
        if (hermitian_eig(m).min() <= 1e-6) continue;
        return DensityMatrix(m);
    }
    throw Error("perturb_stuck_state: could not place the perturbation");
}

}  // namespace qcoh
