#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/matrix.hpp"

namespace qcoh {

/// l1-norm of coherence: sum of moduli of all off-diagonal entries.
inline double c_l1(const DensityMatrix& rho) { return offdiag_abs_sum(rho.matrix()); }

/// Optimal split rho = (1-gamma) sigma + gamma tau with sigma incoherent
/// and gamma minimal. sigma is meaningful only when gamma < 1 and tau only
/// when gamma > 0; the *_used flags mark the degenerate ends.
struct CoherentWeightResult {
    double gamma;
    DensityMatrix sigma;
    DensityMatrix tau;
    bool sigma_used;
    bool tau_used;
    int iterations;
};

namespace detail {

constexpr double kSupportEig = 1e-10;     // eigenvalues above this span the support
constexpr double kInRange = 1e-13;        // 1 - |P e_i|^2 below this puts e_i in range
constexpr int kCycleBudget = 500;

/// State of the reduced trace-maximization problem
///   maximize sum_i d_i   s.t.   A0 - sum_i d_i w_i w_i' >= 0,  d_i >= 0,
/// where A0 is rho restricted to its support and w_i are the coordinates
/// of the basis vectors that lie inside the support.
struct ReducedProblem {
    std::size_t r = 0;                       // support dimension
    Matrix a0{1};                            // r x r, positive definite
    std::vector<std::size_t> coords;         // original indices i with e_i in range
    std::vector<std::vector<Complex>> w;     // one r-vector per coord
};

inline ReducedProblem reduce_support(const DensityMatrix& rho, const EigenDecomposition& eig) {
    const std::size_t d = rho.dim();
    ReducedProblem p;

    std::vector<std::size_t> sup;
    for (std::size_t k = 0; k < d; ++k)
        if (eig.eigenvalues[k] > kSupportEig) sup.push_back(k);
    p.r = sup.size();

    if (p.r == d) {
        // Full rank: work directly in the computational basis.
        p.a0 = rho.matrix();
        p.coords.resize(d);
        p.w.assign(d, std::vector<Complex>(d, Complex{0.0, 0.0}));
        for (std::size_t i = 0; i < d; ++i) {
            p.coords[i] = i;
            p.w[i][i] = 1.0;
        }
        return p;
    }

    p.a0 = Matrix(p.r);
    for (std::size_t k = 0; k < p.r; ++k) p.a0(k, k) = eig.eigenvalues[sup[k]];
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Complex> wi(p.r);
        double norm2 = 0.0;
        for (std::size_t k = 0; k < p.r; ++k) {
            wi[k] = std::conj(eig.eigenvectors(i, sup[k]));
            norm2 += std::norm(wi[k]);
        }
        if (1.0 - norm2 <= kInRange) {
            p.coords.push_back(i);
            p.w.push_back(std::move(wi));
        }
    }
    return p;
}

inline void add_rank_one(Matrix& a, const std::vector<Complex>& w, double t) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) += t * w[i] * std::conj(w[j]);
}

}  // namespace detail

/// Coherent weight: the least gamma >= 0 such that rho splits as
/// (1-gamma) sigma + gamma tau with sigma incoherent. Equivalently
/// gamma = 1 - max{tr D : D diagonal, D >= 0, rho - D >= 0}.
///
/// The maximization is solved by log-det barrier path following: each
/// barrier stage runs one cyclic pass of exact single-coordinate
/// maximizers followed by projected Newton steps, all strictly feasible.
/// At a stage fixed point the scaled inverse mu (rho - D)^{-1} is a dual
/// certificate, so the remaining gap is mu times the support dimension;
/// the final mu puts that gap below tol/10, and gamma always lands on or
/// above the true value.
inline CoherentWeightResult coherent_weight(const DensityMatrix& rho, double tol = 1e-8) {
    if (!(tol > 0.0) || tol > 1e-2)
        throw Error("coherent_weight: tol must lie in (0, 1e-2]");
    const std::size_t d = rho.dim();

    // Diagonal input: nothing to optimize.
    if (offdiag_abs_sum(rho.matrix()) <= 1e-14)
        return {0.0, rho, rho, true, false, 0};

    const EigenDecomposition eig = hermitian_eig(rho.matrix());
    const detail::ReducedProblem prob = detail::reduce_support(rho, eig);
    const std::size_t nc = prob.coords.size();

    std::vector<double> dvals(nc, 0.0);
    int cycles = 0;

    const auto build_a = [&](const std::vector<double>& dv) {
        Matrix a = prob.a0;
        for (std::size_t i = 0; i < nc; ++i)
            if (dv[i] != 0.0) detail::add_rank_one(a, prob.w[i], -dv[i]);
        return a;
    };
    const auto barrier_value = [&](const Matrix& chol_l, const std::vector<double>& dv,
                                   double mu) {
        double f = 0.0;
        for (double x : dv) f += x;
        for (std::size_t k = 0; k < prob.r; ++k)
            f += 2.0 * mu * std::log(chol_l(k, k).real());
        return f;
    };
    const auto spend_cycle = [&] {
        if (++cycles > detail::kCycleBudget)
            throw NotConvergedError("coherent_weight: cycle budget exceeded");
    };

    if (nc > 0) {
        const double mu_end =
            std::max(std::min(tol, 1e-7) / (10.0 * static_cast<double>(prob.r)), 1e-13);
        for (double mu = 0.25; ; mu *= 0.05) {
            mu = std::max(mu, mu_end);

            // One cyclic pass of the exact single-coordinate maximizer: the
            // rank-one structure turns the barrier term into log(1 - t g),
            // so the update is closed-form. This pulls coordinates off zero
            // and gives Newton a centered start.
            spend_cycle();
            Matrix a = build_a(dvals);
            for (std::size_t i = 0; i < nc; ++i) {
                detail::add_rank_one(a, prob.w[i], dvals[i]);
                const auto chol = try_cholesky(a);
                if (!chol) {  // only severe round-off can land here
                    detail::add_rank_one(a, prob.w[i], -dvals[i]);
                    continue;
                }
                const std::vector<Complex> y = forward_solve(*chol, prob.w[i]);
                double g0 = 0.0;
                for (const Complex& z : y) g0 += std::norm(z);
                const double t = std::max(0.0, 1.0 / g0 - mu);
                detail::add_rank_one(a, prob.w[i], -t);
                dvals[i] = t;
            }

            // Projected Newton on the smoothed objective
            //   F(d) = sum d_i + mu log det(A0 - sum d_i w_i w_i'),
            // gradient 1 - mu w_i' A^{-1} w_i, Hessian -mu |w_i' A^{-1} w_j|^2.
            // Quadratic convergence removes the zig-zag that plain cyclic
            // ascent suffers on symmetric states.
            const double grad_tol = std::max(mu * 1e-2, 1e-12);
            for (int it = 0; it < 25; ++it) {
                spend_cycle();
                a = build_a(dvals);
                const auto chol = try_cholesky(a);
                if (!chol) break;

                std::vector<std::vector<Complex>> ys(nc);
                std::vector<double> grad(nc);
                std::vector<std::size_t> active;
                double gmax = 0.0;
                for (std::size_t i = 0; i < nc; ++i) {
                    ys[i] = forward_solve(*chol, prob.w[i]);
                    double gii = 0.0;
                    for (const Complex& z : ys[i]) gii += std::norm(z);
                    grad[i] = 1.0 - mu * gii;
                    if (dvals[i] > 0.0 || grad[i] > 0.0) {
                        active.push_back(i);
                        gmax = std::max(gmax, std::abs(grad[i]));
                    }
                }
                if (gmax < grad_tol) break;

                const std::size_t na = active.size();
                Matrix h(na);
                std::vector<Complex> rhs(na);
                for (std::size_t p = 0; p < na; ++p) {
                    rhs[p] = grad[active[p]];
                    for (std::size_t q = 0; q < na; ++q) {
                        Complex s{0.0, 0.0};
                        for (std::size_t k = 0; k < prob.r; ++k)
                            s += std::conj(ys[active[p]][k]) * ys[active[q]][k];
                        h(p, q) = mu * std::norm(s);
                    }
                    h(p, p) += 1e-13 * (1.0 + h(p, p).real());
                }
                const auto step = solve_pd(h, rhs);
                if (!step) break;

                const double f0 = barrier_value(*chol, dvals, mu);
                bool accepted = false;
                double moved = 0.0;
                double s = 1.0;
                for (int bt = 0; bt < 50 && !accepted; ++bt, s *= 0.5) {
                    std::vector<double> trial = dvals;
                    moved = 0.0;
                    for (std::size_t p = 0; p < na; ++p) {
                        const std::size_t i = active[p];
                        trial[i] = std::max(0.0, trial[i] + s * (*step)[p].real());
                        moved = std::max(moved, std::abs(trial[i] - dvals[i]));
                    }
                    const Matrix at = build_a(trial);
                    const auto lt = try_cholesky(at);
                    if (!lt) continue;
                    if (barrier_value(*lt, trial, mu) >= f0) {
                        dvals = std::move(trial);
                        accepted = true;
                    }
                }
                if (!accepted || moved < 1e-15) break;
            }
            if (mu <= mu_end) break;
        }
    }

    double trace_d = 0.0;
    for (double x : dvals) trace_d += x;

    // Guard the full-space positivity of rho - D. The reduced solve keeps
    // the support block strictly feasible; basis vectors admitted into the
    // range within tolerance can leak a vanishing negative part, which a
    // uniform shrink of D removes.
    Matrix dm(d);
    for (std::size_t i = 0; i < nc; ++i) dm(prob.coords[i], prob.coords[i]) = dvals[i];
    if (trace_d > 0.0) {
        Matrix rem = rho.matrix() - dm;
        if (hermitian_eig(rem).min() < 0.0) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (hermitian_eig(rho.matrix() - mid * dm).min() >= 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            dm = lo * dm;
            trace_d *= lo;
        }
    }

    const double gamma = std::clamp(1.0 - trace_d, 0.0, 1.0);

    const bool sigma_used = trace_d > 1e-12;
    const bool tau_used = gamma > 1e-12;
    DensityMatrix sigma = DensityMatrix::maximally_mixed(d);
    if (sigma_used) {
        Matrix s(d);
        for (std::size_t i = 0; i < d; ++i) s(i, i) = dm(i, i).real() / trace_d;
        sigma = DensityMatrix(s);
    }
    DensityMatrix tau = rho;
    if (tau_used && sigma_used) {
        Matrix t = rho.matrix() - dm;
        const double tr = trace(t).real();
        tau = DensityMatrix(hermitian_part((1.0 / tr) * t));
    }
    return {tau_used ? gamma : 0.0, sigma, tau, sigma_used, tau_used, cycles};
}

/// Certified upper bound on the Boolean-valued coherence measure: the
/// coherent weight of rho. A value strictly below 1 rules out deterministic
/// purification.
inline double c_b_upper_bound(const DensityMatrix& rho) {
    return coherent_weight(rho).gamma;
}

/// The indicator-style measure that assigns 1 to every coherent state
/// fails convexity on mixed states. Returns its value on the equal mixture
/// of a maximally coherent qubit with |0><0|, paired with the mixture of
/// the endpoint values: (1, 0.5), violating convexity since 1 > 1/2.
inline std::pair<double, double> trivial_measure_counterexample() {
    const auto c_trivial = [](const DensityMatrix& rho) {
        return c_l1(rho) > tol::kIncoherent ? 1.0 : 0.0;
    };
    const DensityMatrix rho1{{0.5, 0.5}, {0.5, 0.5}};
    const DensityMatrix rho2{{1.0, 0.0}, {0.0, 0.0}};
    const DensityMatrix mix{{0.75, 0.25}, {0.25, 0.25}};
    return {c_trivial(mix), 0.5 * c_trivial(rho1) + 0.5 * c_trivial(rho2)};
}

}  // namespace qcoh
