#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/bloch.hpp"
#include "qcoh/density.hpp"
#include "qcoh/enhancement.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/oracle.hpp"
#include "qcoh/purification.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/report.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/statefile.hpp"

namespace qcoh::checks {

/// Outcome of one verification property.
struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    long checked = 0;
    double worst = 0.0;
    std::optional<StateFile> falsifier;
};

/// Override points for harness self-tests (a deliberately wrong ceiling
/// must make the maximality check fail and emit a falsifier).
struct Hooks {
    std::function<double(const DensityMatrix&)> ceiling_fn =
        [](const DensityMatrix& rho) { return enhancement_ceiling(rho); };
};

namespace detail {

inline DensityMatrix random_coherent_full_rank(std::size_t dim, Rng& rng) {
    for (;;) {
        DensityMatrix rho = random_density(dim, dim, rng);
        if (c_l1(rho) > 1e-6 && hermitian_eig(rho.matrix()).min() > 1e-6) return rho;
    }
}

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

}  // namespace detail

/// No random stochastic SIO pushes the post-selected l1 coherence above
/// the spectral ceiling.
inline CheckResult check_maximality(const std::vector<std::size_t>& dims, long n_states,
                                    int channels_per_state, std::uint64_t seed,
                                    const Hooks& hooks = {}) {
    CheckResult res;
    res.name = "maximality";
    Rng rng(seed);
    for (long s = 0; s < n_states; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = detail::random_coherent_full_rank(d, rng);
        const double ceiling = hooks.ceiling_fn(rho);
        for (int c = 0; c < channels_per_state; ++c) {
            const StochasticSIO channel = random_ssio(d, 1 + rng.index(d * d), rng.fork());
            const auto [out, p] = apply_ssio(channel, rho);
            const double excess = c_l1(out) - ceiling;
            res.worst = std::max(res.worst, excess);
            ++res.checked;
            if (excess > 1e-8 && res.pass) {
                res.pass = false;
                res.falsifier = StateFile::from_matrix(rho.matrix());
                res.detail = "output exceeded ceiling by " + detail::fmt(excess);
            }
        }
    }
    if (res.pass) res.detail = "worst excess " + detail::fmt(res.worst);
    return res;
}

/// The diagonal filter built from the principal eigenvector reaches the
/// ceiling within 1e-8.
inline CheckResult check_attainability(const std::vector<std::size_t>& dims, long n_states,
                                       std::uint64_t seed) {
    CheckResult res;
    res.name = "attainability";
    Rng rng(seed);
    for (long s = 0; s < n_states; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = detail::random_coherent_full_rank(d, rng);
        const double ceiling = enhancement_ceiling(rho);
        const auto [out, p] = apply_ssio(optimal_kraus(rho), rho);
        const double err = std::abs(c_l1(out) - ceiling);
        res.worst = std::max(res.worst, err);
        ++res.checked;
        if (err > 1e-8 && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "optimal filter missed the ceiling by " + detail::fmt(err);
        }
    }
    if (res.pass) res.detail = "worst miss " + detail::fmt(res.worst);
    return res;
}

/// States satisfying the population condition exactly sit at the ceiling
/// (|ceiling - c_l1| <= 1e-10); perturbed ones leave it strictly. The
/// residual and spectral verdicts must agree throughout.
inline CheckResult check_stuck_state_equivalence(const std::vector<std::size_t>& dims,
                                              long n_exact, long n_perturbed,
                                              std::uint64_t seed) {
    CheckResult res;
    res.name = "stuck-state-equivalence";
    Rng rng(seed);
    double worst_gap = 0.0;
    for (long s = 0; s < n_exact; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = make_stuck_state(d, rng);
        try {
            const EnhancementReport rep = enhancement_check(rho, 1e-4);
            const double gap = std::abs(rep.ceiling - rep.c_l1_in);
            worst_gap = std::max(worst_gap, gap);
            ++res.checked;
            if ((gap > 1e-10 || rep.enhanceable) && res.pass) {
                res.pass = false;
                res.falsifier = StateFile::from_matrix(rho.matrix());
                res.detail = "stuck state drifted off the ceiling by " + detail::fmt(gap);
            }
        } catch (const VerdictMismatchError& e) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = e.what();
        }
    }
    for (long s = 0; s < n_perturbed; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho =
            perturb_stuck_state(make_stuck_state(d, rng), 1.5e-3, rng);
        try {
            const EnhancementReport rep = enhancement_check(rho, 1e-4);
            ++res.checked;
            if ((rep.condition_residual < 1e-3 || rep.ceiling <= rep.c_l1_in ||
                 !rep.enhanceable) &&
                res.pass) {
                res.pass = false;
                res.falsifier = StateFile::from_matrix(rho.matrix());
                res.detail = "perturbed state failed to leave the ceiling";
            }
        } catch (const VerdictMismatchError& e) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = e.what();
        }
    }
    if (res.pass) res.detail = "worst stuck-state gap " + detail::fmt(worst_gap);
    return res;
}

/// Solver gamma against the exhaustive qubit grid oracle.
inline CheckResult check_cw_oracle_qubit(long n_states, double step, double tolerance,
                                         std::uint64_t seed) {
    CheckResult res;
    res.name = "coherent-weight-grid-oracle";
    Rng rng(seed);
    for (long s = 0; s < n_states; ++s) {
        const DensityMatrix rho = random_density(2, 2, rng);
        const double gamma = coherent_weight(rho).gamma;
        const double oracle = cw_grid_oracle_qubit(rho, step);
        const double err = std::abs(gamma - oracle);
        res.worst = std::max(res.worst, err);
        ++res.checked;
        if (err > tolerance && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "solver and grid oracle disagree by " + detail::fmt(err);
        }
    }
    if (res.pass) res.detail = "worst deviation " + detail::fmt(res.worst);
    return res;
}

/// Solver gamma never exceeds the ensemble-search upper bound on qutrits.
inline CheckResult check_cw_oracle_qutrit(long n_states, std::size_t ensemble_trials,
                                          std::uint64_t seed) {
    CheckResult res;
    res.name = "coherent-weight-ensemble-oracle";
    Rng rng(seed);
    double worst = -1.0;
    for (long s = 0; s < n_states; ++s) {
        const DensityMatrix rho = random_density(3, 3, rng);
        const double gamma = coherent_weight(rho).gamma;
        const double oracle = cb_ensemble_oracle(rho, ensemble_trials, rng.fork());
        worst = std::max(worst, gamma - oracle);
        ++res.checked;
        if (gamma > oracle + 1e-6 && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "gamma exceeded the ensemble bound by " + detail::fmt(gamma - oracle);
        }
    }
    res.worst = worst;
    if (res.pass) res.detail = "worst gamma - bound " + detail::fmt(worst);
    return res;
}

/// The indicator measure counterexample evaluates to exactly (1, 0.5).
inline CheckResult check_trivial_counterexample() {
    CheckResult res;
    res.name = "trivial-measure-counterexample";
    const auto [lhs, rhs] = trivial_measure_counterexample();
    res.checked = 1;
    res.pass = (lhs == 1.0 && rhs == 0.5);
    res.detail = "returned (" + detail::fmt(lhs) + ", " + detail::fmt(rhs) + ")";
    return res;
}

/// Qubit geometry: equatorial states sit at ceiling = c_l1 = r; tilted
/// ones match the closed-form ceiling and strictly exceed c_l1.
inline CheckResult check_qubit_equator(long n_equatorial, long n_off, std::uint64_t seed) {
    CheckResult res;
    res.name = "qubit-equatorial-classification";
    Rng rng(seed);
    constexpr double pi = std::numbers::pi;
    for (long s = 0; s < n_equatorial; ++s) {
        const BlochVector b{rng.uniform01(), pi / 2.0, rng.uniform(0.0, 2.0 * pi)};
        const DensityMatrix rho = bloch_to_density(b);
        const double ceiling = enhancement_ceiling(rho);
        const double err = std::max(std::abs(ceiling - b.r), std::abs(c_l1(rho) - b.r));
        res.worst = std::max(res.worst, err);
        ++res.checked;
        if ((err > 1e-10 || qubit_enhanceable(b)) && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "equatorial state off by " + detail::fmt(err);
        }
    }
    for (long s = 0; s < n_off; ++s) {
        double theta = rng.uniform(0.05, pi - 0.05);
        while (std::abs(std::cos(theta)) < 1e-3) theta = rng.uniform(0.05, pi - 0.05);
        const BlochVector b{rng.uniform(0.1, 1.0), theta, rng.uniform(0.0, 2.0 * pi)};
        const DensityMatrix rho = bloch_to_density(b);
        const double ceiling = enhancement_ceiling(rho);
        const double rc = b.r * std::cos(b.theta);
        const double formula = b.r * std::abs(std::sin(b.theta)) / std::sqrt(1.0 - rc * rc);
        const double err = std::abs(ceiling - formula);
        res.worst = std::max(res.worst, err);
        ++res.checked;
        if ((err > 1e-10 || ceiling <= c_l1(rho) + 1e-12 || !qubit_enhanceable(b)) && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "tilted state missed the closed form by " + detail::fmt(err);
        }
    }
    if (res.pass) res.detail = "worst formula deviation " + detail::fmt(res.worst);
    return res;
}

/// Full-rank witness: reconstruction, incoherent component I/n, and the
/// coherent-weight bound gamma <= 1 - n lambda_min + 1e-6.
inline CheckResult check_full_rank_witness(const std::vector<std::size_t>& dims, long n_states,
                                    std::uint64_t seed) {
    CheckResult res;
    res.name = "full-rank-witness";
    Rng rng(seed);
    for (long s = 0; s < n_states; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = detail::random_coherent_full_rank(d, rng);
        const double lmin = hermitian_eig(rho.matrix()).min();
        const DecompositionWitness w = full_rank_witness(rho);

        const Matrix recon =
            w.lambda * w.sigma.matrix() + (1.0 - w.lambda) * w.tau.matrix();
        const double rec_err = max_abs_diff(recon, rho.matrix());
        const double sigma_err =
            max_abs_diff(w.sigma.matrix(), (1.0 / static_cast<double>(d)) * Matrix::identity(d));
        const double gamma = coherent_weight(rho).gamma;
        const double slack = gamma - (1.0 - d * lmin);
        res.worst = std::max({res.worst, rec_err, sigma_err});
        ++res.checked;

        const bool ok = rec_err <= 1e-10 && sigma_err <= 1e-12 && slack <= 1e-6 &&
                        !purifiability_check(rho).purifiable_possible;
        if (!ok && res.pass) {
            res.pass = false;
            res.falsifier = StateFile::from_matrix(rho.matrix());
            res.detail = "witness failed (recon " + detail::fmt(rec_err) + ", slack " +
                         detail::fmt(slack) + ")";
        }
    }
    if (res.pass) res.detail = "worst reconstruction error " + detail::fmt(res.worst);
    return res;
}

/// l1-norm measure axioms: non-negativity, zero iff incoherent, convexity,
/// and monotonicity under trace-preserving strictly incoherent channels.
inline CheckResult check_cl1_axioms(long n_random, long n_channels, std::uint64_t seed) {
    CheckResult res;
    res.name = "c-l1-axioms";
    Rng rng(seed);
    const std::vector<std::size_t> dims{2, 3, 4};

    for (long s = 0; s < n_random; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = random_density(d, d, rng);
        ++res.checked;
        if (c_l1(rho) < 0.0 && res.pass) {
            res.pass = false;
            res.detail = "negative c_l1";
            res.falsifier = StateFile::from_matrix(rho.matrix());
        }
        std::vector<double> diag(d);
        double total = 0.0;
        for (double& x : diag) total += (x = rng.uniform01());
        for (double& x : diag) x /= total;
        const DensityMatrix inc{Matrix::diagonal(diag)};
        if (c_l1(inc) > tol::kIncoherent && res.pass) {
            res.pass = false;
            res.detail = "incoherent state got nonzero c_l1";
        }
        const DensityMatrix rho2 = random_density(d, d, rng);
        for (int k = 1; k <= 9; ++k) {
            const double p = 0.1 * k;
            const Matrix mix = p * rho.matrix() + (1.0 - p) * rho2.matrix();
            const double viol =
                offdiag_abs_sum(mix) - (p * c_l1(rho) + (1.0 - p) * c_l1(rho2));
            res.worst = std::max(res.worst, viol);
            if (viol > 1e-10 && res.pass) {
                res.pass = false;
                res.detail = "convexity violated by " + detail::fmt(viol);
                res.falsifier = StateFile::from_matrix(rho.matrix());
            }
        }
    }

    for (long s = 0; s < n_channels; ++s) {
        const std::size_t d = dims[static_cast<std::size_t>(s) % dims.size()];
        const DensityMatrix rho = random_density(d, d, rng);
        const StochasticSIO sio = random_full_sio(d, 1 + rng.index(d * d), rng.fork());
        const auto [out, p] = apply_ssio(sio, rho);
        const double viol = c_l1(out) - c_l1(rho);
        res.worst = std::max(res.worst, viol);
        ++res.checked;
        if ((viol > 1e-10 || std::abs(p - 1.0) > 1e-9) && res.pass) {
            res.pass = false;
            res.detail = "monotonicity violated by " + detail::fmt(viol);
            res.falsifier = StateFile::from_matrix(rho.matrix());
        }
    }
    if (res.pass) res.detail = "worst slack " + detail::fmt(res.worst);
    return res;
}

/// The cells marked neither enhanceable nor possibly purifiable are exactly
/// the equatorial band with r < 1, and the CSV emission is deterministic.
inline CheckResult check_bloch_grid(std::size_t n_r, std::size_t n_theta, std::size_t n_phi) {
    CheckResult res;
    res.name = "bloch-grid-region";
    const std::vector<BlochCell> cells = bloch_region_grid(n_r, n_theta, n_phi);
    long band = 0;
    for (const BlochCell& c : cells) {
        const bool in_band =
            std::abs(std::cos(c.bloch.theta)) <= 1e-10 && c.bloch.r < 1.0;
        const bool marked = !c.enhanceable && !c.purifiable_possible;
        ++res.checked;
        if (in_band) ++band;
        if (in_band != marked && res.pass) {
            res.pass = false;
            res.detail = "cell classification disagrees with the equatorial band";
            res.falsifier = StateFile::from_matrix(bloch_to_density(c.bloch).matrix());
        }
    }
    if (cells.size() != n_r * n_theta * n_phi) {
        res.pass = false;
        res.detail = "grid size mismatch";
    }
    std::ostringstream first, second;
    write_bloch_csv(first, cells);
    write_bloch_csv(second, cells);
    if (first.str() != second.str()) {
        res.pass = false;
        res.detail = "CSV emission not deterministic";
    }
    if (res.pass)
        res.detail = std::to_string(band) + " band cells of " + std::to_string(cells.size());
    return res;
}

}  // namespace qcoh::checks
