#pragma once

#include <cmath>
#include <optional>

#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/measures.hpp"

namespace qcoh {

namespace detail {
constexpr double kFullRankEig = 1e-10;
constexpr double kMaximallyMixedGap = 1e-12;
}  // namespace detail

/// Explicit split rho = lambda sigma + (1 - lambda) tau with sigma
/// incoherent. For a full-rank state the uniform-shift construction
/// gives sigma = I/n and lambda = n * lambda_min. `degenerate` marks the
/// maximally mixed input, where lambda = 1 and tau carries no meaning.
struct DecompositionWitness {
    double lambda;
    DensityMatrix sigma;
    DensityMatrix tau;
    bool degenerate = false;
};

/// Verdict on deterministic purification for one state.
struct PurificationReport {
    double gamma;           // coherent weight
    bool full_rank;         // smallest eigenvalue above 1e-10
    double lambda_min;
    bool purifiable_possible;
    std::optional<DecompositionWitness> witness;
};

/// Splits a full-rank state as
///   rho = (n lambda_min) (I/n) + (1 - n lambda_min) (rho - lambda_min I)/(1 - n lambda_min),
/// exhibiting a maximal incoherent component of weight n lambda_min. The
/// remainder tau is positive semidefinite with zero smallest eigenvalue.
inline DecompositionWitness full_rank_witness(const DensityMatrix& rho) {
    const std::size_t n = rho.dim();
    const double lmin = hermitian_eig(rho.matrix()).min();
    if (lmin <= detail::kFullRankEig)
        throw NotFullRankError("full_rank_witness: state is rank deficient");

    const double lambda = static_cast<double>(n) * lmin;
    if (lambda >= 1.0 - detail::kMaximallyMixedGap)
        return {1.0, rho, rho, true};

    const DensityMatrix sigma = DensityMatrix::maximally_mixed(n);
    Matrix delta = rho.matrix();
    for (std::size_t i = 0; i < n; ++i) delta(i, i) -= lmin;
    const DensityMatrix tau{hermitian_part((1.0 / (1.0 - lambda)) * delta)};
    return {lambda, sigma, tau, false};
}

/// Tests the no-go conditions for deterministic purification: coherent
/// weight below 1 (any split with an incoherent component caps the Boolean
/// measure below 1) and full rank (which forces such a split to exist).
/// A true verdict only says that neither obstruction applies.
inline PurificationReport purifiability_check(const DensityMatrix& rho, double tolerance = 1e-6) {
    if (!(tolerance > 0.0)) throw Error("purifiability_check: tolerance must be positive");

    const CoherentWeightResult cw = coherent_weight(rho, std::min(1e-8, tolerance / 10.0));
    const double lmin = hermitian_eig(rho.matrix()).min();
    const bool full_rank = lmin > detail::kFullRankEig;
    const bool possible = (cw.gamma >= 1.0 - tolerance) && !full_rank;

    std::optional<DecompositionWitness> witness;
    if (full_rank)
        witness = full_rank_witness(rho);
    else if (cw.gamma < 1.0 - tolerance)
        witness = DecompositionWitness{1.0 - cw.gamma, cw.sigma, cw.tau, false};

    return {cw.gamma, full_rank, lmin, possible, std::move(witness)};
}

}  // namespace qcoh
