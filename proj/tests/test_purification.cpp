#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcoh/measures.hpp"
#include "qcoh/purification.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/rng.hpp"

using namespace qcoh;

TEST_CASE("full-rank witness on the 3/4-1/4 state") {
    // lambda = 2 lambda_min frozen from the closed-form spectrum.
    const double lambda_expect = 2.0 * 0.14644660940672624;
    const DensityMatrix rho{{0.75, 0.25}, {0.25, 0.25}};
    const DecompositionWitness w = full_rank_witness(rho);

    CHECK(w.lambda == Catch::Approx(lambda_expect).margin(1e-12));
    CHECK_FALSE(w.degenerate);
    CHECK(max_abs_diff(w.sigma.matrix(), Matrix::diagonal({0.5, 0.5})) < 1e-15);
    const Matrix recon = w.lambda * w.sigma.matrix() + (1.0 - w.lambda) * w.tau.matrix();
    CHECK(max_abs_diff(recon, rho.matrix()) < 1e-10);
    CHECK(hermitian_eig(w.tau.matrix()).min() > -1e-12);
}

TEST_CASE("full-rank witness degenerate and diagonal paths") {
    const DecompositionWitness mixed = full_rank_witness(DensityMatrix::maximally_mixed(2));
    CHECK(mixed.degenerate);
    CHECK(mixed.lambda == 1.0);

    const DensityMatrix diag{{0.75, 0.0}, {0.0, 0.25}};
    const DecompositionWitness w = full_rank_witness(diag);
    CHECK(w.lambda == Catch::Approx(0.5).margin(1e-12));
    CHECK(max_abs_diff(w.tau.matrix(), Matrix::diagonal({1.0, 0.0})) < 1e-12);

    const DensityMatrix pure{{0.5, 0.5}, {0.5, 0.5}};
    CHECK_THROWS_AS(full_rank_witness(pure), NotFullRankError);
}

TEST_CASE("purifiability verdicts on reference states") {
    const PurificationReport pure = purifiability_check(DensityMatrix{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(pure.purifiable_possible);
    CHECK_FALSE(pure.full_rank);
    CHECK(pure.gamma == 1.0);

    const PurificationReport mix = purifiability_check(DensityMatrix{{0.75, 0.25}, {0.25, 0.25}});
    CHECK_FALSE(mix.purifiable_possible);
    CHECK(mix.full_rank);
    CHECK(mix.witness.has_value());

    const PurificationReport inc = purifiability_check(DensityMatrix::maximally_mixed(2));
    CHECK_FALSE(inc.purifiable_possible);
    CHECK(inc.gamma == 0.0);
}

TEST_CASE("full-rank states always carry an incoherent component") {
    Rng rng(8301);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t d = 2 + rng.index(3);
        DensityMatrix rho = random_density(d, d, rng);
        while (c_l1(rho) < 1e-6 || hermitian_eig(rho.matrix()).min() < 1e-6)
            rho = random_density(d, d, rng);
        const double lmin = hermitian_eig(rho.matrix()).min();

        const DecompositionWitness w = full_rank_witness(rho);
        const Matrix recon = w.lambda * w.sigma.matrix() + (1.0 - w.lambda) * w.tau.matrix();
        CHECK(max_abs_diff(recon, rho.matrix()) < 1e-10);
        CHECK(offdiag_abs_sum(w.sigma.matrix()) <= 1e-12);
        CHECK(coherent_weight(rho).gamma <= 1.0 - d * lmin + 1e-6);

        const PurificationReport rep2 = purifiability_check(rho);
        CHECK_FALSE(rep2.purifiable_possible);
        CHECK(rep2.full_rank);
    }
}

TEST_CASE("verdict consistency: possible only for rank-deficient gamma-one states") {
    Rng rng(8302);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t d = 2 + rng.index(3);
        const std::size_t rank = 1 + rng.index(d);
        const DensityMatrix rho = random_density(d, rank, rng);
        const PurificationReport r = purifiability_check(rho);
        if (r.purifiable_possible) {
            CHECK(r.gamma >= 1.0 - 1e-6);
            CHECK(r.lambda_min <= 1e-10);
        }
        if (rank == 1 && c_l1(rho) > 1e-6) CHECK(r.purifiable_possible);
    }
}
