#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcoh/measures.hpp"
#include "qcoh/oracle.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/rng.hpp"

using namespace qcoh;

TEST_CASE("c_l1 on reference states") {
    CHECK(c_l1(DensityMatrix{{0.75, 0.25}, {0.25, 0.25}}) == Catch::Approx(0.5).margin(1e-15));
    CHECK(c_l1(DensityMatrix{{0.3, 0.0}, {0.0, 0.7}}) == 0.0);
    CHECK(c_l1(DensityMatrix{{0.5, 0.5}, {0.5, 0.5}}) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("coherent weight of diagonal and pure coherent states") {
    const DensityMatrix diag{{0.3, 0.0}, {0.0, 0.7}};
    const CoherentWeightResult r = coherent_weight(diag);
    CHECK(r.gamma == 0.0);
    CHECK(max_abs_diff(r.sigma.matrix(), diag.matrix()) == 0.0);
    CHECK(r.sigma_used);
    CHECK_FALSE(r.tau_used);

    const DensityMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    const CoherentWeightResult p = coherent_weight(plus);
    CHECK(p.gamma == 1.0);
    CHECK_FALSE(p.sigma_used);
    CHECK(max_abs_diff(p.tau.matrix(), plus.matrix()) == 0.0);
}

TEST_CASE("coherent weight of the symmetric half-coherent qubit is 1/2") {
    // Expected value derived from the grid oracle (step 1e-4) and frozen.
    const DensityMatrix rho{{0.5, 0.25}, {0.25, 0.5}};
    const double oracle = cw_grid_oracle_qubit(rho, 1e-4);
    CHECK(std::abs(oracle - 0.5) < 2e-4);
    const double gamma = coherent_weight(rho).gamma;
    CHECK(std::abs(gamma - 0.5) < 1e-8);
    CHECK(std::abs(gamma - oracle) < 2e-4);
}

TEST_CASE("coherent weight rejects out-of-range tolerances") {
    const DensityMatrix rho{{0.5, 0.25}, {0.25, 0.5}};
    CHECK_THROWS_AS(coherent_weight(rho, 0.0), Error);
    CHECK_THROWS_AS(coherent_weight(rho, 0.5), Error);
}

TEST_CASE("coherent weight on a basis-aligned rank-deficient mixture") {
    // 0.6 |0><0| + 0.4 |psi><psi| with psi = (|1> + |2>)/sqrt(2): only the
    // basis component can be subtracted, so gamma = 0.4 exactly.
    Matrix m(3);
    m(0, 0) = 0.6;
    m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = 0.2;
    const CoherentWeightResult r = coherent_weight(DensityMatrix(m));
    CHECK(r.gamma == Catch::Approx(0.4).margin(1e-7));
    CHECK(offdiag_abs_sum(r.sigma.matrix()) <= 1e-10);
}

TEST_CASE("coherent weight witness invariants on random states") {
    Rng rng(8101);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t d = 2 + rng.index(3);
        const std::size_t rank = 1 + rng.index(d);
        const DensityMatrix rho = random_density(d, rank, rng);
        const CoherentWeightResult r = coherent_weight(rho);

        CHECK(r.gamma >= 0.0);
        CHECK(r.gamma <= 1.0);
        const Matrix recon = (1.0 - r.gamma) * r.sigma.matrix() + r.gamma * r.tau.matrix();
        if (r.sigma_used && r.tau_used) CHECK(max_abs_diff(recon, rho.matrix()) < 1e-8);
        CHECK(offdiag_abs_sum(r.sigma.matrix()) <= 1e-10);

        // gamma vanishes exactly for incoherent inputs and not otherwise
        if (c_l1(rho) <= 1e-12)
            CHECK(r.gamma <= 1e-8);
        else if (c_l1(rho) > 1e-4)
            CHECK(r.gamma > 0.0);
    }
}

TEST_CASE("coherent weight matches the grid oracle on random qubits") {
    Rng rng(8102);
    for (int rep = 0; rep < 40; ++rep) {
        const DensityMatrix rho = random_density(2, 2, rng);
        const double gamma = coherent_weight(rho).gamma;
        const double oracle = cw_grid_oracle_qubit(rho, 1e-4);
        CHECK(std::abs(gamma - oracle) < 2e-4);
    }
}

TEST_CASE("c_b upper bound endpoints") {
    CHECK(c_b_upper_bound(DensityMatrix{{0.75, 0.25}, {0.25, 0.25}}) < 1.0);
    CHECK(c_b_upper_bound(DensityMatrix{{0.4, 0.0}, {0.0, 0.6}}) == 0.0);
    CHECK(c_b_upper_bound(DensityMatrix{{0.5, 0.5}, {0.5, 0.5}}) == 1.0);
}

TEST_CASE("indicator measure convexity counterexample is exact") {
    const auto [mixed, average] = trivial_measure_counterexample();
    CHECK(mixed == 1.0);
    CHECK(average == 0.5);
    CHECK(mixed > average);
}

TEST_CASE("c_l1 is convex on random mixtures") {
    Rng rng(8103);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t d = 2 + rng.index(3);
        const DensityMatrix a = random_density(d, d, rng);
        const DensityMatrix b = random_density(d, d, rng);
        for (int k = 1; k <= 9; ++k) {
            const double p = 0.1 * k;
            const Matrix mix = p * a.matrix() + (1.0 - p) * b.matrix();
            CHECK(offdiag_abs_sum(mix) <= p * c_l1(a) + (1.0 - p) * c_l1(b) + 1e-10);
        }
    }
}
