#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcoh/density.hpp"
#include "qcoh/eig.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/random_states.hpp"
#include "qcoh/rng.hpp"

using namespace qcoh;

namespace {

// Independent oracle for 2x2 Hermitian spectra: bisection on the
// characteristic polynomial p(x) = x^2 - tr x + det. No linear algebra
// shared with the implementation under test.
std::pair<double, double> char_poly_roots_2x2(double a00, double a11, double offdiag_abs2) {
    const double tr = a00 + a11;
    const double det = a00 * a11 - offdiag_abs2;
    const auto p = [&](double x) { return x * x - tr * x + det; };
    const auto bisect = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((p(lo) <= 0.0) == (p(mid) <= 0.0))
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double vertex = tr / 2.0;  // p minimal here; roots straddle it
    const double span = std::abs(tr) + std::abs(det) + offdiag_abs2 + 1.0;
    return {bisect(vertex - span, vertex), bisect(vertex + span, vertex)};
}

}  // namespace

TEST_CASE("2x2 closed-form spectrum frozen against the char-poly oracle") {
    // Expected values for [[3/4,1/4],[1/4,1/4]] frozen from (1 -+ sqrt(1/2))/2.
    const double lo_expect = 0.14644660940672624;
    const double hi_expect = 0.85355339059327373;

    const auto [lo_oracle, hi_oracle] = char_poly_roots_2x2(0.75, 0.25, 0.25 * 0.25);
    CHECK(std::abs(lo_oracle - lo_expect) < 1e-12);
    CHECK(std::abs(hi_oracle - hi_expect) < 1e-12);

    const Matrix a{{0.75, 0.25}, {0.25, 0.25}};
    const EigenDecomposition eig = hermitian_eig(a);
    CHECK(std::abs(eig.eigenvalues[0] - lo_expect) < 1e-12);
    CHECK(std::abs(eig.eigenvalues[1] - hi_expect) < 1e-12);
}

TEST_CASE("hermitian_eig on identity and Pauli-X") {
    const EigenDecomposition id = hermitian_eig(Matrix::identity(2));
    CHECK(id.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(id.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));

    const Matrix x{{0.0, 1.0}, {1.0, 0.0}};
    const EigenDecomposition ex = hermitian_eig(x);
    CHECK(ex.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-12));
    CHECK(ex.eigenvalues[1] == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hermitian_eig rejects asymmetric input and caps sweeps") {
    const Matrix bad{{0.0, 1.0}, {0.5, 0.0}};
    CHECK_THROWS_AS(hermitian_eig(bad), NotHermitianError);
}

TEST_CASE("eigendecomposition invariants on random Hermitian matrices") {
    Rng rng(7001);
    for (std::size_t dim : {2u, 3u, 5u, 8u, 16u}) {
        for (int rep = 0; rep < 20; ++rep) {
            Matrix a(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                a(i, i) = rng.normal();
                for (std::size_t j = i + 1; j < dim; ++j) {
                    a(i, j) = rng.complex_normal();
                    a(j, i) = std::conj(a(i, j));
                }
            }
            const EigenDecomposition eig = hermitian_eig(a);

            // eigenvalues ascending, summing to the trace
            double sum = 0.0;
            for (std::size_t k = 0; k + 1 < dim; ++k) CHECK(eig.eigenvalues[k] <= eig.eigenvalues[k + 1]);
            for (double v : eig.eigenvalues) sum += v;
            CHECK(std::abs(sum - trace(a).real()) < 1e-10);

            // reconstruction and orthonormality
            Matrix lam(dim);
            for (std::size_t k = 0; k < dim; ++k) lam(k, k) = eig.eigenvalues[k];
            const Matrix recon = eig.eigenvectors * lam * adjoint(eig.eigenvectors);
            CHECK(max_abs_diff(recon, a) < 1e-10);
            const Matrix gram = adjoint(eig.eigenvectors) * eig.eigenvectors;
            CHECK(max_abs_diff(gram, Matrix::identity(dim)) < 1e-10);

            // determinism
            const EigenDecomposition again = hermitian_eig(a);
            for (std::size_t k = 0; k < dim; ++k)
                CHECK(eig.eigenvalues[k] == again.eigenvalues[k]);
        }
    }
}

TEST_CASE("entrywise_abs strips signs and phases") {
    const Matrix signs{{0.5, -0.5}, {-0.5, 0.5}};
    const Matrix expect{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(max_abs_diff(entrywise_abs(signs), expect) == 0.0);

    const Matrix phases{{0.5, Complex{0.0, 0.5}}, {Complex{0.0, -0.5}, 0.5}};
    CHECK(max_abs_diff(entrywise_abs(phases), expect) == 0.0);

    const Matrix diag = Matrix::diagonal({0.25, 0.75});
    CHECK(max_abs_diff(entrywise_abs(diag), diag) == 0.0);
}

TEST_CASE("diag_part keeps the diagonal and zeroes the rest") {
    const DensityMatrix rho{{0.75, 0.25}, {0.25, 0.25}};
    const Matrix d = diag_part(rho);
    CHECK(d(0, 0) == Complex{0.75, 0.0});
    CHECK(d(1, 1) == Complex{0.25, 0.0});
    CHECK(d(0, 1) == Complex{0.0, 0.0});
    CHECK(d(1, 0) == Complex{0.0, 0.0});

    const DensityMatrix diag{{0.3, 0.0}, {0.0, 0.7}};
    CHECK(max_abs_diff(diag_part(diag), diag.matrix()) == 0.0);

    const DensityMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(max_abs_diff(diag_part(plus), Matrix::diagonal({0.5, 0.5})) == 0.0);
}

TEST_CASE("diag_inv_sqrt handles zero populations by convention") {
    const DensityMatrix a{{0.25, 0.0}, {0.0, 0.75}};
    const Matrix inv = diag_inv_sqrt(a);
    CHECK(inv(0, 0).real() == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(inv(1, 1).real() == Catch::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

    const DensityMatrix pure{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix inv2 = diag_inv_sqrt(pure);
    CHECK(inv2(0, 0) == Complex{1.0, 0.0});
    CHECK(inv2(1, 1) == Complex{0.0, 0.0});

    const DensityMatrix mixed{{0.5, 0.0}, {0.0, 0.5}};
    CHECK(diag_inv_sqrt(mixed)(0, 0).real() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("scaled diagonal sandwich gives the support indicator") {
    Rng rng(7002);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t dim = 2 + rng.index(3);
        const DensityMatrix rho = random_density(dim, dim, rng);
        const Matrix b = diag_inv_sqrt(rho);
        const Matrix sandwich = b * diag_part(rho) * b;
        Matrix indicator(dim);
        for (std::size_t i = 0; i < dim; ++i)
            indicator(i, i) = rho(i, i).real() > 1e-12 ? 1.0 : 0.0;
        CHECK(max_abs_diff(sandwich, indicator) < 1e-12);
    }
}

TEST_CASE("density validation names the violated invariant") {
    const Matrix not_herm{{0.5, 0.3}, {0.2, 0.5}};
    CHECK_THROWS_WITH(DensityMatrix(not_herm), Catch::Matchers::ContainsSubstring("hermiticity"));

    const Matrix bad_trace{{0.9, 0.0}, {0.0, 0.9}};
    CHECK_THROWS_WITH(DensityMatrix(bad_trace), Catch::Matchers::ContainsSubstring("trace"));

    const Matrix not_psd{{0.8, 0.5}, {0.5, 0.2}};
    CHECK_THROWS_WITH(DensityMatrix(not_psd), Catch::Matchers::ContainsSubstring("positivity"));
}

TEST_CASE("haar unitaries are unitary and seed-deterministic") {
    Rng rng(7003);
    for (std::size_t dim : {2u, 4u, 9u}) {
        const Matrix u = haar_unitary(dim, rng);
        CHECK(max_abs_diff(adjoint(u) * u, Matrix::identity(dim)) < 1e-12);
    }
    Rng a(99), b(99);
    CHECK(max_abs_diff(haar_unitary(3, a), haar_unitary(3, b)) == 0.0);
}

TEST_CASE("random densities have the requested rank and unit trace") {
    Rng rng(7004);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t dim = 2 + rng.index(3);
        const std::size_t rank = 1 + rng.index(dim);
        const DensityMatrix rho = random_density(dim, rank, rng);
        const EigenDecomposition eig = hermitian_eig(rho.matrix());
        std::size_t positive = 0;
        for (double v : eig.eigenvalues)
            if (v > 1e-9) ++positive;
        CHECK(positive == rank);
        CHECK(std::abs(trace(rho.matrix()).real() - 1.0) < 1e-12);
    }
}
