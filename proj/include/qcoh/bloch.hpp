#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qcoh/density.hpp"
#include "qcoh/enhancement.hpp"
#include "qcoh/matrix.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/purification.hpp"

namespace qcoh {

namespace detail {
constexpr double kEquatorTol = 1e-10;    // |cos theta| at or below this is equatorial
constexpr double kAzimuthDegenerate = 1e-14;
}  // namespace detail

/// Qubit state in polar form: radius r in [0, 1], polar angle theta in
/// [0, pi], azimuth phi in [0, 2 pi).
struct BlochVector {
    double r;
    double theta;
    double phi;
};

/// One classified point of the Bloch-ball survey grid.
struct BlochCell {
    BlochVector bloch;
    double c_l1;
    double ceiling;
    bool enhanceable;
    bool purifiable_possible;
};

/// rho = 1/2 (I + r sin(theta) cos(phi) X + r sin(theta) sin(phi) Y + r cos(theta) Z).
inline DensityMatrix bloch_to_density(const BlochVector& b) {
    if (b.r > 1.0 + 1e-12)
        throw UnphysicalError("bloch_to_density: radius exceeds the unit ball");
    if (!(b.r >= 0.0))
        throw UnphysicalError("bloch_to_density: radius must be non-negative");
    const double z = b.r * std::cos(b.theta);
    const double x = b.r * std::sin(b.theta);
    const Complex off = 0.5 * x * Complex{std::cos(b.phi), -std::sin(b.phi)};
    Matrix m(2);
    m(0, 0) = 0.5 * (1.0 + z);
    m(0, 1) = off;
    m(1, 0) = std::conj(off);
    m(1, 1) = 0.5 * (1.0 - z);
    return DensityMatrix(m);
}

/// Inverse polar parametrization. At the poles and the center the azimuth
/// is undefined and reported as 0; theta is likewise 0 at the center.
inline BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2)
        throw WrongDimensionError("density_to_bloch: qubit states only");
    const double z = rho(0, 0).real() - rho(1, 1).real();
    const Complex lower = rho(1, 0);   // e^{i phi} r sin(theta) / 2
    const double xy = 2.0 * std::abs(lower);
    double r = std::hypot(z, xy);
    r = std::min(r, 1.0);  // PSD slack can push a hair past the unit ball
    const double theta = (r <= detail::kAzimuthDegenerate) ? 0.0 : std::atan2(xy, z);
    double phi = 0.0;
    if (xy > detail::kAzimuthDegenerate) {
        phi = std::atan2(lower.imag(), lower.real());
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;
        if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    }
    return {r, theta, phi};
}

/// Qubit reading of the enhancement condition: coherence is stuck
/// exactly on the equatorial plane, where both populations equal 1/2.
inline bool qubit_enhanceable(const BlochVector& b) {
    if (b.r * std::sin(b.theta) <= tol::kIncoherent)
        throw IncoherentInputError("qubit_enhanceable: state carries no coherence");
    return std::abs(std::cos(b.theta)) > detail::kEquatorTol;
}

/// Survey grid over the coherent part of the Bloch ball: r in (0, 1],
/// theta in (0, pi), phi in [0, 2 pi), r-major then theta then phi. The
/// theta ladder is uniform and anchored on pi/2 so the equatorial plane is
/// sampled exactly; the incoherent axis (r = 0, theta in {0, pi}) is
/// excluded since both verdicts are vacuous there.
inline std::vector<BlochCell> bloch_region_grid(std::size_t n_r, std::size_t n_theta,
                                                std::size_t n_phi) {
    if (n_r < 2 || n_theta < 2 || n_phi < 2)
        throw Error("bloch_region_grid: each count must be at least 2");
    constexpr double pi = std::numbers::pi;
    const double h_theta = pi / static_cast<double>(n_theta + 1);
    const std::size_t mid = (n_theta + 1) / 2;

    std::vector<BlochCell> cells;
    cells.reserve(n_r * n_theta * n_phi);
    for (std::size_t a = 1; a <= n_r; ++a) {
        const double r = static_cast<double>(a) / static_cast<double>(n_r);
        for (std::size_t b = 1; b <= n_theta; ++b) {
            const double theta =
                pi / 2.0 + (static_cast<double>(b) - static_cast<double>(mid)) * h_theta;
            for (std::size_t c = 0; c < n_phi; ++c) {
                const double phi =
                    2.0 * pi * static_cast<double>(c) / static_cast<double>(n_phi);
                const BlochVector bv{r, theta, phi};
                const DensityMatrix rho = bloch_to_density(bv);
                cells.push_back({bv, c_l1(rho), enhancement_ceiling(rho),
                                 qubit_enhanceable(bv),
                                 purifiability_check(rho).purifiable_possible});
            }
        }
    }
    return cells;
}

}  // namespace qcoh
