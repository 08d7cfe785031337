#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qcoh/matrix.hpp"

namespace qcoh {

/// Deterministic random source. All draws are derived from the raw
/// mt19937_64 stream with fixed arithmetic (no std distributions), so a
/// seed reproduces the same values on every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in (0, 1].
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // [0,1)
        return lo + (hi - lo) * u;
    }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform(0.0, 1.0);
        const double m = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = m * std::sin(a);
        have_spare_ = true;
        return m * std::cos(a);
    }

    Complex complex_normal() { return {normal(), normal()}; }

    /// Uniform phase factor e^{i a}, a in [0, 2 pi).
    Complex unit_phase() {
        const double a = uniform(0.0, 2.0 * std::numbers::pi);
        return {std::cos(a), std::sin(a)};
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(gen_() % n);
    }

    /// Uniformly random permutation of {0, ..., n-1} (Fisher-Yates).
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = index(i);
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    /// Fresh independent seed for a sub-generator.
    std::uint64_t fork() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qcoh
