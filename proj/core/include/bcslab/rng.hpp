#pragma once

#include "bcslab/types.hpp"

#include <cmath>
#include <cstdint>

namespace bcslab {

/// Deterministic splitmix64 stream; identical output on every platform, so
/// seeded artifacts are byte-reproducible.
class DeterministicRng {
public:
    explicit DeterministicRng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0,1).
    Real uniform() { return (static_cast<Real>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on (lo, hi).
    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    Real gaussian() {
        const Real u1 = uniform();
        const Real u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    Complex complex_gaussian() {
        const Real u1 = uniform();
        const Real u2 = uniform();
        const Real r = std::sqrt(-std::log(u1));
        const Real phi = 2.0 * 3.14159265358979323846 * u2;
        return Complex(r * std::cos(phi), r * std::sin(phi));
    }

    ComplexVector complex_gaussian_vector(Index n) {
        ComplexVector v(n);
        for (Index i = 0; i < n; ++i) v(i) = complex_gaussian();
        return v;
    }

    ComplexMatrix complex_gaussian_matrix(Index rows, Index cols) {
        ComplexMatrix m(rows, cols);
        for (Index j = 0; j < cols; ++j) {
            for (Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
        }
        return m;
    }

private:
    uint64_t state_;
};

/// Mixes stream identifiers into one seed.
inline uint64_t mix_seed(uint64_t a, uint64_t b) {
    uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    return z ^ (z >> 31);
}

}  // namespace bcslab
