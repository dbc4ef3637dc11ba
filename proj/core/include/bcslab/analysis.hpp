#pragma once

#include "bcslab/node.hpp"
#include "bcslab/synthesis_types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcslab {

struct SweepEntry {
    Real s = 0;
    Real resnorm = 0;
    bool singular = false;
};

struct SlopeFit {
    Real exponent = 0;   // alpha_hat = 1 / slope
    Real slope = 0;      // log-log slope of resnorm vs s
    Real band_lo = 0;
    Real band_hi = 0;
    Real residual = 0;   // RMS residual of the log-log fit
};

enum class StabilityClass { Exponential, Polynomial, Marginal };

struct StabilityReport {
    Real abscissa = 0;
    std::vector<SweepEntry> sweep;
    std::optional<SlopeFit> slope_fit;
    StabilityClass classification_hint = StabilityClass::Marginal;
};

/// Max real part over the spectrum of the restricted generator.
[[nodiscard]] Real spectral_abscissa(const RestrictedGenerator& gen);

/// Resolvent norms 1 / sigma_min(i s - A) along the imaginary axis, in the
/// generator's (orthonormal) coordinates. Singular entries are flagged, not
/// fatal.
[[nodiscard]] std::vector<SweepEntry> resolvent_sweep(
    const RestrictedGenerator& gen, const std::vector<Real>& s_grid);

/// Least-squares slope p of log resnorm vs log s over [band_lo, band_hi];
/// alpha_hat = 1/p. Throws IllConditionedFit with fewer than 8 band points.
[[nodiscard]] SlopeFit polynomial_exponent_estimate(
    const std::vector<SweepEntry>& sweep, Real band_lo, Real band_hi);

/// Max over `samples` seeded random states of Re<A x, x>_M - Re<B x, C x>.
[[nodiscard]] Real passivity_check(const DiscreteBoundaryNode& node, int samples,
                                   uint64_t seed = 0x9a55u);

enum class HinfForm {
    MinusKP,   // |(I - K P(lambda))^{-1}|
    PlusKP,    // |(I + K P(lambda))^{-1}|
    KinvPlusP  // |(K^{-1} + P(lambda))^{-1}|
};

/// Grid supremum of the requested closed-loop sensitivity form over the
/// supplied lambda samples.
[[nodiscard]] Real hinf_bound(const DiscreteBoundaryNode& node, const ComplexMatrix& k,
                              const std::vector<Complex>& grid, HinfForm form);

struct WellPosednessEstimate {
    Real tau = 0;
    Real const_m = 0;
    int probes = 0;
};

struct WellPosednessOptions {
    Real dt = 1e-2;
    int state_probes = 64;
    int input_probes = 64;
    uint64_t seed = 0xcafeu;
    Real input_cutoff_fraction = 0.5;  // of the time-grid Nyquist pi/dt
    ComplexMatrix output_override;     // optional replacement output map
};

/// Smallest constant (over the probe set) bounding
///   |x(tau)|_M^2 + int |y|^2  by  |x0|_M^2 + int |u|^2.
[[nodiscard]] WellPosednessEstimate wellposedness_constant(
    const DiscreteBoundaryNode& node, Real tau, const WellPosednessOptions& opts);

/// Log-spaced grid helper.
[[nodiscard]] std::vector<Real> log_grid(Real lo, Real hi, int count);

}  // namespace bcslab
