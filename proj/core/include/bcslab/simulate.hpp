#pragma once

#include "bcslab/node.hpp"
#include "bcslab/numerics.hpp"
#include "bcslab/synthesis_types.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace bcslab {

/// Time signal fed to a simulation. Band-limited signals are evaluated
/// analytically (trigonometric polynomial with seeded coefficients), sampled
/// signals are interpolated linearly at step midpoints.
struct InputSignal {
    enum class Kind { Zero, Sampled, BandLimitedRandom };
    Kind kind = Kind::Zero;
    ComplexMatrix samples;   // m x (steps+1), for Kind::Sampled
    uint64_t seed = 0;       // for Kind::BandLimitedRandom
    Real cutoff = 0;         // rad/s
    int harmonics = 16;

    static InputSignal zero() { return {}; }
    static InputSignal sampled(ComplexMatrix values);
    static InputSignal band_limited(uint64_t seed, Real cutoff, int harmonics = 16);

    /// Value at time t for `channels` channels (columns of a channel vector).
    [[nodiscard]] ComplexVector at(Real t, Index channels, Real dt, Index step_hint) const;
};

/// Boundary-compressed realization of a node:
///   x(t) = K z(t) + R Q u(t),
///   z' = G z + E_u u + E_du u',   y = C_z z + C_u u,
/// with K the M-orthonormal trial basis of ker(B) and R the M-minimal right
/// inverse. The boundary condition B x = Q u holds exactly at grid times.
struct CompressedRealization {
    ComplexMatrix kernel;   // n x k
    ComplexMatrix lift;     // n x m (R Q)
    ComplexMatrix gen;      // k x k
    ComplexMatrix e_u;      // k x m
    ComplexMatrix e_du;     // k x m
    ComplexMatrix c_z;      // p x k
    ComplexMatrix c_u;      // p x m
    ComplexMatrix cross;    // k x m, K^H M R Q (energy cross term)
    ComplexMatrix quad;     // m x m, (R Q)^H M R Q
    ComplexMatrix wk_inv_w; // k x n, (W K)^{-1} W (state projection)
};

[[nodiscard]] CompressedRealization build_realization(const DiscreteBoundaryNode& node);

struct SimulationOptions {
    Index state_stride = 1;  // store full states every this many steps
    bool store_states = true;
};

struct SimulationResult {
    RealVector times;        // steps+1 entries, uniform
    ComplexMatrix states;    // n x stored, full DOF coordinates
    std::vector<Index> state_steps;  // step index of each stored column
    ComplexMatrix outputs;   // p x (steps+1)
    ComplexMatrix inputs;    // m x (steps+1)
    RealVector energy;       // |x(t)|_M^2
    bool compatible = true;  // B x0 = Q u(0) held at start
};

/// Implicit-midpoint trajectory of the kernel-compressed dynamics with the
/// inhomogeneous boundary data lifted through the right inverse. Incompatible
/// initial data downgrades `compatible` instead of failing.
[[nodiscard]] SimulationResult simulate(const DiscreteBoundaryNode& node,
                                        const ComplexVector& x0, const InputSignal& input,
                                        Real tau, Real dt, const SimulationOptions& opts = {});

[[nodiscard]] SimulationResult simulate(const ClosedLoopSystem& closed,
                                        const ComplexVector& x0_extended,
                                        const InputSignal& input, Real tau, Real dt,
                                        const SimulationOptions& opts = {});

struct ObserverErrorTrace {
    RealVector times;
    RealVector error;  // |xhat(t) - x(t)|_M in the plant norm
};

[[nodiscard]] ObserverErrorTrace observer_error_trace(const ClosedLoopSystem& closed,
                                                      const ComplexVector& x0,
                                                      const ComplexVector& xhat0,
                                                      Real tau, Real dt);

enum class DecayModel { Exponential, Power };

struct DecayFit {
    Real value = 0;      // Exponential: decay rate of the trace itself;
                         // Power: state-norm exponent (half the energy slope)
    Real window_lo = 0;
    Real window_hi = 0;
    Real residual = 0;   // RMS residual in log coordinates
};

/// Least-squares decay fit of a positive trace (typically the energy trace)
/// over a window; the default window drops the initial transient and the
/// late discrete-exponential tail.
[[nodiscard]] DecayFit decay_fit(const RealVector& times, const RealVector& values,
                                 DecayModel model, Real window_lo = -1, Real window_hi = -1);

}  // namespace bcslab
