#pragma once

#include "bcslab/gram.hpp"
#include "bcslab/types.hpp"

#include <Eigen/LU>

#include <memory>
#include <utility>
#include <vector>

namespace bcslab {

/// Dense LU solve with one step of iterative refinement.
/// Throws SingularMatrix unless the relative residual is <= 1e-10.
[[nodiscard]] ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b);
[[nodiscard]] ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

/// Solves the 2x2 block system
///   [a11 a12] [x1]   [b1]
///   [a21 a22] [x2] = [b2]
/// where the blocks may be rectangular as long as the assembled matrix is
/// square. Returns (x1, x2) split at a11.cols().
[[nodiscard]] std::pair<ComplexVector, ComplexVector> solve_bordered(
    const ComplexMatrix& a11, const ComplexMatrix& a12,
    const ComplexMatrix& a21, const ComplexMatrix& a22,
    const ComplexVector& b1, const ComplexVector& b2);

struct EigenPair {
    Complex value;
    ComplexVector vector;
};

/// Full dense spectrum, pairs sorted by real part descending (imaginary part
/// descending on ties). Each returned pair satisfies
/// |A v - lambda v| <= 1e-8 |A| |v|; otherwise NoConvergence is thrown.
[[nodiscard]] std::vector<EigenPair> eigen_spectrum(const ComplexMatrix& a);

/// Eigenvalues only, same ordering.
[[nodiscard]] ComplexVector eigenvalues_only(const ComplexMatrix& a);

/// Smallest singular value of F A F^{-1}, where F is the Cholesky factor of
/// the Gram matrix; this is the reciprocal of the M-weighted norm of A^{-1}.
/// Returns 0 for a numerically singular A.
[[nodiscard]] Real weighted_min_singular(const ComplexMatrix& a, const GramMatrix& m);

/// Largest singular value of F A F^{-1} (the M-weighted operator norm).
[[nodiscard]] Real weighted_operator_norm(const ComplexMatrix& a, const GramMatrix& m);

/// One implicit-midpoint step:
///   x_next = (I - dt/2 A)^{-1} ((I + dt/2 A) x + dt B u_mid).
[[nodiscard]] ComplexVector implicit_midpoint_step(
    const ComplexMatrix& a, const ComplexMatrix& b,
    const ComplexVector& x, const ComplexVector& u_mid, Real dt);

/// Reusable implicit-midpoint stepper: factors (I - dt/2 A) once and steps
/// many states/right-hand sides. Uses a real fast path when A is real.
class MidpointStepper {
public:
    MidpointStepper(const ComplexMatrix& a, Real dt);

    /// (I - dt/2 A)^{-1} ((I + dt/2 A) X + R), columnwise; R may be empty.
    [[nodiscard]] ComplexMatrix step(const ComplexMatrix& x, const ComplexMatrix& r) const;
    [[nodiscard]] ComplexMatrix step(const ComplexMatrix& x) const;

    [[nodiscard]] Real dt() const { return dt_; }

private:
    ComplexMatrix a_;
    RealMatrix a_real_;
    Eigen::PartialPivLU<ComplexMatrix> lu_;
    Eigen::PartialPivLU<RealMatrix> lu_real_;
    bool real_path_ = false;
    Real dt_ = 0;
};

}  // namespace bcslab
