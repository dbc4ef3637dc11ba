#pragma once

#include "bcslab/types.hpp"

#include <Eigen/Cholesky>

namespace bcslab {

/// Hermitian positive-definite matrix realizing a state-space inner product,
/// with a cached Cholesky factorization M = L L^H.
///
/// Norms and congruences use the upper factor F := L^H, so that
/// |x|_M = |F x|_2 and the M-operator norm of A equals the 2-norm of
/// F A F^{-1}.
class GramMatrix {
public:
    GramMatrix() = default;

    /// Validates Hermitian symmetry (1e-12 relative) and positive
    /// definiteness; throws NumericError otherwise.
    explicit GramMatrix(ComplexMatrix m);

    static GramMatrix identity(Index n);

    [[nodiscard]] Index size() const { return matrix_.rows(); }
    [[nodiscard]] bool empty() const { return matrix_.rows() == 0; }
    [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
    [[nodiscard]] bool is_identity() const { return is_identity_; }

    /// <x, y>_M = y^H M x
    [[nodiscard]] Complex inner(const ComplexVector& x, const ComplexVector& y) const;
    [[nodiscard]] Real norm(const ComplexVector& x) const;
    [[nodiscard]] Real squared_norm(const ComplexVector& x) const;

    /// F X with F = L^H (columnwise).
    [[nodiscard]] ComplexMatrix factor_apply(const ComplexMatrix& x) const;
    /// F^{-1} Y.
    [[nodiscard]] ComplexMatrix factor_solve(const ComplexMatrix& y) const;
    /// F A F^{-1}; the congruence whose 2-norm/singular values realize the
    /// M-weighted operator norm of A.
    [[nodiscard]] ComplexMatrix congruence(const ComplexMatrix& a) const;

    /// M X.
    [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& x) const;
    /// M^{-1} Y.
    [[nodiscard]] ComplexMatrix solve(const ComplexMatrix& y) const;

private:
    ComplexMatrix matrix_;
    Eigen::LLT<ComplexMatrix> llt_;
    bool is_identity_ = false;
};

}  // namespace bcslab
