#include "bcslab/gram.hpp"

namespace bcslab {

GramMatrix::GramMatrix(ComplexMatrix m) {
    if (m.rows() != m.cols()) {
        throw NumericError("GramMatrix: matrix must be square");
    }
    const Real scale = m.norm();
    if (m.rows() > 0) {
        const Real asym = (m - m.adjoint()).norm();
        if (asym > 1e-12 * std::max(scale, Real(1))) {
            throw NumericError("GramMatrix: matrix is not Hermitian to 1e-12 relative");
        }
    }
    matrix_ = ((m + m.adjoint()) * 0.5).eval();
    is_identity_ = matrix_.isIdentity(0.0);
    llt_.compute(matrix_);
    if (matrix_.rows() > 0 && llt_.info() != Eigen::Success) {
        throw NumericError("GramMatrix: matrix is not positive definite (Cholesky failed)");
    }
}

GramMatrix GramMatrix::identity(Index n) {
    return GramMatrix(ComplexMatrix::Identity(n, n));
}

Complex GramMatrix::inner(const ComplexVector& x, const ComplexVector& y) const {
    if (is_identity_) return y.dot(x);
    return y.dot(matrix_ * x);
}

Real GramMatrix::squared_norm(const ComplexVector& x) const {
    if (is_identity_) return x.squaredNorm();
    return std::max(Real(0), inner(x, x).real());
}

Real GramMatrix::norm(const ComplexVector& x) const {
    return std::sqrt(squared_norm(x));
}

ComplexMatrix GramMatrix::factor_apply(const ComplexMatrix& x) const {
    if (is_identity_) return x;
    return llt_.matrixU() * x;
}

ComplexMatrix GramMatrix::factor_solve(const ComplexMatrix& y) const {
    if (is_identity_) return y;
    return llt_.matrixU().solve(y);
}

ComplexMatrix GramMatrix::congruence(const ComplexMatrix& a) const {
    if (is_identity_) return a;
    ComplexMatrix right = llt_.matrixU().solve<Eigen::OnTheRight>(a);  // a U^{-1}
    return llt_.matrixU() * right;
}

ComplexMatrix GramMatrix::apply(const ComplexMatrix& x) const {
    if (is_identity_) return x;
    return matrix_ * x;
}

ComplexMatrix GramMatrix::solve(const ComplexMatrix& y) const {
    if (is_identity_) return y;
    return llt_.solve(y);
}

}  // namespace bcslab
