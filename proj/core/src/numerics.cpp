#include "bcslab/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace bcslab {

namespace {

constexpr Real kSolveResidualTol = 1e-10;
constexpr Index kDirectSvdLimit = 160;

// xorshift-based deterministic start vectors; independent of std::random.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() {  // (0,1)
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }
};

ComplexMatrix deterministic_start(Index rows, Index cols, uint64_t seed) {
    SplitMix64 rng(seed);
    ComplexMatrix v(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            v(i, j) = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        }
    }
    return v;
}

}  // namespace

ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols()) throw NumericError("solve_linear: matrix must be square");
    if (a.rows() != b.rows()) throw NumericError("solve_linear: dimension mismatch");
    if (a.rows() == 0) return ComplexMatrix(0, b.cols());

    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    ComplexMatrix x = lu.solve(b);
    ComplexMatrix r = b - a * x;
    x += lu.solve(r);
    r = b - a * x;

    const Real bnorm = b.norm();
    const Real scale = std::max(bnorm, a.norm() * x.norm());
    if (!x.allFinite() || (scale > 0 && r.norm() > kSolveResidualTol * scale)) {
        throw SingularMatrix("solve_linear: residual too large, matrix numerically singular");
    }
    return x;
}

ComplexVector solve_linear(const ComplexMatrix& a, const ComplexVector& b) {
    return ComplexVector(solve_linear(a, ComplexMatrix(b)));
}

std::pair<ComplexVector, ComplexVector> solve_bordered(
    const ComplexMatrix& a11, const ComplexMatrix& a12,
    const ComplexMatrix& a21, const ComplexMatrix& a22,
    const ComplexVector& b1, const ComplexVector& b2) {
    const Index p = a11.rows(), s = a21.rows();
    const Index q = a11.cols(), r = a12.cols();
    if (a12.rows() != p || a22.rows() != s || a21.cols() != q || a22.cols() != r) {
        throw NumericError("solve_bordered: inconsistent block dimensions");
    }
    if (b1.size() != p || b2.size() != s) {
        throw NumericError("solve_bordered: right-hand side dimension mismatch");
    }
    if (p + s != q + r) {
        throw NumericError("solve_bordered: assembled system is not square");
    }
    ComplexMatrix full(p + s, q + r);
    full.topLeftCorner(p, q) = a11;
    full.topRightCorner(p, r) = a12;
    full.bottomLeftCorner(s, q) = a21;
    full.bottomRightCorner(s, r) = a22;
    ComplexVector rhs(p + s);
    rhs.head(p) = b1;
    rhs.tail(s) = b2;
    ComplexVector x = solve_linear(full, rhs);
    return {x.head(q), x.tail(r)};
}

std::vector<EigenPair> eigen_spectrum(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw NumericError("eigen_spectrum: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return {};

    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) {
        throw NoConvergence("eigen_spectrum: QR iteration failed to converge");
    }
    std::vector<EigenPair> pairs(static_cast<size_t>(n));
    for (Index k = 0; k < n; ++k) {
        pairs[static_cast<size_t>(k)] = {es.eigenvalues()(k), es.eigenvectors().col(k)};
    }
    std::sort(pairs.begin(), pairs.end(), [](const EigenPair& l, const EigenPair& r) {
        if (l.value.real() != r.value.real()) return l.value.real() > r.value.real();
        return l.value.imag() > r.value.imag();
    });

    const Real anorm = a.norm();
    for (const EigenPair& p : pairs) {
        const Real res = (a * p.vector - p.value * p.vector).norm();
        if (res > 1e-8 * std::max(anorm, Real(1)) * p.vector.norm()) {
            throw NoConvergence("eigen_spectrum: residual bound violated");
        }
    }
    return pairs;
}

ComplexVector eigenvalues_only(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw NumericError("eigenvalues_only: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return ComplexVector(0);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw NoConvergence("eigenvalues_only: QR iteration failed to converge");
    }
    ComplexVector vals = es.eigenvalues();
    std::sort(vals.data(), vals.data() + n, [](Complex l, Complex r) {
        if (l.real() != r.real()) return l.real() > r.real();
        return l.imag() > r.imag();
    });
    return vals;
}

namespace {

// Smallest singular value via block inverse iteration on B^H B using an LU
// factorization of B. Falls back to a dense SVD if iteration stalls.
Real min_singular_value(const ComplexMatrix& b) {
    const Index n = b.rows();
    if (n == 0) return 0.0;
    if (n <= kDirectSvdLimit) {
        Eigen::JacobiSVD<ComplexMatrix> svd(b);
        return svd.singularValues()(n - 1);
    }

    Eigen::PartialPivLU<ComplexMatrix> lu(b);
    const Index block = std::min<Index>(6, n);
    ComplexMatrix v = deterministic_start(n, block, 0x5eed5eedULL);
    {
        Eigen::HouseholderQR<ComplexMatrix> qr(v);
        v = qr.householderQ() * ComplexMatrix::Identity(n, block);
    }
    Real prev = -1.0;
    for (int it = 0; it < 120; ++it) {
        ComplexMatrix y = lu.adjoint().solve(v);
        ComplexMatrix w = lu.solve(y);
        if (!w.allFinite()) return 0.0;  // exactly singular pivot
        Eigen::HouseholderQR<ComplexMatrix> qr(w);
        v = qr.householderQ() * ComplexMatrix::Identity(n, block);
        ComplexMatrix s = b * v;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s.adjoint() * s);
        const Real cur = std::sqrt(std::max(Real(0), es.eigenvalues()(0)));
        if (it > 2 && std::abs(cur - prev) <= 1e-13 * std::max(cur, Real(1e-300))) {
            return cur;
        }
        prev = cur;
    }
    Eigen::BDCSVD<ComplexMatrix> svd(b);
    return svd.singularValues()(n - 1);
}

}  // namespace

Real weighted_min_singular(const ComplexMatrix& a, const GramMatrix& m) {
    if (a.rows() != a.cols()) throw NumericError("weighted_min_singular: matrix must be square");
    if (m.size() != a.rows()) throw NumericError("weighted_min_singular: Gram size mismatch");
    ComplexMatrix b = m.congruence(a);
    if (!b.allFinite()) {
        throw SingularMatrix("weighted_min_singular: Gram factor application failed");
    }
    return min_singular_value(b);
}

Real weighted_operator_norm(const ComplexMatrix& a, const GramMatrix& m) {
    if (a.rows() != a.cols()) throw NumericError("weighted_operator_norm: matrix must be square");
    ComplexMatrix b = m.congruence(a);
    const Index n = b.rows();
    if (n == 0) return 0.0;
    if (n <= kDirectSvdLimit) {
        Eigen::JacobiSVD<ComplexMatrix> svd(b);
        return svd.singularValues()(0);
    }
    // Power iteration on B^H B.
    ComplexVector v = deterministic_start(n, 1, 0xb1a5edULL);
    v.normalize();
    Real prev = -1.0;
    for (int it = 0; it < 200; ++it) {
        ComplexVector w = b.adjoint() * (b * v);
        const Real cur = std::sqrt(w.norm());
        if (w.norm() == 0) return 0.0;
        v = w / w.norm();
        if (it > 2 && std::abs(cur - prev) <= 1e-12 * std::max(cur, Real(1e-300))) return cur;
        prev = cur;
    }
    Eigen::BDCSVD<ComplexMatrix> svd(b);
    return svd.singularValues()(0);
}

ComplexVector implicit_midpoint_step(
    const ComplexMatrix& a, const ComplexMatrix& b,
    const ComplexVector& x, const ComplexVector& u_mid, Real dt) {
    if (a.rows() != a.cols() || a.rows() != x.size()) {
        throw NumericError("implicit_midpoint_step: dimension mismatch");
    }
    ComplexVector rhs = x + (0.5 * dt) * (a * x);
    if (b.size() > 0 && u_mid.size() > 0) {
        rhs += dt * (b * u_mid);
    }
    ComplexMatrix lhs = ComplexMatrix::Identity(a.rows(), a.rows()) - (0.5 * dt) * a;
    return solve_linear(lhs, rhs);
}

MidpointStepper::MidpointStepper(const ComplexMatrix& a, Real dt) : dt_(dt) {
    if (a.rows() != a.cols()) throw NumericError("MidpointStepper: matrix must be square");
    const Index n = a.rows();
    real_path_ = a.imag().isZero(0.0);
    if (real_path_) {
        a_real_ = a.real();
        RealMatrix lhs = RealMatrix::Identity(n, n) - (0.5 * dt) * a_real_;
        lu_real_.compute(lhs);
    } else {
        a_ = a;
        ComplexMatrix lhs = ComplexMatrix::Identity(n, n) - (0.5 * dt) * a;
        lu_.compute(lhs);
    }
}

ComplexMatrix MidpointStepper::step(const ComplexMatrix& x, const ComplexMatrix& r) const {
    const bool has_r = r.size() > 0;
    if (real_path_) {
        const Index n = a_real_.rows();
        const Index cols = x.cols();
        RealMatrix packed(n, 2 * cols);
        packed.leftCols(cols) = x.real();
        packed.rightCols(cols) = x.imag();
        RealMatrix rhs = packed + (0.5 * dt_) * (a_real_ * packed);
        if (has_r) {
            rhs.leftCols(cols) += r.real();
            rhs.rightCols(cols) += r.imag();
        }
        RealMatrix sol = lu_real_.solve(rhs);
        ComplexMatrix out(n, cols);
        out.real() = sol.leftCols(cols);
        out.imag() = sol.rightCols(cols);
        if (!out.allFinite()) throw SingularMatrix("MidpointStepper: singular step matrix");
        return out;
    }
    ComplexMatrix rhs = x + (0.5 * dt_) * (a_ * x);
    if (has_r) rhs += r;
    ComplexMatrix out = lu_.solve(rhs);
    if (!out.allFinite()) throw SingularMatrix("MidpointStepper: singular step matrix");
    return out;
}

ComplexMatrix MidpointStepper::step(const ComplexMatrix& x) const {
    return step(x, ComplexMatrix());
}

}  // namespace bcslab
