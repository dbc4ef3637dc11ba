#include "bcslab/node.hpp"

#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace bcslab {

namespace {

Real rank_threshold(const ComplexMatrix& b, const Eigen::VectorXd& diag) {
    if (diag.size() == 0) return 0.0;
    return std::max(b.rows(), b.cols()) * Eigen::NumTraits<Real>::epsilon() * diag.cwiseAbs().maxCoeff();
}

}  // namespace

Index row_rank(const ComplexMatrix& b) {
    if (b.rows() == 0 || b.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(b.adjoint());
    Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
    const Real tol = rank_threshold(b, diag);
    Index rank = 0;
    for (Index i = 0; i < diag.size(); ++i) {
        if (diag(i) > tol) ++rank;
    }
    return rank;
}

ComplexMatrix orthonormal_kernel(const ComplexMatrix& b, const GramMatrix& m) {
    const Index n = m.size();
    ComplexMatrix k0;
    if (b.rows() == 0) {
        // ker(B) is everything; the M-orthonormal basis is U^{-1} with M = U^H U.
        return m.factor_solve(ComplexMatrix::Identity(n, n));
    } else {
        if (b.cols() != n) throw NumericError("orthonormal_kernel: dimension mismatch");
        Eigen::ColPivHouseholderQR<ComplexMatrix> qr(b.adjoint());
        Eigen::VectorXd diag = qr.matrixR().diagonal().cwiseAbs();
        const Real tol = rank_threshold(b, diag);
        Index rank = 0;
        for (Index i = 0; i < diag.size(); ++i) {
            if (diag(i) > tol) ++rank;
        }
        ComplexMatrix tail = ComplexMatrix::Zero(n, n - rank);
        tail.bottomRows(n - rank).setIdentity();
        k0 = qr.householderQ() * tail;
    }
    // M-orthonormalize: K = K0 L^{-H} with K0^H M K0 = L L^H.
    ComplexMatrix g = k0.adjoint() * m.apply(k0);
    Eigen::LLT<ComplexMatrix> llt((g + g.adjoint()) * 0.5);
    if (llt.info() != Eigen::Success) {
        throw NumericError("orthonormal_kernel: Gram restriction not positive definite");
    }
    return llt.matrixU().solve<Eigen::OnTheRight>(k0);  // K0 U^{-1}, U = L^H
}

DiscreteBoundaryNode make_node_with_test(
    ComplexMatrix op_a, ComplexMatrix op_b, ComplexMatrix op_c,
    ComplexMatrix op_q, ComplexMatrix op_bi, GramMatrix gram,
    ComplexMatrix test, SpaceLabels labels) {
    DiscreteBoundaryNode node;
    node.op_a = std::move(op_a);
    node.op_b = std::move(op_b);
    node.op_c = std::move(op_c);
    node.op_q = std::move(op_q);
    node.op_bi = std::move(op_bi);
    node.gram = std::move(gram);
    node.test = std::move(test);
    node.labels = std::move(labels);
    return node;
}

DiscreteBoundaryNode make_node(
    ComplexMatrix op_a, ComplexMatrix op_b, ComplexMatrix op_c,
    ComplexMatrix op_q, ComplexMatrix op_bi, GramMatrix gram,
    SpaceLabels labels) {
    ComplexMatrix kernel = orthonormal_kernel(op_b, gram);
    ComplexMatrix test = kernel.adjoint() * gram.matrix();
    return make_node_with_test(std::move(op_a), std::move(op_b), std::move(op_c),
                               std::move(op_q), std::move(op_bi), std::move(gram),
                               std::move(test), std::move(labels));
}

ValidationReport validate(const DiscreteBoundaryNode& node) {
    ValidationReport rep;
    const Index n = node.op_a.rows();
    const Index nb = node.op_b.rows();
    const Index m = node.op_bi.cols();

    rep.dims_consistent =
        node.op_a.cols() == n &&
        (nb == 0 || node.op_b.cols() == n) &&
        (node.op_c.rows() == 0 || node.op_c.cols() == n) &&
        node.op_q.rows() == nb && (node.op_q.cols() == m || nb == 0) &&
        node.op_bi.rows() == n &&
        node.gram.size() == n &&
        node.test.rows() == n - nb && node.test.cols() == n;
    if (!rep.dims_consistent) rep.issues.push_back("inconsistent operator dimensions");

    rep.entries_finite = node.op_a.allFinite() && node.op_b.allFinite() &&
                         node.op_c.allFinite() && node.op_q.allFinite() &&
                         node.op_bi.allFinite() && node.test.allFinite();
    if (!rep.entries_finite) rep.issues.push_back("non-finite entries");

    rep.gram_ok = !node.gram.empty() || n == 0;
    if (!rep.gram_ok) rep.issues.push_back("Gram matrix missing");

    rep.boundary_rank = (nb > 0 && rep.dims_consistent) ? row_rank(node.op_b) : 0;
    rep.boundary_full_rank = (nb == 0) || (rep.boundary_rank == nb);
    if (!rep.boundary_full_rank) {
        std::ostringstream os;
        os << "boundary trace rank " << rep.boundary_rank << " < " << nb;
        rep.issues.push_back(os.str());
    }

    rep.valid = rep.dims_consistent && rep.entries_finite && rep.gram_ok && rep.boundary_full_rank;
    return rep;
}

RestrictedGenerator restrict_operator(
    const DiscreteBoundaryNode& node, const ComplexMatrix& op,
    const ComplexMatrix& boundary) {
    const Index n = node.state_dim();
    const Index nb = boundary.rows();
    if (nb > 0 && row_rank(boundary) < nb) {
        throw RankDeficientBoundary("restrict_operator: boundary trace lost row rank");
    }
    ComplexMatrix kernel = orthonormal_kernel(boundary, node.gram);
    if (kernel.cols() != node.test.rows()) {
        throw RankDeficientBoundary("restrict_operator: kernel/test dimension mismatch");
    }
    ComplexMatrix wk = node.test * kernel;
    ComplexMatrix wak = node.test * (op * kernel);
    RestrictedGenerator gen;
    gen.kernel_basis = std::move(kernel);
    try {
        gen.mat_a = solve_linear(wk, wak);
    } catch (const SingularMatrix&) {
        throw RankDeficientBoundary("restrict_operator: test and trial spaces are not transversal");
    }
    gen.gram = GramMatrix::identity(n - nb);
    return gen;
}

RestrictedGenerator restricted_generator(const DiscreteBoundaryNode& node) {
    return restrict_operator(node, node.op_a, node.op_b);
}

ComplexMatrix right_inverse(const DiscreteBoundaryNode& node) {
    const Index nb = node.boundary_dim();
    if (nb == 0) return ComplexMatrix(node.state_dim(), 0);
    if (row_rank(node.op_b) < nb) {
        throw RankDeficientBoundary("right_inverse: boundary trace is row rank deficient");
    }
    ComplexMatrix minv_bh = node.gram.solve(node.op_b.adjoint());  // n x nb
    ComplexMatrix small = node.op_b * minv_bh;                     // nb x nb
    return minv_bh * solve_linear(small, ComplexMatrix::Identity(nb, nb));
}

namespace {

// Assembles and factors the bordered operator [test (lambda - A); B].
ComplexMatrix bordered_solve(const DiscreteBoundaryNode& node, Complex lambda,
                             const ComplexMatrix& interior_rhs,
                             const ComplexMatrix& boundary_rhs,
                             const char* who) {
    const Index n = node.state_dim();
    const Index nb = node.boundary_dim();
    ComplexMatrix top = node.test * (lambda * ComplexMatrix::Identity(n, n) - node.op_a);
    ComplexMatrix full(n, n);
    full.topRows(n - nb) = top;
    if (nb > 0) full.bottomRows(nb) = node.op_b;
    ComplexMatrix rhs(n, interior_rhs.cols());
    rhs.topRows(n - nb) = interior_rhs;
    if (nb > 0) rhs.bottomRows(nb) = boundary_rhs;
    try {
        return solve_linear(full, rhs);
    } catch (const SingularMatrix&) {
        std::ostringstream os;
        os << who << ": bordered system singular at lambda = (" << lambda.real()
           << ", " << lambda.imag() << ")";
        throw SingularAtLambda(os.str());
    }
}

}  // namespace

TransferSample transfer(const DiscreteBoundaryNode& node, Complex lambda) {
    ComplexMatrix interior = node.test * node.op_bi;  // (n - nb) x m
    TransferSample s;
    s.lambda = lambda;
    s.h = bordered_solve(node, lambda, interior, node.op_q, "transfer");
    s.p = node.op_c * s.h;
    return s;
}

ComplexMatrix lifted_resolvent(const DiscreteBoundaryNode& node, Complex lambda) {
    const Index n = node.state_dim();
    const Index nb = node.boundary_dim();
    ComplexMatrix interior = node.test;  // test * I
    ComplexMatrix boundary = ComplexMatrix::Zero(nb, n);
    return bordered_solve(node, lambda, interior, boundary, "lifted_resolvent");
}

ComplexMatrix adjoint_input(const DiscreteBoundaryNode& node) {
    return node.op_bi.adjoint() * node.gram.matrix();
}

ComplexMatrix adjoint_output(const DiscreteBoundaryNode& node) {
    return node.gram.solve(node.op_c.adjoint());
}

Real passivity_deviation(const DiscreteBoundaryNode& node, const ComplexVector& x) {
    const Complex ax_x = node.gram.inner(node.op_a * x, x);
    Complex bc(0, 0);
    if (node.boundary_dim() > 0) {
        if (node.boundary_dim() != node.output_dim()) {
            throw NumericError("passivity_deviation: boundary and output dimensions differ");
        }
        ComplexVector bx = node.op_b * x;
        ComplexVector cx = node.op_c * x;
        bc = cx.dot(bx);  // <Bx, Cx> = (Cx)^H (Bx)
    }
    return ax_x.real() - bc.real();
}

}  // namespace bcslab
