#pragma once

#include "bcslab/gram.hpp"
#include "bcslab/numerics.hpp"
#include "bcslab/types.hpp"

#include <string>
#include <vector>

namespace bcslab {

/// Finite-dimensional boundary node (B, A, C, Q, Bi) on a weighted state
/// space. `op_a` acts on the full DOF vector; `op_b` is the boundary trace
/// (n_b rows, full row rank for a valid node); `op_c` the output map; `op_q`
/// routes the input to the boundary rows; `op_bi` is the interior input map.
///
/// `test` holds the residual test rows: frequency-domain problems are posed
/// as  test * ((lambda - A) x - Bi u) = 0  together with  B x = Q u.  For a
/// node built from scratch the test rows are K^H M with K an M-orthonormal
/// basis of ker(B); nodes produced by feedback or composition inherit the
/// test rows of their parents, which keeps the resolvent algebra of the
/// derived nodes exact at matrix level.
struct DiscreteBoundaryNode {
    ComplexMatrix op_a;   // n x n
    ComplexMatrix op_b;   // n_b x n
    ComplexMatrix op_c;   // p x n
    ComplexMatrix op_q;   // n_b x m
    ComplexMatrix op_bi;  // n x m
    GramMatrix gram;      // n x n
    ComplexMatrix test;   // (n - n_b) x n
    SpaceLabels labels;

    [[nodiscard]] Index state_dim() const { return op_a.rows(); }
    [[nodiscard]] Index boundary_dim() const { return op_b.rows(); }
    [[nodiscard]] Index input_dim() const { return op_bi.cols(); }
    [[nodiscard]] Index output_dim() const { return op_c.rows(); }
};

/// Numerical row rank via column-pivoted QR of b^H.
[[nodiscard]] Index row_rank(const ComplexMatrix& b);

/// M-orthonormal basis of ker(b): columns K with b K = 0 and K^H M K = I.
[[nodiscard]] ComplexMatrix orthonormal_kernel(const ComplexMatrix& b, const GramMatrix& m);

/// Builds a node and fills in the default test rows K^H M.
[[nodiscard]] DiscreteBoundaryNode make_node(
    ComplexMatrix op_a, ComplexMatrix op_b, ComplexMatrix op_c,
    ComplexMatrix op_q, ComplexMatrix op_bi, GramMatrix gram,
    SpaceLabels labels = {});

/// Same, with explicit test rows (used by node algebra).
[[nodiscard]] DiscreteBoundaryNode make_node_with_test(
    ComplexMatrix op_a, ComplexMatrix op_b, ComplexMatrix op_c,
    ComplexMatrix op_q, ComplexMatrix op_bi, GramMatrix gram,
    ComplexMatrix test, SpaceLabels labels = {});

struct ValidationReport {
    bool valid = false;
    bool dims_consistent = false;
    bool entries_finite = false;
    bool gram_ok = false;
    bool boundary_full_rank = false;
    Index boundary_rank = 0;
    std::vector<std::string> issues;
};

/// Checks dimension consistency, finiteness, Gram positivity, and full row
/// rank of the boundary trace. Failures are reported, not thrown.
[[nodiscard]] ValidationReport validate(const DiscreteBoundaryNode& node);

/// Compression of op_a onto ker(op_b): trial basis K (M-orthonormal kernel)
/// and generator matrix G with (test K) G = test A K. In the trial
/// coordinates the Gram matrix is the identity.
struct RestrictedGenerator {
    ComplexMatrix kernel_basis;  // n x (n - n_b)
    ComplexMatrix mat_a;         // (n - n_b) x (n - n_b)
    GramMatrix gram;             // identity in trial coordinates
};

[[nodiscard]] RestrictedGenerator restricted_generator(const DiscreteBoundaryNode& node);

/// Restriction of a different interior operator to a different kernel, with
/// the node's test rows. Used for the gain-modified generators.
[[nodiscard]] RestrictedGenerator restrict_operator(
    const DiscreteBoundaryNode& node, const ComplexMatrix& op,
    const ComplexMatrix& boundary);

/// M-minimal-norm right inverse R of the boundary trace: B R = I.
[[nodiscard]] ComplexMatrix right_inverse(const DiscreteBoundaryNode& node);

struct TransferSample {
    Complex lambda;
    ComplexMatrix h;  // n x m state response
    ComplexMatrix p;  // p x m output response
};

/// Transfer functions H(lambda), P(lambda) via one bordered solve per input
/// column. Throws SingularAtLambda at (numerical) eigenvalues.
[[nodiscard]] TransferSample transfer(const DiscreteBoundaryNode& node, Complex lambda);

/// The state-space resolvent surrogate: the n x n map y -> x with
/// test((lambda - A) x - y) = 0 and B x = 0. Its poles are the eigenvalues
/// of the restricted generator.
[[nodiscard]] ComplexMatrix lifted_resolvent(const DiscreteBoundaryNode& node, Complex lambda);

/// M-adjoint of the interior input map: Bi^H M (m x n), so that
/// <Bi u, x>_M = <u, adjoint_input(node) x>.
[[nodiscard]] ComplexMatrix adjoint_input(const DiscreteBoundaryNode& node);

/// M-adjoint of the output map: M^{-1} C^H (n x p).
[[nodiscard]] ComplexMatrix adjoint_output(const DiscreteBoundaryNode& node);

/// Re<A x, x>_M - Re<B x, C x> for one vector; requires n_b == p or n_b == 0.
[[nodiscard]] Real passivity_deviation(const DiscreteBoundaryNode& node, const ComplexVector& x);

}  // namespace bcslab
