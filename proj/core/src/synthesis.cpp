#include "bcslab/synthesis.hpp"

#include <utility>

namespace bcslab {

namespace {

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

void require_gain_dims(const DiscreteBoundaryNode& plant, const GainSet& g) {
    const Index n = plant.state_dim(), nb = plant.boundary_dim();
    const Index m = plant.input_dim(), p = plant.output_dim();
    if (g.op_k.rows() != m || g.op_k.cols() != n) {
        throw NumericError("gains: K must be input_dim x state_dim");
    }
    if (g.op_l.rows() != nb || (nb > 0 && g.op_l.cols() != p)) {
        throw NumericError("gains: L must be boundary_dim x output_dim");
    }
    if (g.op_li.rows() != n || g.op_li.cols() != p) {
        throw NumericError("gains: Li must be state_dim x output_dim");
    }
}

SpaceLabels product_labels(const SpaceLabels& l1, const SpaceLabels& l2) {
    SpaceLabels out;
    out.boundary_input = l1.boundary_input + " x " + l2.boundary_input;
    out.input = l1.input + " x " + l2.input;
    out.state = l1.state + " x " + l2.state;
    out.output = l1.output + " x " + l2.output;
    return out;
}

}  // namespace

DiscreteBoundaryNode feedback_transform(const DiscreteBoundaryNode& node, const ComplexMatrix& k) {
    if (k.rows() != node.input_dim() || k.cols() != node.output_dim()) {
        throw NumericError("feedback_transform: K must be input_dim x output_dim");
    }
    ComplexMatrix kc = k * node.op_c;
    ComplexMatrix op_a = node.op_a + node.op_bi * kc;
    ComplexMatrix op_b = node.op_b - node.op_q * kc;
    if (node.boundary_dim() > 0 && row_rank(op_b) < node.boundary_dim()) {
        throw RankDeficientBoundary("feedback_transform: B - Q K C lost row rank");
    }
    return make_node_with_test(std::move(op_a), std::move(op_b), node.op_c, node.op_q,
                               node.op_bi, node.gram, node.test, node.labels);
}

DiscreteBoundaryNode couple(const DiscreteBoundaryNode& n1, const DiscreteBoundaryNode& n2,
                            const ComplexMatrix& k1, const ComplexMatrix& k2) {
    if (k1.rows() != n1.input_dim() || k1.cols() != n2.output_dim()) {
        throw NumericError("couple: K1 must map Y2 -> U1");
    }
    if (k2.rows() != n2.input_dim() || k2.cols() != n1.output_dim()) {
        throw NumericError("couple: K2 must map Y1 -> U2");
    }
    const Index na = n1.state_dim(), nb2 = n2.state_dim();

    ComplexMatrix op_a = block_diag(n1.op_a, n2.op_a);
    op_a.topRightCorner(na, nb2) = n1.op_bi * k1 * n2.op_c;
    op_a.bottomLeftCorner(nb2, na) = n2.op_bi * k2 * n1.op_c;

    ComplexMatrix op_b = block_diag(n1.op_b, n2.op_b);
    if (n1.boundary_dim() > 0) {
        op_b.topRightCorner(n1.boundary_dim(), nb2) = -n1.op_q * k1 * n2.op_c;
    }
    if (n2.boundary_dim() > 0) {
        op_b.bottomLeftCorner(n2.boundary_dim(), na) = -n2.op_q * k2 * n1.op_c;
    }

    GramMatrix gram(block_diag(n1.gram.matrix(), n2.gram.matrix()));
    return make_node_with_test(std::move(op_a), std::move(op_b),
                               block_diag(n1.op_c, n2.op_c),
                               block_diag(n1.op_q, n2.op_q),
                               block_diag(n1.op_bi, n2.op_bi),
                               std::move(gram),
                               block_diag(n1.test, n2.test),
                               product_labels(n1.labels, n2.labels));
}

DiscreteBoundaryNode cascade(const DiscreteBoundaryNode& n1, const DiscreteBoundaryNode& n2,
                             const ComplexMatrix& k) {
    ComplexMatrix zero = ComplexMatrix::Zero(n2.input_dim(), n1.output_dim());
    return couple(n1, n2, k, zero);
}

StabilizedPair stabilized_pair(const DiscreteBoundaryNode& plant, const GainSet& gains) {
    require_gain_dims(plant, gains);
    StabilizedPair out;
    {
        ComplexMatrix op = plant.op_a + plant.op_bi * gains.op_k;
        ComplexMatrix boundary = plant.op_b - plant.op_q * gains.op_k;
        out.gen_k = restrict_operator(plant, op, boundary);
    }
    {
        ComplexMatrix op = plant.op_a + gains.op_li * plant.op_c;
        ComplexMatrix boundary = plant.op_b - gains.op_l * plant.op_c;
        out.gen_l = restrict_operator(plant, op, boundary);
    }
    return out;
}

ClosedLoopSystem assemble_closed_loop(const DiscreteBoundaryNode& plant, const GainSet& gains) {
    require_gain_dims(plant, gains);
    const Index n = plant.state_dim(), nb = plant.boundary_dim();
    const Index m = plant.input_dim(), p = plant.output_dim();

    const ComplexMatrix bik = plant.op_bi * gains.op_k;          // n x n
    const ComplexMatrix lic = gains.op_li * plant.op_c;          // n x n
    const ComplexMatrix qk = plant.op_q * gains.op_k;            // nb x n
    const ComplexMatrix lc = gains.op_l * plant.op_c;            // nb x n

    ComplexMatrix op_a(2 * n, 2 * n);
    op_a.topLeftCorner(n, n) = plant.op_a;
    op_a.topRightCorner(n, n) = bik;
    op_a.bottomLeftCorner(n, n) = -lic;
    op_a.bottomRightCorner(n, n) = plant.op_a + bik + lic;

    ComplexMatrix op_b(2 * nb, 2 * n);
    if (nb > 0) {
        op_b.topLeftCorner(nb, n) = plant.op_b;
        op_b.topRightCorner(nb, n) = -qk;
        op_b.bottomLeftCorner(nb, n) = lc;
        op_b.bottomRightCorner(nb, n) = plant.op_b - qk - lc;
    }

    ComplexMatrix op_bi = ComplexMatrix::Zero(2 * n, m + p);
    op_bi.topLeftCorner(n, m) = plant.op_bi;
    op_bi.bottomLeftCorner(n, m) = plant.op_bi;
    op_bi.bottomRightCorner(n, p) = gains.op_li;

    ComplexMatrix op_q = ComplexMatrix::Zero(2 * nb, m + p);
    if (nb > 0) {
        op_q.topLeftCorner(nb, m) = plant.op_q;
        op_q.bottomLeftCorner(nb, m) = plant.op_q;
        op_q.bottomRightCorner(nb, p) = gains.op_l;
    }

    ComplexMatrix op_c = ComplexMatrix::Zero(2 * p + m, 2 * n);
    op_c.topLeftCorner(p, n) = plant.op_c;
    op_c.block(p, n, p, n) = plant.op_c;
    op_c.bottomRightCorner(m, n) = gains.op_k;

    GramMatrix gram_e(block_diag(plant.gram.matrix(), plant.gram.matrix()));
    ComplexMatrix test_e = block_diag(plant.test, plant.test);

    SpaceLabels labels;
    labels.boundary_input = plant.labels.boundary_input + " x " + plant.labels.boundary_input;
    labels.input = plant.labels.input + " x " + plant.labels.output;
    labels.state = plant.labels.state + " x " + plant.labels.state;
    labels.output = plant.labels.output + " x " + plant.labels.output + " x " + plant.labels.input;

    ClosedLoopSystem cl;
    cl.extended = make_node_with_test(std::move(op_a), std::move(op_b), std::move(op_c),
                                      std::move(op_q), std::move(op_bi), std::move(gram_e),
                                      std::move(test_e), std::move(labels));

    cl.transform_s = ComplexMatrix::Identity(2 * n, 2 * n);
    cl.transform_s.bottomLeftCorner(n, n) = -ComplexMatrix::Identity(n, n);

    // Triangular coordinates: ker(B_e) is parameterized by
    //   x1 = K_K z_K + R_K Q K K_L z_L,   x2 = x1 + K_L z_L,
    // with K_K, K_L the kernels of B - Q K and B - L C. In these coordinates
    // the generator is block upper-triangular with the stabilized pair on
    // the diagonal.
    const ComplexMatrix b_k = plant.op_b - qk;
    const ComplexMatrix b_l = plant.op_b - lc;
    if (nb > 0 && (row_rank(b_k) < nb || row_rank(b_l) < nb)) {
        throw RankDeficientBoundary("assemble_closed_loop: gain-modified trace lost row rank");
    }
    ComplexMatrix kk = orthonormal_kernel(b_k, plant.gram);
    ComplexMatrix kl = orthonormal_kernel(b_l, plant.gram);
    ComplexMatrix lift;
    if (nb > 0) {
        ComplexMatrix minv_bh = plant.gram.solve(b_k.adjoint());
        ComplexMatrix small = b_k * minv_bh;
        ComplexMatrix rk = minv_bh * solve_linear(small, ComplexMatrix::Identity(nb, nb));
        lift = rk * (qk * kl);
    } else {
        lift = ComplexMatrix::Zero(n, kl.cols());
    }
    const Index dk = kk.cols(), dl = kl.cols();
    ComplexMatrix z(2 * n, dk + dl);
    z.topLeftCorner(n, dk) = kk;
    z.bottomLeftCorner(n, dk) = kk;
    z.topRightCorner(n, dl) = lift;
    z.bottomRightCorner(n, dl) = lift + kl;

    const ComplexMatrix& te = cl.extended.test;
    ComplexMatrix tz = te * z;
    ComplexMatrix taz = te * (cl.extended.op_a * z);
    cl.triangular.kernel_basis = z;
    cl.triangular.mat_a = solve_linear(tz, taz);
    cl.triangular.gram = GramMatrix::identity(dk + dl);
    cl.diag_block_dim = dk;
    return cl;
}

DiscreteBoundaryNode internal_loop_node(const DiscreteBoundaryNode& plant, const GainSet& gains) {
    require_gain_dims(plant, gains);
    const Index n = plant.state_dim(), nb = plant.boundary_dim();
    const Index m = plant.input_dim(), p = plant.output_dim();

    ComplexMatrix op_b = plant.op_b - gains.op_l * plant.op_c;
    if (nb > 0 && row_rank(op_b) < nb) {
        throw RankDeficientBoundary("internal_loop_node: B - L C lost row rank");
    }
    ComplexMatrix op_a = plant.op_a + gains.op_li * plant.op_c;

    ComplexMatrix op_c(p + m, n);
    op_c.topRows(p) = plant.op_c;
    op_c.bottomRows(m) = gains.op_k;

    ComplexMatrix op_q(nb, m + p);
    if (nb > 0) {
        op_q.leftCols(m) = plant.op_q;
        op_q.rightCols(p) = gains.op_l;
    }

    ComplexMatrix op_bi(n, m + p);
    op_bi.leftCols(m) = plant.op_bi;
    op_bi.rightCols(p) = gains.op_li;

    SpaceLabels labels = plant.labels;
    labels.input = plant.labels.input + " x " + plant.labels.output;
    labels.output = plant.labels.output + " x " + plant.labels.input;
    return make_node_with_test(std::move(op_a), std::move(op_b), std::move(op_c),
                               std::move(op_q), std::move(op_bi), plant.gram,
                               plant.test, std::move(labels));
}

DiscreteBoundaryNode internal_loop_compose(const DiscreteBoundaryNode& plant, const GainSet& gains) {
    require_gain_dims(plant, gains);
    const Index n = plant.state_dim(), nb = plant.boundary_dim();
    const Index m = plant.input_dim(), p = plant.output_dim();

    const ComplexMatrix lic = gains.op_li * plant.op_c;
    const ComplexMatrix lc = gains.op_l * plant.op_c;

    ComplexMatrix op_a = ComplexMatrix::Zero(2 * n, 2 * n);
    op_a.topLeftCorner(n, n) = plant.op_a;
    op_a.bottomLeftCorner(n, n) = -lic;
    op_a.bottomRightCorner(n, n) = plant.op_a + lic;

    ComplexMatrix op_b = ComplexMatrix::Zero(2 * nb, 2 * n);
    if (nb > 0) {
        op_b.topLeftCorner(nb, n) = plant.op_b;
        op_b.bottomLeftCorner(nb, n) = lc;
        op_b.bottomRightCorner(nb, n) = plant.op_b - lc;
    }

    ComplexMatrix op_bi = ComplexMatrix::Zero(2 * n, m + p);
    op_bi.topLeftCorner(n, m) = plant.op_bi;
    op_bi.bottomLeftCorner(n, m) = plant.op_bi;
    op_bi.bottomRightCorner(n, p) = gains.op_li;

    ComplexMatrix op_q = ComplexMatrix::Zero(2 * nb, m + p);
    if (nb > 0) {
        op_q.topLeftCorner(nb, m) = plant.op_q;
        op_q.bottomLeftCorner(nb, m) = plant.op_q;
        op_q.bottomRightCorner(nb, p) = gains.op_l;
    }

    ComplexMatrix op_c = ComplexMatrix::Zero(2 * p + m, 2 * n);
    op_c.topLeftCorner(p, n) = plant.op_c;
    op_c.block(p, n, p, n) = plant.op_c;
    op_c.bottomRightCorner(m, n) = gains.op_k;

    GramMatrix gram_e(block_diag(plant.gram.matrix(), plant.gram.matrix()));
    ComplexMatrix test_e = block_diag(plant.test, plant.test);

    SpaceLabels labels;
    labels.boundary_input = plant.labels.boundary_input + " x " + plant.labels.boundary_input;
    labels.input = plant.labels.input + " x " + plant.labels.output;
    labels.state = plant.labels.state + " x " + plant.labels.state;
    labels.output = plant.labels.output + " x " + plant.labels.output + " x " + plant.labels.input;
    return make_node_with_test(std::move(op_a), std::move(op_b), std::move(op_c),
                               std::move(op_q), std::move(op_bi), std::move(gram_e),
                               std::move(test_e), std::move(labels));
}

ComplexMatrix internal_loop_closing_gain(const DiscreteBoundaryNode& plant) {
    const Index m = plant.input_dim(), p = plant.output_dim();
    ComplexMatrix k = ComplexMatrix::Zero(m + p, 2 * p + m);
    k.block(0, 2 * p, m, m).setIdentity();
    return k;
}

}  // namespace bcslab
