#include "bcslab/models.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bcslab {

namespace {

constexpr Real kPi = 3.14159265358979323846;

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

}  // namespace

Real eval_poly(const std::vector<Real>& coeffs, Real x) {
    Real v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

// ---------------------------------------------------------------------------
// 2D wave
// ---------------------------------------------------------------------------

Real wave2d_cutoff_integral(int k, int l) {
    // int_{1/4}^{3/4} 2 sin(k pi s) sin(l pi s) ds
    const Real a = 0.25, b = 0.75;
    if (k == l) {
        // s - sin(2 k pi s) / (2 k pi) evaluated at the endpoints
        const Real c = 2.0 * k * kPi;
        return (b - a) - (std::sin(c * b) - std::sin(c * a)) / c;
    }
    const Real d = (k - l) * kPi;
    const Real s = (k + l) * kPi;
    return (std::sin(d * b) - std::sin(d * a)) / d - (std::sin(s * b) - std::sin(s * a)) / s;
}

Wave2DModel build_wave2d(const Wave2DConfig& cfg) {
    const Index nax = cfg.modes_per_axis;
    if (nax < 1) throw ConfigError("wave2d: modes_per_axis must be >= 1");
    const Index nm = nax * nax;
    Index rank = cfg.input_rank < 0 ? nm : cfg.input_rank;
    if (rank < 1 || rank > nm) throw ConfigError("wave2d: input_rank out of range");

    Wave2DModel model;
    model.modes.reserve(static_cast<size_t>(nm));
    for (int k = 1; k <= nax; ++k) {
        for (int m = 1; m <= nax; ++m) model.modes.emplace_back(k, m);
    }
    std::sort(model.modes.begin(), model.modes.end(), [](auto l, auto r) {
        const int fl = l.first * l.first + l.second * l.second;
        const int fr = r.first * r.first + r.second * r.second;
        if (fl != fr) return fl < fr;
        return l < r;
    });

    RealVector lam(nm);
    for (Index i = 0; i < nm; ++i) {
        const auto [k, m] = model.modes[static_cast<size_t>(i)];
        lam(i) = kPi * kPi * (k * k + m * m);
    }
    model.s_cut = std::sqrt(lam(nm - 1));

    // One-axis cutoff integrals, combined by the tensor-product structure.
    RealMatrix axis(nax, nax);
    for (int k = 1; k <= nax; ++k) {
        for (int l = 1; l <= nax; ++l) axis(k - 1, l - 1) = wave2d_cutoff_integral(k, l);
    }
    RealMatrix gc(nm, nm);
    for (Index i = 0; i < nm; ++i) {
        const auto [ki, mi] = model.modes[static_cast<size_t>(i)];
        for (Index j = 0; j < nm; ++j) {
            const auto [kj, mj] = model.modes[static_cast<size_t>(j)];
            gc(i, j) = axis(ki - 1, kj - 1) * axis(mi - 1, mj - 1);
        }
    }
    RealMatrix go = RealMatrix::Identity(nm, nm) - gc;

    const Index n = 2 * nm;
    ComplexMatrix op_a = ComplexMatrix::Zero(n, n);
    op_a.topRightCorner(nm, nm).setIdentity();
    op_a.bottomLeftCorner(nm, nm).diagonal() = (-lam).cast<Complex>();

    ComplexMatrix op_bi = ComplexMatrix::Zero(n, rank);
    op_bi.bottomRows(nm) = gc.leftCols(rank).cast<Complex>();

    ComplexMatrix op_c = ComplexMatrix::Zero(nm, n);
    op_c.rightCols(nm) = go.cast<Complex>();

    ComplexMatrix gram_m = ComplexMatrix::Zero(n, n);
    gram_m.topLeftCorner(nm, nm).diagonal() = lam.cast<Complex>();
    gram_m.bottomRightCorner(nm, nm).setIdentity();

    SpaceLabels labels;
    labels.boundary_input = "{0}";
    labels.input = "L2(Omega_c) sine span";
    labels.state = "H1_0 x L2 sine span";
    labels.output = "L2(Omega_o) sine span";

    model.node = make_node(std::move(op_a), ComplexMatrix(0, n), std::move(op_c),
                           ComplexMatrix(0, rank), std::move(op_bi), GramMatrix(gram_m),
                           labels);

    model.gains.op_k = -adjoint_input(model.node);
    model.gains.op_l = ComplexMatrix(0, nm);
    model.gains.op_li = -adjoint_output(model.node);
    return model;
}

// ---------------------------------------------------------------------------
// 1D wave
// ---------------------------------------------------------------------------

namespace {

struct Wave1DOperators {
    Index npts = 0;
    Real h = 0;
    RealMatrix d2;      // SBP second derivative, (N+1)^2
    RealVector weights; // trapezoid quadrature
    RealVector d_left;  // w'(0) stencil
    RealVector d_right; // w'(1) stencil
    RealMatrix s_energy;  // h D_c^T D_c: the |w'|^2 quadrature form
};

Wave1DOperators wave1d_operators(Index intervals) {
    Wave1DOperators ops;
    const Index np = intervals + 1;
    ops.npts = np;
    ops.h = 1.0 / static_cast<Real>(intervals);
    const Real h = ops.h;

    ops.weights = RealVector::Constant(np, h);
    ops.weights(0) = h / 2;
    ops.weights(np - 1) = h / 2;

    ops.d_left = RealVector::Zero(np);
    ops.d_left(0) = -3.0 / (2 * h);
    ops.d_left(1) = 4.0 / (2 * h);
    ops.d_left(2) = -1.0 / (2 * h);
    ops.d_right = RealVector::Zero(np);
    ops.d_right(np - 1) = 3.0 / (2 * h);
    ops.d_right(np - 2) = -4.0 / (2 * h);
    ops.d_right(np - 3) = 1.0 / (2 * h);

    ops.s_energy = RealMatrix::Zero(np, np);
    for (Index j = 0; j + 1 < np; ++j) {
        ops.s_energy(j, j) += 1.0 / h;
        ops.s_energy(j + 1, j + 1) += 1.0 / h;
        ops.s_energy(j, j + 1) -= 1.0 / h;
        ops.s_energy(j + 1, j) -= 1.0 / h;
    }

    // D2 = H^{-1} (-S + e_N d_right^T - e_0 d_left^T); summation by parts
    // against the trapezoid weights holds exactly at matrix level.
    RealMatrix q = -ops.s_energy;
    q.row(0) -= ops.d_left.transpose();
    q.row(np - 1) += ops.d_right.transpose();
    ops.d2 = ops.weights.cwiseInverse().asDiagonal() * q;
    return ops;
}

}  // namespace

ComplexMatrix wave1d_internal_transfer(Complex lambda) {
    ComplexMatrix p(2, 2);
    const Complex ct = 1.0 / std::tanh(lambda);
    const Complex cs = 1.0 / std::sinh(lambda);
    p << ct, cs, cs, ct;
    return p;
}

Wave1DModel build_wave1d(const Wave1DConfig& cfg) {
    if (cfg.grid_points < 4) throw ConfigError("wave1d: grid_points must be >= 4");
    if (cfg.kappa0 <= 0 || cfg.kappa1 <= 0 || cfg.ell_b <= 0 || cfg.ell_i <= 0) {
        throw ConfigError("wave1d: gains must be positive");
    }
    const Wave1DOperators ops = wave1d_operators(cfg.grid_points);
    const Index np = ops.npts;
    const Index n = 2 * np;

    Wave1DModel model;
    model.grid_h = ops.h;
    model.s_cut = 2.0 / ops.h;

    ComplexMatrix op_a = ComplexMatrix::Zero(n, n);
    op_a.topRightCorner(np, np).setIdentity();
    op_a.bottomLeftCorner(np, np) = ops.d2.cast<Complex>();

    ComplexMatrix op_b = ComplexMatrix::Zero(2, n);
    op_b.row(0).head(np) = (-ops.d_left).transpose().cast<Complex>();
    op_b.row(1).head(np) = ops.d_right.transpose().cast<Complex>();

    ComplexMatrix op_c = ComplexMatrix::Zero(2, n);
    op_c(0, np - 1) = 1.0;       // w(1)
    op_c(1, n - 1) = 1.0;        // w_t(1)

    ComplexMatrix op_q(2, 1);
    op_q << Complex(1, 0), Complex(0, 0);

    RealMatrix mw = ops.s_energy + ops.weights * ops.weights.transpose();
    RealMatrix mv = RealMatrix::Zero(np, np);
    mv.diagonal() = ops.weights;
    ComplexMatrix gram_m = block_diag(mw.cast<Complex>(), mv.cast<Complex>());

    SpaceLabels labels;
    labels.boundary_input = "C^2 (Neumann traces)";
    labels.input = "C";
    labels.state = "C x V x L2 as (w, w_t) grid";
    labels.output = "C^2 (w(1), w_t(1))";

    model.plant = make_node(std::move(op_a), std::move(op_b), std::move(op_c),
                            std::move(op_q), ComplexMatrix::Zero(n, 1), GramMatrix(gram_m),
                            labels);

    // Gains of the stabilising controller.
    model.gains.op_k = ComplexMatrix::Zero(1, n);
    model.gains.op_k(0, 0) = -cfg.kappa0;                         // -kappa0 w(0)
    model.gains.op_k(0, np) = -cfg.kappa1;                        // -kappa1 w_t(0)
    model.gains.op_k.row(0).tail(np) +=
        (-cfg.kappa0 * cfg.kappa1 * ops.weights).transpose().cast<Complex>();
    model.gains.op_l = ComplexMatrix::Zero(2, 2);
    model.gains.op_l(1, 1) = -cfg.ell_b;
    model.gains.op_li = ComplexMatrix::Zero(n, 2);
    model.gains.op_li.col(0).tail(np).setConstant(Complex(-cfg.ell_i, 0));

    // Internal node (B0, A0, C0, I, 0) on the zero-mean displacement space.
    ComplexMatrix a0 = ComplexMatrix::Zero(n, n);
    RealMatrix proj = RealMatrix::Identity(np, np) - RealVector::Ones(np) * ops.weights.transpose();
    a0.topRightCorner(np, np) = proj.cast<Complex>();
    a0.bottomLeftCorner(np, np) = ops.d2.cast<Complex>();

    ComplexMatrix c0 = ComplexMatrix::Zero(2, n);
    c0(0, np) = 1.0;      // w_t(0)
    c0(1, n - 1) = 1.0;   // w_t(1)

    SpaceLabels labels0;
    labels0.boundary_input = "C^2 (Neumann traces)";
    labels0.input = "C^2";
    labels0.state = "V x L2 as (w, w_t) grid";
    labels0.output = "C^2 (w_t(0), w_t(1))";

    model.internal = make_node(std::move(a0), model.plant.op_b, std::move(c0),
                               ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(n, 2),
                               model.plant.gram, labels0);

    model.wellposed_output = ComplexMatrix::Zero(3, 2 * n);
    model.wellposed_output(0, np) = 1.0;          // w_t(0)
    model.wellposed_output(1, n - 1) = 1.0;       // w_t(1)
    model.wellposed_output(2, n + np) = 1.0;      // what_t(0)
    return model;
}

// ---------------------------------------------------------------------------
// SCOLE
// ---------------------------------------------------------------------------

namespace {

// Hermite cubic shape functions on the reference element [0,1]; the
// derivative DOFs carry the element length.
struct HermiteShapes {
    static Real value(int i, Real t, Real h) {
        switch (i) {
            case 0: return 1 - 3 * t * t + 2 * t * t * t;
            case 1: return h * (t - 2 * t * t + t * t * t);
            case 2: return 3 * t * t - 2 * t * t * t;
            default: return h * (-t * t + t * t * t);
        }
    }
    static Real second(int i, Real t, Real h) {
        switch (i) {
            case 0: return -6 + 12 * t;
            case 1: return h * (-4 + 6 * t);
            case 2: return 6 - 12 * t;
            default: return h * (-2 + 6 * t);
        }
    }
};

// 4-point Gauss-Legendre on [0,1].
constexpr std::array<Real, 4> kGaussT = {
    0.069431844202973712388026755553595247452,
    0.330009478207571867598667120448377657400,
    0.669990521792428132401332879551622342600,
    0.930568155797026287611973244446404752548};
constexpr std::array<Real, 4> kGaussW = {
    0.173927422568726928686531974610999703618,
    0.326072577431273071313468025389000296382,
    0.326072577431273071313468025389000296382,
    0.173927422568726928686531974610999703618};

}  // namespace

ScoleModel build_scole(const ScoleConfig& cfg) {
    const Index ne = cfg.elements;
    if (ne < 2) throw ConfigError("scole: elements must be >= 2");
    if (cfg.tip_mass <= 0 || cfg.tip_inertia <= 0) {
        throw ConfigError("scole: tip mass and inertia must be positive");
    }
    if (cfg.kappa <= 0 || cfg.ell <= 0) throw ConfigError("scole: kappa and ell must be positive");

    const Real h = 1.0 / static_cast<Real>(ne);
    const Index nw = 2 * ne;  // beam DOFs after clamping node 0

    RealMatrix stiff = RealMatrix::Zero(nw, nw);
    RealMatrix mass = RealMatrix::Zero(nw, nw);

    for (Index e = 0; e < ne; ++e) {
        const Real x0 = h * static_cast<Real>(e);
        std::array<std::array<Real, 4>, 4> ke{}, me{};
        for (int g = 0; g < 4; ++g) {
            const Real t = kGaussT[static_cast<size_t>(g)];
            const Real wq = kGaussW[static_cast<size_t>(g)] * h;
            const Real x = x0 + t * h;
            const Real ei = eval_poly(cfg.ei_poly, x);
            const Real rho = eval_poly(cfg.rho_poly, x);
            if (ei <= 0 || rho <= 0) throw ConfigError("scole: rho and EI must be positive");
            for (int i = 0; i < 4; ++i) {
                const Real si = HermiteShapes::second(i, t, h) / (h * h);
                const Real vi = HermiteShapes::value(i, t, h);
                for (int j = 0; j < 4; ++j) {
                    ke[i][j] += wq * ei * si * HermiteShapes::second(j, t, h) / (h * h);
                    me[i][j] += wq * rho * vi * HermiteShapes::value(j, t, h);
                }
            }
        }
        // Global DOFs of element e: node e (value, deriv), node e+1 (value, deriv);
        // node 0 is clamped and its DOFs are dropped.
        const std::array<Index, 4> dof = {2 * e - 2, 2 * e - 1, 2 * e, 2 * e + 1};
        for (int i = 0; i < 4; ++i) {
            if (dof[static_cast<size_t>(i)] < 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (dof[static_cast<size_t>(j)] < 0) continue;
                stiff(dof[static_cast<size_t>(i)], dof[static_cast<size_t>(j)]) += ke[i][j];
                mass(dof[static_cast<size_t>(i)], dof[static_cast<size_t>(j)]) += me[i][j];
            }
        }
    }

    const Index tip_val = nw - 2;  // value DOF at node N
    const Index tip_der = nw - 1;  // derivative DOF at node N

    RealMatrix mass_v = mass;
    mass_v(tip_val, tip_val) += cfg.tip_mass;

    // EI(1) w''(1) evaluated from the last element.
    RealVector trace = RealVector::Zero(nw);
    {
        const Real ei1 = eval_poly(cfg.ei_poly, 1.0);
        const std::array<Index, 4> dof = {nw - 4, nw - 3, nw - 2, nw - 1};
        for (int i = 0; i < 4; ++i) {
            trace(dof[static_cast<size_t>(i)]) += ei1 * HermiteShapes::second(i, 1.0, h) / (h * h);
        }
    }

    const Index n = 2 * nw + 1;  // (w, v, q)
    const Index iq = 2 * nw;

    Eigen::PartialPivLU<RealMatrix> mass_lu(mass_v);
    RealMatrix vdot = -mass_lu.solve(stiff);
    RealVector vdot_trace = mass_lu.solve(RealVector::Unit(nw, tip_der));

    ComplexMatrix op_a = ComplexMatrix::Zero(n, n);
    op_a.block(0, nw, nw, nw).setIdentity();                              // wdot = v
    op_a.block(nw, 0, nw, nw) = (vdot + vdot_trace * trace.transpose()).cast<Complex>();
    op_a.row(iq).head(nw) = (-trace / cfg.tip_inertia).transpose().cast<Complex>();

    ComplexMatrix op_b = ComplexMatrix::Zero(1, n);
    op_b(0, nw + tip_der) = 1.0;  // v'(1)
    op_b(0, iq) = -1.0;           // -q

    ComplexMatrix op_c = ComplexMatrix::Zero(1, n);
    op_c.row(0).head(nw) = trace.transpose().cast<Complex>();

    ComplexMatrix op_bi = ComplexMatrix::Zero(n, 1);
    op_bi(iq, 0) = 1.0 / cfg.tip_inertia;

    ComplexMatrix gram_m = ComplexMatrix::Zero(n, n);
    gram_m.topLeftCorner(nw, nw) = stiff.cast<Complex>();
    gram_m.block(nw, nw, nw, nw) = mass_v.cast<Complex>();
    gram_m(iq, iq) = cfg.tip_inertia;

    SpaceLabels labels;
    labels.boundary_input = "C (v'(1) - q)";
    labels.input = "C (tip torque)";
    labels.state = "H2_l x L2 x C^2 as (w, v, q) FEM";
    labels.output = "C (EI(1) w''(1))";

    ScoleModel model;
    model.grid_h = h;
    model.node = make_node(std::move(op_a), std::move(op_b), std::move(op_c),
                           ComplexMatrix::Zero(1, 1), std::move(op_bi), GramMatrix(gram_m),
                           labels);

    model.gains.op_k = ComplexMatrix::Zero(1, n);
    model.gains.op_k(0, iq) = -cfg.kappa;
    model.gains.op_l = ComplexMatrix::Constant(1, 1, Complex(-cfg.ell / cfg.tip_inertia, 0));
    model.gains.op_li = ComplexMatrix::Zero(n, 1);
    return model;
}

DiscreteBoundaryNode scole_impedance_node(const ScoleModel& model) {
    const DiscreteBoundaryNode& base = model.node;
    SpaceLabels labels = base.labels;
    labels.input = base.labels.boundary_input;
    return make_node_with_test(base.op_a, base.op_b, base.op_c,
                               ComplexMatrix::Identity(1, 1), ComplexMatrix::Zero(base.state_dim(), 1),
                               base.gram, base.test, labels);
}

}  // namespace bcslab
