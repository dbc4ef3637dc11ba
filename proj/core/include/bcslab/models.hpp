#pragma once

#include "bcslab/node.hpp"
#include "bcslab/synthesis_types.hpp"

#include <utility>
#include <vector>

namespace bcslab {

/// 2D wave equation on the unit square with distributed control on
/// [1/4,3/4]^2 and observation on the complement, Galerkin in the Dirichlet
/// sine basis. No boundary inputs (n_b = 0).
struct Wave2DConfig {
    Index modes_per_axis = 8;  // N
    Index input_rank = -1;     // retained input basis functions; -1 means N^2
};

struct Wave2DModel {
    DiscreteBoundaryNode node;
    GainSet gains;
    std::vector<std::pair<int, int>> modes;  // (k, m), frequency-sorted
    Real s_cut = 0;                          // largest resolved eigenfrequency
};

[[nodiscard]] Wave2DModel build_wave2d(const Wave2DConfig& cfg);

/// Closed-form 1D cut-off integral: int_{1/4}^{3/4} 2 sin(k pi s) sin(l pi s) ds.
[[nodiscard]] Real wave2d_cutoff_integral(int k, int l);

/// 1D wave equation on (0,1) with Neumann boundary input at 0, summation-by-
/// parts finite differences on a uniform grid. DOF vector (w, w_t) at the
/// grid nodes; the mean/zero-mean state splitting is a change of variables
/// absorbed into the Gram matrix and the output/feedback functionals.
struct Wave1DConfig {
    Index grid_points = 100;  // N grid intervals, N+1 nodes
    Real kappa0 = 1.0;
    Real kappa1 = 1.0;
    Real ell_b = 1.0;
    Real ell_i = 0.05;
};

struct Wave1DModel {
    DiscreteBoundaryNode plant;     // (B, A, C, Q, 0) with Q = [1;0]
    DiscreteBoundaryNode internal;  // (B0, A0, C0, I, 0) on the zero-mean space
    GainSet gains;
    ComplexMatrix wellposed_output;  // 3 x 2n: (w_t(0), w_t(1), what_t(0)) on X x X
    Real grid_h = 0;
    Real s_cut = 0;
};

[[nodiscard]] Wave1DModel build_wave1d(const Wave1DConfig& cfg);

/// Closed-form transfer matrix of the 1D-wave internal node,
/// [[coth(lambda), csch(lambda)], [csch(lambda), coth(lambda)]].
[[nodiscard]] ComplexMatrix wave1d_internal_transfer(Complex lambda);

/// SCOLE beam with tip mass: Hermite-cubic FEM, clamped at 0, tip DOFs at 1.
/// The tip velocity p rides on the trace DOF of the velocity block (its
/// Gram weight carries the m|p|^2 term) and the tip angular velocity q is an
/// appended state, so the boundary trace v'(1) - q is a genuine constraint.
struct ScoleConfig {
    Index elements = 30;  // N
    std::vector<Real> rho_poly = {1.0};  // rho(x) polynomial coefficients
    std::vector<Real> ei_poly = {1.0};   // EI(x) polynomial coefficients
    Real tip_mass = 1.0;                 // m
    Real tip_inertia = 1.0;              // J
    Real kappa = 1.0;
    Real ell = 1.0;
};

struct ScoleModel {
    DiscreteBoundaryNode node;  // (B, A, C, 0, Bi), impedance version uses Q = I
    GainSet gains;
    Real grid_h = 0;
};

[[nodiscard]] ScoleModel build_scole(const ScoleConfig& cfg);

/// The same SCOLE node with Q = I (boundary-input impedance form used for
/// transfer-function studies).
[[nodiscard]] DiscreteBoundaryNode scole_impedance_node(const ScoleModel& model);

[[nodiscard]] Real eval_poly(const std::vector<Real>& coeffs, Real x);

}  // namespace bcslab
