#pragma once

#include "bcslab/node.hpp"

namespace bcslab {

/// Controller parameters: state feedback K, boundary output injection L,
/// interior output injection Li.
struct GainSet {
    ComplexMatrix op_k;   // m x n
    ComplexMatrix op_l;   // n_b x p
    ComplexMatrix op_li;  // n x p
};

/// Observer-based closed loop on the doubled state space, together with the
/// state-similarity S (x, xhat) -> (x, xhat - x) and the block-triangular
/// form it induces.
struct ClosedLoopSystem {
    DiscreteBoundaryNode extended;   // node on X x X
    ComplexMatrix transform_s;       // 2n x 2n
    RestrictedGenerator triangular;  // generator in the triangular coordinates
    Index diag_block_dim = 0;        // size of the leading (state-feedback) block
};

/// The two generators the closed loop triangularizes into.
struct StabilizedPair {
    RestrictedGenerator gen_k;  // (A + Bi K)|ker(B - Q K)
    RestrictedGenerator gen_l;  // (A + Li C)|ker(B - L C)
};

}  // namespace bcslab
