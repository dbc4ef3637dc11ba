#pragma once

#include "bcslab/node.hpp"
#include "bcslab/synthesis_types.hpp"

namespace bcslab {

/// Static output feedback u = K y + v: returns the node
/// (B - Q K C, A + Bi K C, C, Q, Bi) with the test rows inherited from the
/// input node. Throws RankDeficientBoundary if the new boundary trace loses
/// row rank.
[[nodiscard]] DiscreteBoundaryNode feedback_transform(
    const DiscreteBoundaryNode& node, const ComplexMatrix& k);

/// Series interconnection u1 = K y2 of two nodes, block operators
///   B = [B1, -Q1 K C2; 0, B2],  A = [A1, Bi1 K C2; 0, A2],
/// with diagonal C, Q, Bi and block-diagonal Gram and test rows.
[[nodiscard]] DiscreteBoundaryNode cascade(
    const DiscreteBoundaryNode& node1, const DiscreteBoundaryNode& node2,
    const ComplexMatrix& k);

/// Bidirectional coupling u1 = K1 y2, u2 = K2 y1.
[[nodiscard]] DiscreteBoundaryNode couple(
    const DiscreteBoundaryNode& node1, const DiscreteBoundaryNode& node2,
    const ComplexMatrix& k1, const ComplexMatrix& k2);

/// The gain-restricted generators A_K = (A + Bi K)|ker(B - Q K) and
/// A_L = (A + Li C)|ker(B - L C).
[[nodiscard]] StabilizedPair stabilized_pair(
    const DiscreteBoundaryNode& plant, const GainSet& gains);

/// Observer-based closed loop on X x X: extended node, the similarity
/// S(x, xhat) = (x, xhat - x), and the generator in triangular coordinates,
/// whose diagonal blocks are the stabilized pair.
[[nodiscard]] ClosedLoopSystem assemble_closed_loop(
    const DiscreteBoundaryNode& plant, const GainSet& gains);

/// The controller as a stand-alone node with an internal loop:
/// (B - L C, A + Li C, [C; K], [Q, L], [Bi, Li]).
[[nodiscard]] DiscreteBoundaryNode internal_loop_node(
    const DiscreteBoundaryNode& plant, const GainSet& gains);

/// Step-1 composite of the plant and the internal-loop controller (inputs
/// (u, u2), outputs (y, yhat, yc)); applying output feedback u += yc to it
/// reproduces the extended closed-loop node exactly.
[[nodiscard]] DiscreteBoundaryNode internal_loop_compose(
    const DiscreteBoundaryNode& plant, const GainSet& gains);

/// The output feedback gain closing the second internal-loop connection.
[[nodiscard]] ComplexMatrix internal_loop_closing_gain(
    const DiscreteBoundaryNode& plant);

}  // namespace bcslab
