#pragma once

#include "bcslab/node.hpp"
#include "bcslab/synthesis_types.hpp"

#include <iosfwd>
#include <string>

namespace bcslab {

/// Text format for nodes and gain sets: a header line, `label` lines, and
/// named `matrix <name> <rows> <cols>` blocks whose rows list "re,im" pairs
/// printed with %.17g, which round-trips IEEE doubles exactly.

void save_node(const DiscreteBoundaryNode& node, std::ostream& os);
void save_node(const DiscreteBoundaryNode& node, const std::string& path);
[[nodiscard]] DiscreteBoundaryNode load_node(std::istream& is);
[[nodiscard]] DiscreteBoundaryNode load_node(const std::string& path);

void save_gains(const GainSet& gains, std::ostream& os);
void save_gains(const GainSet& gains, const std::string& path);
[[nodiscard]] GainSet load_gains(std::istream& is);
[[nodiscard]] GainSet load_gains(const std::string& path);

/// Formats one double exactly (%.17g).
[[nodiscard]] std::string format_double(double v);

}  // namespace bcslab
