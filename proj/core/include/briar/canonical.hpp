#pragma once

#include <optional>
#include <string>
#include <vector>

#include "briar/marked_graph.hpp"

namespace briar {

/// Minimal serialization over all graph-of-groups self-relabelings:
/// vertex bijections respecting table-isomorphism classes, edge bijections
/// respecting incidence, per-vertex table isomorphisms, and per-edge group
/// twists (re-choosing Bass-Serre edge lifts: e -> u e w), with every
/// W-loop re-rotated canonically. Two marked graphs are the same vertex of
/// L iff their canonical strings agree.
std::string compute_canonical_string(const MarkedGraph& m);

/// Cached canonical string.
const std::string& canonical_string(const MarkedGraph& m);

bool marked_equal(const MarkedGraph& a, const MarkedGraph& b);

}  // namespace briar
