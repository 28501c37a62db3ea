#pragma once

#include <string>
#include <vector>

#include "briar/ideal.hpp"

namespace briar {

/// A good polygon from alpha to beta in the star of tau: size-two ideal
/// edges at the corners, size-three at the edge midpoints, each midpoint
/// compatible with its two corners, at most one reductive midpoint, and at
/// most one reductive corner (which can only be alpha).
struct GoodPolygon {
  std::vector<IdealEdge> corners;    // cyclic; 3, 4 or 6 of them
  std::vector<IdealEdge> midpoints;  // midpoints[i] joins corners[i], [i+1]
  int alpha_at = -1;
  int beta_at = -1;
};

struct PolygonCheck {
  bool ok = true;
  std::string why;
};

/// The seven-condition validator; a separate function from the search.
PolygonCheck validate_good_polygon(const MarkedGraph& tau, const StarGraph& s,
                                   const GoodPolygon& p, const IdealEdge& alpha,
                                   const IdealEdge& beta);

struct PolygonResult {
  enum Kind { UNION_NONREDUCTIVE, POLYGON } kind = POLYGON;
  IdealEdge union_edge;
  GoodPolygon polygon;
  bool used_fallback = false;  // proof-guided candidates exhausted first
};

/// Lemma search: either alpha+beta (after rechoosing representatives) is a
/// non-reductive ideal edge, or there is a good polygon. Proof-guided
/// candidate families first (the three cases), exhaustive templates as a
/// fallback; throws HypothesesNotMet on unmet hypotheses and
/// SearchExhausted (never expected) with a dump otherwise.
PolygonResult find_good_polygon(const MarkedGraph& tau, const StarGraph& s,
                                const IdealEdge& alpha, const IdealEdge& beta);

}  // namespace briar
