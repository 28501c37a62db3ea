#pragma once

#include <vector>

#include "briar/canonical.hpp"
#include "briar/marked_graph.hpp"

namespace briar {

/// An ideal edge: a direction subset at a vertex eligible for blow-up.
/// Directions are stored sorted with pairwise distinct underlying edges.
struct IdealEdge {
  int vertex = 0;
  std::vector<Dir> dirs;

  size_t size() const { return dirs.size(); }
  friend bool operator==(const IdealEdge&, const IdealEdge&) = default;
  friend auto operator<=>(const IdealEdge&, const IdealEdge&) = default;
};

/// The directions of alpha with no reversed-edge direction in alpha.
std::vector<Dir> D_alpha(const IdealEdge& a);

/// Conditions: |alpha| >= 2, |D_v - alpha| >= 2, one direction per orbit,
/// D(alpha) nonempty, and incidence.
bool ideal_edge_valid(const MarkedGraph& m, const IdealEdge& a,
                      std::string* why = nullptr);

IdealEdge translate(const MarkedGraph& m, const IdealEdge& a, int h);
IdealEdge complement(const MarkedGraph& m, const IdealEdge& a);

/// Least translate; at a trivial vertex also least against the complement.
IdealEdge class_rep(const MarkedGraph& m, const IdealEdge& a);
bool same_class(const MarkedGraph& m, const IdealEdge& a, const IdealEdge& b);

/// Containment of classes: some translate of a is a subset of b.
bool contained_in(const MarkedGraph& m, const IdealEdge& a, const IdealEdge& b);
/// Orbit disjointness: no shared underlying edges (or different vertices).
bool orbits_disjoint(const IdealEdge& a, const IdealEdge& b);
bool compatible(const MarkedGraph& m, const IdealEdge& a, const IdealEdge& b);

/// One representative per equivalence class, sizes 2..max_size.
/// Throws InactiveVertex when valence(v) < 2.
std::vector<IdealEdge> enumerate_ideal_edges(const MarkedGraph& m, int v,
                                             int max_size);

/// Pairwise compatible families of class representatives, sizes
/// 1..max_family (the empty family is excluded).
std::vector<std::vector<IdealEdge>> enumerate_ideal_forests(
    const MarkedGraph& m, int max_family);

struct BlowUpResult {
  MarkedGraph out;
  std::vector<int> alpha_edge;  // per ideal edge: its new oriented edge id
  std::vector<int> alpha_vertex;
  // old edge ids are stable: blow-up only reattaches initial vertices
};

/// Blows up a compatible family, containment-maximal first. Edge ids of
/// the input survive unchanged; each ideal edge contributes one new edge
/// whose collapse undoes it.
BlowUpResult blow_up(const MarkedGraph& m, std::vector<IdealEdge> forest);

/// Blow up alpha then collapse the underlying edge of d (d in D(alpha)).
/// Requires m reduced; the result is reduced.
MarkedGraph whitehead_move(const MarkedGraph& m, const IdealEdge& a, Dir d);

enum class MoveEffect { STRICT_DECREASE, EQUAL, INCREASE };

MoveEffect move_reductivity(const StarGraph& s, const IdealEdge& a, Dir d);
/// alpha is reductive iff every supported move has |alpha| <= |e|.
bool is_reductive(const StarGraph& s, const IdealEdge& a);
/// Some supported move strictly increases the norm.
bool supports_strict_increase(const StarGraph& s, const IdealEdge& a);
/// A strictly increasing move of alpha, largest gap first; NotFound if
/// alpha is reductive.
Dir best_strict_move(const StarGraph& s, const IdealEdge& a);

struct EqStarCheck {
  bool ok = false;
  long long lhs = 0;  // norm after blow-up and collapse
  long long rhs = 0;  // norm(m) + sum|alpha_i| - sum|e_i|
  MarkedGraph result;
};

/// Verifies the norm-change identity for a forest blow-up followed by a
/// collapsible edge choice (one direction in D(alpha_i) per ideal edge),
/// recomputing both sides independently.
EqStarCheck check_eq_star(const MarkedGraph& m,
                          const std::vector<IdealEdge>& forest,
                          const std::vector<Dir>& choice);

}  // namespace briar
