#pragma once

#include <set>
#include <string>
#include <vector>

#include "briar/group_table.hpp"

namespace briar {

/// A finite graph of finite groups with trivial edge groups.
///
/// Oriented edges come in involutive pairs: edge e and its reversal e^1
/// (bitwise xor), so unoriented edge i owns oriented ids 2i and 2i+1.
/// Vertex groups are factor indices into a FactorSignature, or -1 for the
/// trivial group.
struct GraphOfGroups {
  std::vector<int> vertex_group;  // per vertex: factor index or -1
  std::vector<int> edge_init;     // per oriented edge: initial vertex

  int V() const { return static_cast<int>(vertex_group.size()); }
  int oriented_count() const { return static_cast<int>(edge_init.size()); }
  int unoriented_count() const { return oriented_count() / 2; }

  int init(int e) const { return edge_init[e]; }
  int term(int e) const { return edge_init[e ^ 1]; }
  static int rev(int e) { return e ^ 1; }
  bool is_loop_edge(int e) const { return init(e) == term(e); }

  int add_vertex(int group) {
    vertex_group.push_back(group);
    return V() - 1;
  }
  // returns the even oriented id
  int add_edge(int from, int to) {
    edge_init.push_back(from);
    edge_init.push_back(to);
    return oriented_count() - 2;
  }

  std::vector<int> star(int v) const;  // oriented edges with init v
  int valence(int v) const;
  bool connected() const;
  int euler_rank() const;  // #unoriented edges - #vertices + 1
};

/// A graph-of-groups edge path g0 e1 g1 ... e_m g_m based at a vertex.
/// elts[i] is an element of the group at the i-th vertex along the path
/// (index 0 at the base); the identity token 0 is used at trivial vertices.
struct EdgePath {
  int base = 0;
  std::vector<int> elts;   // size edges.size() + 1
  std::vector<int> edges;  // oriented edge ids

  bool closed(const GraphOfGroups& g) const {
    return edges.empty() || g.term(edges.back()) == base;
  }
};

/// Throws IncidenceError unless consecutive edges chain head-to-tail and
/// every group element is valid at its vertex.
void validate_path(const FactorSignature& sig, const GraphOfGroups& g,
                   const EdgePath& p);

/// Removes every e 1 e-bar backtrack, merging the surrounding group
/// elements. Confluent: the result does not depend on cancellation order.
EdgePath reduce_path(const FactorSignature& sig, const GraphOfGroups& g,
                     EdgePath p);

/// One crossing of a cyclically reduced loop: apply `g` at the initial
/// vertex of `edge`, then cross it.
struct LoopItem {
  int g = 0;
  int edge = 0;
  friend bool operator==(const LoopItem&, const LoopItem&) = default;
  friend auto operator<=>(const LoopItem& a, const LoopItem& b) {
    if (a.edge != b.edge) return a.edge <=> b.edge;
    return a.g <=> b.g;
  }
};

/// A conjugacy class of loops, stored cyclically reduced with the
/// basepoint group element folded into the first crossing and a canonical
/// rotation. Elliptic classes have no crossings and carry the vertex and
/// a representative group element instead.
struct LoopRep {
  std::vector<LoopItem> items;
  int elliptic_vertex = -1;
  int elliptic_elt = 0;

  bool elliptic() const { return items.empty(); }
  long long length() const { return static_cast<long long>(items.size()); }
  friend bool operator==(const LoopRep&, const LoopRep&) = default;
};

/// Cyclic reduction + canonical rotation of a closed edge path.
LoopRep loop_from_path(const FactorSignature& sig, const GraphOfGroups& g,
                       const EdgePath& p);
LoopRep cyclically_reduce(const FactorSignature& sig, const GraphOfGroups& g,
                          LoopRep l);
void canonical_rotation(LoopRep& l);

struct CollapseResult {
  GraphOfGroups graph;
  std::vector<LoopRep> loops;
  std::vector<int> vertex_map;  // old vertex -> new vertex
  std::vector<int> edge_map;    // old oriented edge -> new oriented edge, -1 if gone
};

/// Collapses the unoriented edge of `e`. The edge must not be a loop and
/// at most one endpoint may carry a nontrivial group; throws
/// IllegalCollapse otherwise. Loops are rewritten by deleting the
/// crossings of e and re-reducing.
CollapseResult collapse_edge(const FactorSignature& sig,
                             const GraphOfGroups& g,
                             const std::vector<LoopRep>& loops, int e);

struct VertexOfLReport {
  bool ok = true;
  std::string violation;
};

/// The three vertex conditions: trivial edge groups (structural), nontrivial
/// groups at valence-one and valence-two vertices, and every separating edge
/// leaving nontrivial-group vertices on both sides.
VertexOfLReport is_vertex_of_L(const GraphOfGroups& g);

/// No non-loop edge has a trivial-group endpoint (such an edge would be
/// collapsible, so the graph would not be reduced).
bool is_reduced(const GraphOfGroups& g);

/// A set of unoriented edges (stored as even oriented ids) is a collapsible
/// forest when it spans no cycle and each tree component contains at most
/// one vertex with nontrivial group.
bool is_collapsible_forest(const GraphOfGroups& g, const std::set<int>& forest);

std::vector<std::set<int>> maximal_forests(const GraphOfGroups& g);

/// Matroid exchange: for maximal forests F, F2 and e2 in F2 - F, returns
/// e in F - F2 with F + e2 - e maximal, found along the cycle or geodesic
/// created by adding e2 to F.
int forest_exchange(const GraphOfGroups& g, const std::set<int>& F,
                    const std::set<int>& F2, int e2);

/// Iterated collapse of a collapsible forest; order-independent.
CollapseResult collapse_forest(const FactorSignature& sig,
                               const GraphOfGroups& g,
                               const std::vector<LoopRep>& loops,
                               const std::set<int>& forest);

}  // namespace briar
