#pragma once

#include <boost/rational.hpp>
#include <memory>
#include <string>
#include <vector>

#include "briar/context.hpp"
#include "briar/graph_of_groups.hpp"
#include "briar/multigraph.hpp"

namespace briar {

using Rational = boost::rational<long long>;

/// A direction (g, e) at the initial vertex of the oriented edge e.
struct Dir {
  int edge = 0;
  int g = 0;
  friend bool operator==(const Dir&, const Dir&) = default;
  friend auto operator<=>(const Dir& a, const Dir& b) {
    if (a.edge != b.edge) return a.edge <=> b.edge;
    return a.g <=> b.g;
  }
};

/// The star graph of a marked graph with respect to W: one multigraph
/// vertex per direction, one edge per group translate of every turn taken
/// by the W-loops.
struct StarGraph {
  MultiGraph graph;
  std::vector<int> dir_offset;  // oriented edge -> first direction id
  std::vector<int> dir_edge;    // direction id -> oriented edge
  std::vector<int> dir_g;       // direction id -> group element
  std::vector<int> dir_vertex;  // direction id -> vertex of the marked graph

  int dir_id(const Dir& d) const { return dir_offset[d.edge] + d.g; }
  int dir_id(int edge, int g) const { return dir_offset[edge] + g; }
  Dir dir_of(int id) const { return Dir{dir_edge[id], dir_g[id]}; }
  int num_dirs() const { return graph.n; }

  long long abs_dir(const Dir& d) const;
  long long abs_dirs(const std::vector<Dir>& ds) const;
};

/// A marked graph of groups: the marking is carried entirely by the
/// cyclically reduced W-loop data. Immutable after construction.
struct MarkedGraph {
  std::shared_ptr<const SpineContext> ctx;
  GraphOfGroups graph;
  std::vector<LoopRep> loops;  // parallel to ctx->W

  mutable std::shared_ptr<const std::string> canon_cache;

  // Throws on: factor multiplicity != 1, rank mismatch, non-reduced loops.
  void validate() const;

  long long translation_length(int w_index) const;
  long long translation_length(const Word& w) const;  // UnknownWord if absent

  /// Sum of translation lengths over W; requires a reduced graph.
  long long norm() const;
  /// The same sum with no reducedness gate (usable on blow-ups).
  long long total_length() const;

  bool reduced() const { return is_reduced(graph); }

  StarGraph star_graph() const;

  MarkedGraph with_graph(GraphOfGroups g, std::vector<LoopRep> l) const;
};

/// Exact star-graph norm: 1/2 * sum_v sum_{d in D_v} valence(d)/|G_v|.
Rational norm_from_star(const MarkedGraph& m, const StarGraph& s);

/// The standard seed: factor 0 at a hub carrying the k loop edges, one
/// spoke per remaining factor, marking loops evaluated from the W-words.
MarkedGraph standard_seed(std::shared_ptr<const SpineContext> ctx);

/// Evaluates a word of F as a cyclically reduced loop in the seed graph
/// shape (hub-based). Used to build markings.
LoopRep seed_loop(const SpineContext& ctx, const GraphOfGroups& g,
                  const Word& w);

MarkedGraph collapse_edge(const MarkedGraph& m, int e);
MarkedGraph collapse_forest_m(const MarkedGraph& m, const std::set<int>& f);

}  // namespace briar
