#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace briar {

/// A loop-free multigraph on vertices 0..n-1 with edge multiplicities,
/// carrying the dot-product calculus. Star graphs are instances of this.
struct MultiGraph {
  int n = 0;
  std::vector<std::array<int, 2>> ends;  // endpoints, u != v
  std::vector<long long> mult;

  void add_edge(int u, int v, long long m = 1);
  long long total_edges() const;

  /// Number of edges (with multiplicity) with one endpoint in S and the
  /// other in T. Throws OverlappingSets unless S and T are disjoint.
  long long dot(const std::vector<int>& S, const std::vector<int>& T) const;

  /// |S| = S . complement(S). |S| == |complement(S)|, |empty| == 0.
  long long absolute(const std::vector<int>& S) const;

  long long degree(int v) const;
  int component_count() const;

  /// Dense adjacency (n*n multiplicities) for inner-loop calculus.
  std::vector<long long> dense() const;
};

/// Calculus helpers over a dense adjacency matrix, for hot loops:
/// |{x}|, |{x,y}|, |{x,y,z}| and pair dot products in O(1)/O(set^2).
struct DenseCalc {
  int n = 0;
  std::vector<long long> adj;
  std::vector<long long> deg;

  explicit DenseCalc(const MultiGraph& g);
  long long a(int u, int v) const { return adj[u * n + v]; }
  long long abs1(int x) const { return deg[x]; }
  long long abs2(int x, int y) const { return deg[x] + deg[y] - 2 * a(x, y); }
  long long abs3(int x, int y, int z) const {
    return deg[x] + deg[y] + deg[z] - 2 * (a(x, y) + a(x, z) + a(y, z));
  }
  long long abs_set(const std::vector<int>& S) const;
  long long dot_sets(const std::vector<int>& S, const std::vector<int>& T) const;
};

}  // namespace briar
