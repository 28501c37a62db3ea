#include "briar/multigraph.hpp"

#include <numeric>
#include <stdexcept>

#include "briar/errors.hpp"

namespace briar {

void MultiGraph::add_edge(int u, int v, long long m) {
  if (u == v) throw Error("MultiGraph: loop edges are not allowed");
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw Error("MultiGraph: vertex out of range");
  ends.push_back({u, v});
  mult.push_back(m);
}

long long MultiGraph::total_edges() const {
  return std::accumulate(mult.begin(), mult.end(), 0LL);
}

long long MultiGraph::dot(const std::vector<int>& S,
                          const std::vector<int>& T) const {
  std::vector<char> inS(n, 0), inT(n, 0);
  for (int v : S) inS[v] = 1;
  for (int v : T) {
    if (inS[v]) throw OverlappingSets("dot product needs disjoint sets");
    inT[v] = 1;
  }
  long long c = 0;
  for (size_t i = 0; i < ends.size(); ++i) {
    int u = ends[i][0], v = ends[i][1];
    if ((inS[u] && inT[v]) || (inS[v] && inT[u])) c += mult[i];
  }
  return c;
}

long long MultiGraph::absolute(const std::vector<int>& S) const {
  std::vector<char> inS(n, 0);
  for (int v : S) inS[v] = 1;
  long long c = 0;
  for (size_t i = 0; i < ends.size(); ++i)
    if (inS[ends[i][0]] != inS[ends[i][1]]) c += mult[i];
  return c;
}

long long MultiGraph::degree(int v) const {
  long long d = 0;
  for (size_t i = 0; i < ends.size(); ++i)
    if (ends[i][0] == v || ends[i][1] == v) d += mult[i];
  return d;
}

int MultiGraph::component_count() const {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : ends) {
    int a = find(e[0]), b = find(e[1]);
    if (a != b) parent[a] = b;
  }
  int c = 0;
  for (int v = 0; v < n; ++v)
    if (find(v) == v) ++c;
  return c;
}

std::vector<long long> MultiGraph::dense() const {
  std::vector<long long> m(static_cast<size_t>(n) * n, 0);
  for (size_t i = 0; i < ends.size(); ++i) {
    m[ends[i][0] * n + ends[i][1]] += mult[i];
    m[ends[i][1] * n + ends[i][0]] += mult[i];
  }
  return m;
}

DenseCalc::DenseCalc(const MultiGraph& g) : n(g.n), adj(g.dense()), deg(g.n) {
  for (int v = 0; v < n; ++v) {
    long long d = 0;
    for (int u = 0; u < n; ++u) d += adj[v * n + u];
    deg[v] = d;
  }
}

long long DenseCalc::abs_set(const std::vector<int>& S) const {
  long long d = 0;
  for (int x : S) d += deg[x];
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j) d -= 2 * a(S[i], S[j]);
  return d;
}

long long DenseCalc::dot_sets(const std::vector<int>& S,
                              const std::vector<int>& T) const {
  long long d = 0;
  for (int x : S)
    for (int y : T) d += a(x, y);
  return d;
}

}  // namespace briar
