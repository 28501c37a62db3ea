#include "briar/graph_of_groups.hpp"

#include <algorithm>
#include <numeric>

#include "briar/errors.hpp"

namespace briar {

std::vector<int> GraphOfGroups::star(int v) const {
  std::vector<int> out;
  for (int e = 0; e < oriented_count(); ++e)
    if (init(e) == v) out.push_back(e);
  return out;
}

int GraphOfGroups::valence(int v) const {
  int c = 0;
  for (int e = 0; e < oriented_count(); ++e)
    if (init(e) == v) ++c;
  return c;
}

bool GraphOfGroups::connected() const {
  if (V() == 0) return false;
  std::vector<bool> seen(V(), false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e = 0; e < oriented_count(); ++e)
      if (init(e) == v && !seen[term(e)]) {
        seen[term(e)] = true;
        stack.push_back(term(e));
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

int GraphOfGroups::euler_rank() const {
  return unoriented_count() - V() + 1;
}

void validate_path(const FactorSignature& sig, const GraphOfGroups& g,
                   const EdgePath& p) {
  if (p.elts.size() != p.edges.size() + 1)
    throw IncidenceError("element/edge count mismatch");
  int at = p.base;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    if (e < 0 || e >= g.oriented_count()) throw IncidenceError("bad edge id");
    if (g.init(e) != at) throw IncidenceError("edges do not chain");
    at = g.term(e);
  }
  at = p.base;
  for (size_t i = 0; i < p.elts.size(); ++i) {
    int grp = g.vertex_group[at];
    int order = grp < 0 ? 1 : sig.factors[grp].order;
    if (p.elts[i] < 0 || p.elts[i] >= order)
      throw IncidenceError("group element out of range at vertex");
    if (i < p.edges.size()) at = g.term(p.edges[i]);
  }
}

namespace {

int vgroup_prod(const FactorSignature& sig, const GraphOfGroups& g, int v,
                int a, int b) {
  int grp = g.vertex_group[v];
  if (grp < 0) return 0;
  return sig.factors[grp].prod(a, b);
}

[[maybe_unused]] int vgroup_inv(const FactorSignature& sig, const GraphOfGroups& g, int v,
               int a) {
  int grp = g.vertex_group[v];
  if (grp < 0) return 0;
  return sig.factors[grp].inverse(a);
}

}  // namespace

EdgePath reduce_path(const FactorSignature& sig, const GraphOfGroups& g,
                     EdgePath p) {
  validate_path(sig, g, p);
  EdgePath out;
  out.base = p.base;
  out.elts = {p.elts[0]};
  for (size_t i = 0; i < p.edges.size(); ++i) {
    int e = p.edges[i];
    int gnext = p.elts[i + 1];
    if (!out.edges.empty() && e == GraphOfGroups::rev(out.edges.back()) &&
        out.elts.back() == 0) {
      // backtrack e 1 e-bar: drop it and merge the flanking elements
      out.edges.pop_back();
      out.elts.pop_back();
      int v = out.edges.empty() ? out.base : g.term(out.edges.back());
      out.elts.back() = vgroup_prod(sig, g, v, out.elts.back(), gnext);
    } else {
      out.edges.push_back(e);
      out.elts.push_back(gnext);
    }
  }
  return out;
}

void canonical_rotation(LoopRep& l) {
  if (l.items.size() < 2) return;
  std::vector<LoopItem> best = l.items;
  std::vector<LoopItem> cur = l.items;
  for (size_t r = 1; r < l.items.size(); ++r) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (std::lexicographical_compare(cur.begin(), cur.end(), best.begin(),
                                     best.end(), std::less<LoopItem>()))
      best = cur;
  }
  l.items = std::move(best);
}

LoopRep cyclically_reduce(const FactorSignature& sig, const GraphOfGroups& g,
                          LoopRep l) {
  auto& it = l.items;
  bool changed = true;
  while (changed && !it.empty()) {
    changed = false;
    const size_t n = it.size();
    for (size_t i = 0; i < n; ++i) {
      size_t j = (i + 1) % n;
      if (it[j].edge == GraphOfGroups::rev(it[i].edge) && it[j].g == 0) {
        // crossing pair e 1 e-bar; merge it[i].g into the next crossing
        int carried = it[i].g;
        int v = g.init(it[i].edge);
        if (n == 2) {
          l.elliptic_vertex = v;
          l.elliptic_elt = carried;
          it.clear();
        } else {
          size_t k = (j + 1) % n;
          it[k].g = vgroup_prod(sig, g, v, carried, it[k].g);
          // erase j first if it comes after i, else mind the shift
          if (j > i) {
            it.erase(it.begin() + j);
            it.erase(it.begin() + i);
          } else {  // j == 0, i == n-1
            it.erase(it.begin() + i);
            it.erase(it.begin() + j);
          }
        }
        changed = true;
        break;
      }
    }
  }
  canonical_rotation(l);
  return l;
}

LoopRep loop_from_path(const FactorSignature& sig, const GraphOfGroups& g,
                       const EdgePath& p) {
  validate_path(sig, g, p);
  if (!p.closed(g)) throw IncidenceError("loop_from_path: path not closed");
  LoopRep l;
  if (p.edges.empty()) {
    l.elliptic_vertex = p.base;
    l.elliptic_elt = p.elts[0];
    return l;
  }
  l.items.resize(p.edges.size());
  for (size_t i = 0; i < p.edges.size(); ++i) {
    l.items[i].edge = p.edges[i];
    l.items[i].g = p.elts[i];
  }
  // fold the trailing element into the first crossing
  l.items[0].g = vgroup_prod(sig, g, p.base, p.elts.back(), l.items[0].g);
  return cyclically_reduce(sig, g, std::move(l));
}

CollapseResult collapse_edge(const FactorSignature& sig,
                             const GraphOfGroups& g,
                             const std::vector<LoopRep>& loops, int e) {
  if (g.is_loop_edge(e)) throw IllegalCollapse("edge is a loop");
  int a = g.init(e), b = g.term(e);
  int ga = g.vertex_group[a], gb = g.vertex_group[b];
  if (ga >= 0 && gb >= 0)
    throw IllegalCollapse("both endpoints have nontrivial vertex group");
  int merged_group = ga >= 0 ? ga : gb;

  CollapseResult r;
  r.vertex_map.assign(g.V(), -1);
  // keep vertex ids stable except the dropped endpoint; merge into min(a,b)
  int keep = std::min(a, b), drop = std::max(a, b);
  for (int v = 0, nv = 0; v < g.V(); ++v) {
    if (v == drop) continue;
    r.vertex_map[v] = nv++;
  }
  r.vertex_map[drop] = r.vertex_map[keep];
  r.graph.vertex_group.assign(g.V() - 1, -1);
  for (int v = 0; v < g.V(); ++v)
    if (v != drop) r.graph.vertex_group[r.vertex_map[v]] = g.vertex_group[v];
  r.graph.vertex_group[r.vertex_map[keep]] = merged_group;

  r.edge_map.assign(g.oriented_count(), -1);
  int ue = e & ~1;
  for (int f = 0; f < g.oriented_count(); f += 2) {
    if (f == ue) continue;
    int nf = r.graph.add_edge(r.vertex_map[g.init(f)],
                              r.vertex_map[g.term(f)]);
    r.edge_map[f] = nf;
    r.edge_map[f ^ 1] = nf ^ 1;
  }

  // rewrite loops: delete crossings of e, carrying their group element into
  // the next crossing, then re-reduce
  for (const auto& loop : loops) {
    LoopRep nl;
    if (loop.elliptic()) {
      nl.elliptic_vertex = r.vertex_map[loop.elliptic_vertex];
      nl.elliptic_elt = loop.elliptic_elt;
      r.loops.push_back(std::move(nl));
      continue;
    }
    int pending = 0;  // element of the merged vertex group
    for (const auto& item : loop.items) {
      if ((item.edge & ~1) == ue) {
        // one endpoint of e is trivial, so exactly one of {pending, item.g}
        // can be nontrivial; both live at the merged vertex afterwards
        int v = g.init(item.edge);
        int val = g.vertex_group[v] >= 0 ? item.g : 0;
        pending = merged_group >= 0
                      ? sig.factors[merged_group].prod(pending, val)
                      : 0;
        continue;
      }
      LoopItem ni;
      ni.edge = r.edge_map[item.edge];
      int v = g.init(item.edge);
      bool at_merged = (v == a || v == b);
      if (at_merged && merged_group >= 0) {
        int val = g.vertex_group[v] >= 0 ? item.g : 0;
        ni.g = sig.factors[merged_group].prod(pending, val);
      } else {
        ni.g = item.g;
      }
      pending = 0;
      nl.items.push_back(ni);
    }
    if (nl.items.empty()) {
      nl.elliptic_vertex = r.vertex_map[a];
      nl.elliptic_elt = pending;
    } else if (pending != 0) {
      // wraparound carry into the first crossing (its initial vertex is the
      // merged vertex, since the deleted crossing ended there)
      nl.items[0].g =
          sig.factors[merged_group].prod(pending, nl.items[0].g);
    }
    r.loops.push_back(cyclically_reduce(sig, r.graph, std::move(nl)));
  }
  return r;
}

VertexOfLReport is_vertex_of_L(const GraphOfGroups& g) {
  VertexOfLReport rep;
  auto fail = [&](std::string s) {
    rep.ok = false;
    rep.violation = std::move(s);
    return rep;
  };
  if (!g.connected()) return fail("graph is not connected");
  for (int v = 0; v < g.V(); ++v) {
    int val = g.valence(v);
    if (val <= 2 && g.vertex_group[v] < 0)
      return fail("valence-" + std::to_string(val) + " vertex " +
                  std::to_string(v) + " has trivial group");
  }
  // condition 3: every separating edge leaves a nontrivial-group vertex in
  // both complementary components
  for (int e = 0; e < g.oriented_count(); e += 2) {
    if (g.is_loop_edge(e)) continue;
    std::vector<int> comp(g.V(), -1);
    int ncomp = 0;
    for (int s = 0; s < g.V(); ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = ncomp;
      std::vector<int> stack = {s};
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int f = 0; f < g.oriented_count(); ++f) {
          if ((f & ~1) == (e & ~1)) continue;
          if (g.init(f) == v && comp[g.term(f)] < 0) {
            comp[g.term(f)] = ncomp;
            stack.push_back(g.term(f));
          }
        }
      }
      ++ncomp;
    }
    if (ncomp == 1) continue;  // e does not separate
    std::vector<bool> has_group(ncomp, false);
    for (int v = 0; v < g.V(); ++v)
      if (g.vertex_group[v] >= 0) has_group[comp[v]] = true;
    for (int c = 0; c < ncomp; ++c)
      if (!has_group[c])
        return fail("edge " + std::to_string(e / 2) +
                    " separates off a component with only trivial groups");
  }
  return rep;
}

bool is_reduced(const GraphOfGroups& g) {
  for (int e = 0; e < g.oriented_count(); e += 2) {
    if (g.is_loop_edge(e)) continue;
    if (g.vertex_group[g.init(e)] < 0 || g.vertex_group[g.term(e)] < 0)
      return false;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

bool is_collapsible_forest(const GraphOfGroups& g, const std::set<int>& forest) {
  UnionFind uf(g.V());
  for (int e : forest) {
    if (g.is_loop_edge(e)) return false;
    if (!uf.unite(g.init(e), g.term(e))) return false;  // cycle
  }
  std::vector<int> nontrivial(g.V(), 0);
  for (int v = 0; v < g.V(); ++v)
    if (g.vertex_group[v] >= 0) {
      int root = uf.find(v);
      if (++nontrivial[root] > 1) return false;
    }
  return true;
}

std::vector<std::set<int>> maximal_forests(const GraphOfGroups& g) {
  std::vector<int> candidates;
  for (int e = 0; e < g.oriented_count(); e += 2) {
    if (g.is_loop_edge(e)) continue;
    if (g.vertex_group[g.init(e)] >= 0 && g.vertex_group[g.term(e)] >= 0)
      continue;
    candidates.push_back(e);
  }
  std::vector<std::set<int>> all;
  const int m = static_cast<int>(candidates.size());
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::set<int> f;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) f.insert(candidates[i]);
    if (is_collapsible_forest(g, f)) all.push_back(std::move(f));
  }
  std::vector<std::set<int>> maximal;
  for (const auto& f : all) {
    bool dominated = false;
    for (const auto& h : all) {
      if (h.size() <= f.size()) continue;
      if (std::includes(h.begin(), h.end(), f.begin(), f.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(f);
  }
  return maximal;
}

int forest_exchange(const GraphOfGroups& g, const std::set<int>& F,
                    const std::set<int>& F2, int e2) {
  e2 &= ~1;
  if (!is_collapsible_forest(g, F) || !is_collapsible_forest(g, F2))
    throw ExchangeImpossible("inputs are not collapsible forests");
  if (!F2.count(e2) || F.count(e2))
    throw ExchangeImpossible("e2 must lie in F2 - F");

  // adjacency within F
  auto path_in_forest = [&](int from, int to) -> std::vector<int> {
    // BFS over F edges; returns unoriented edge ids along the path
    std::vector<int> prev_edge(g.V(), -1), prev_vertex(g.V(), -1);
    std::vector<bool> seen(g.V(), false);
    std::vector<int> queue = {from};
    seen[from] = true;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int e : F) {
        int x = g.init(e), y = g.term(e);
        int other = -1;
        if (x == v) other = y;
        else if (y == v) other = x;
        else continue;
        if (!seen[other]) {
          seen[other] = true;
          prev_edge[other] = e;
          prev_vertex[other] = v;
          queue.push_back(other);
        }
      }
    }
    std::vector<int> path;
    if (!seen[to]) return path;
    for (int v = to; v != from; v = prev_vertex[v]) path.push_back(prev_edge[v]);
    return path;
  };

  std::vector<int> C;  // unoriented edges of the cycle or geodesic
  int u = g.init(e2), w = g.term(e2);
  std::vector<int> p = path_in_forest(u, w);
  if (!p.empty()) {
    // adding e2 closes a cycle
    C = p;
    C.push_back(e2);
  } else {
    // adding e2 must join two nontrivial-group vertices within a component;
    // find them and take the unique geodesic in F + e2
    std::set<int> Fe = F;
    Fe.insert(e2);
    UnionFind uf(g.V());
    for (int e : Fe) uf.unite(g.init(e), g.term(e));
    int root = uf.find(u);
    std::vector<int> heavy;
    for (int v = 0; v < g.V(); ++v)
      if (uf.find(v) == root && g.vertex_group[v] >= 0) heavy.push_back(v);
    if (heavy.size() < 2)
      throw ExchangeImpossible("F + e2 is still a collapsible forest");
    // geodesic between the two nontrivial vertices, inside the tree F + e2
    auto path_in = [&](const std::set<int>& forest, int from, int to) {
      std::vector<int> prev_edge(g.V(), -1), prev_vertex(g.V(), -1);
      std::vector<bool> seen(g.V(), false);
      std::vector<int> queue = {from};
      seen[from] = true;
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (int e : forest) {
          int x = g.init(e), y = g.term(e);
          int other = x == v ? y : (y == v ? x : -1);
          if (other >= 0 && !seen[other]) {
            seen[other] = true;
            prev_edge[other] = e;
            prev_vertex[other] = v;
            queue.push_back(other);
          }
        }
      }
      std::vector<int> path;
      for (int v = to; v != from; v = prev_vertex[v]) path.push_back(prev_edge[v]);
      return path;
    };
    C = path_in(Fe, heavy[0], heavy[1]);
  }

  for (int e : C) {
    if (e == e2 || !F.count(e) || F2.count(e)) continue;
    std::set<int> alt = F;
    alt.erase(e);
    alt.insert(e2);
    if (!is_collapsible_forest(g, alt)) continue;
    // maximality: same cardinality as the maximal forest F
    return e;
  }
  throw ExchangeImpossible("no exchange edge found on the cycle");
}

CollapseResult collapse_forest(const FactorSignature& sig,
                               const GraphOfGroups& g,
                               const std::vector<LoopRep>& loops,
                               const std::set<int>& forest) {
  if (!is_collapsible_forest(g, forest))
    throw IllegalCollapse("edge set is not a collapsible forest");
  CollapseResult acc;
  acc.graph = g;
  acc.loops = loops;
  acc.vertex_map.resize(g.V());
  std::iota(acc.vertex_map.begin(), acc.vertex_map.end(), 0);
  acc.edge_map.resize(g.oriented_count());
  std::iota(acc.edge_map.begin(), acc.edge_map.end(), 0);
  for (int e : forest) {
    int cur = acc.edge_map[e];
    CollapseResult step = collapse_edge(sig, acc.graph, acc.loops, cur);
    for (auto& v : acc.vertex_map) v = step.vertex_map[v];
    for (auto& f : acc.edge_map) f = (f < 0) ? -1 : step.edge_map[f];
    acc.graph = std::move(step.graph);
    acc.loops = std::move(step.loops);
  }
  return acc;
}

}  // namespace briar
