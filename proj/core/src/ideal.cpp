#include "briar/ideal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "briar/errors.hpp"

namespace briar {

namespace {

int vgorder(const MarkedGraph& m, int v) {
  int grp = m.graph.vertex_group[v];
  return grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
}

int vgprod(const MarkedGraph& m, int v, int a, int b) {
  int grp = m.graph.vertex_group[v];
  return grp < 0 ? 0 : m.ctx->sig.factors[grp].prod(a, b);
}

}  // namespace

std::vector<Dir> D_alpha(const IdealEdge& a) {
  std::vector<Dir> out;
  std::set<int> edges;
  for (const auto& d : a.dirs) edges.insert(d.edge);
  for (const auto& d : a.dirs)
    if (!edges.count(GraphOfGroups::rev(d.edge))) out.push_back(d);
  return out;
}

bool ideal_edge_valid(const MarkedGraph& m, const IdealEdge& a,
                      std::string* why) {
  auto fail = [&](const char* s) {
    if (why) *why = s;
    return false;
  };
  if (a.dirs.size() < 2) return fail("needs at least two directions");
  std::set<int> edges;
  for (const auto& d : a.dirs) {
    if (d.edge < 0 || d.edge >= m.graph.oriented_count())
      return fail("bad edge id");
    if (m.graph.init(d.edge) != a.vertex)
      return fail("direction not based at the vertex");
    if (d.g < 0 || d.g >= vgorder(m, a.vertex))
      return fail("group element out of range");
    if (!edges.insert(d.edge).second)
      return fail("two directions share an orbit");
  }
  long long Dv = static_cast<long long>(m.graph.valence(a.vertex)) *
                 vgorder(m, a.vertex);
  if (Dv - static_cast<long long>(a.dirs.size()) < 2)
    return fail("complement has fewer than two directions");
  if (D_alpha(a).empty()) return fail("D(alpha) is empty");
  return true;
}

IdealEdge translate(const MarkedGraph& m, const IdealEdge& a, int h) {
  IdealEdge out;
  out.vertex = a.vertex;
  out.dirs.reserve(a.dirs.size());
  for (const auto& d : a.dirs)
    out.dirs.push_back(Dir{d.edge, vgprod(m, a.vertex, h, d.g)});
  std::sort(out.dirs.begin(), out.dirs.end());
  return out;
}

IdealEdge complement(const MarkedGraph& m, const IdealEdge& a) {
  IdealEdge out;
  out.vertex = a.vertex;
  std::set<Dir> in(a.dirs.begin(), a.dirs.end());
  for (int e : m.graph.star(a.vertex))
    for (int g = 0; g < vgorder(m, a.vertex); ++g)
      if (!in.count(Dir{e, g})) out.dirs.push_back(Dir{e, g});
  std::sort(out.dirs.begin(), out.dirs.end());
  return out;
}

IdealEdge class_rep(const MarkedGraph& m, const IdealEdge& a) {
  IdealEdge best = translate(m, a, 0);
  for (int h = 1; h < vgorder(m, a.vertex); ++h)
    best = std::min(best, translate(m, a, h));
  if (m.graph.vertex_group[a.vertex] < 0) {
    IdealEdge c = complement(m, a);
    if (c.dirs.size() >= 2) best = std::min(best, c);
  }
  return best;
}

bool same_class(const MarkedGraph& m, const IdealEdge& a, const IdealEdge& b) {
  if (a.vertex != b.vertex) return false;
  return class_rep(m, a) == class_rep(m, b);
}

bool contained_in(const MarkedGraph& m, const IdealEdge& a,
                  const IdealEdge& b) {
  if (a.vertex != b.vertex) return false;
  std::set<Dir> bs(b.dirs.begin(), b.dirs.end());
  for (int h = 0; h < vgorder(m, a.vertex); ++h) {
    IdealEdge t = translate(m, a, h);
    bool sub = true;
    for (const auto& d : t.dirs)
      if (!bs.count(d)) {
        sub = false;
        break;
      }
    if (sub) return true;
  }
  return false;
}

bool orbits_disjoint(const IdealEdge& a, const IdealEdge& b) {
  if (a.vertex != b.vertex) return true;
  std::set<int> ea;
  for (const auto& d : a.dirs) ea.insert(d.edge);
  for (const auto& d : b.dirs)
    if (ea.count(d.edge)) return false;
  return true;
}

bool compatible(const MarkedGraph& m, const IdealEdge& a, const IdealEdge& b) {
  return orbits_disjoint(a, b) || contained_in(m, a, b) ||
         contained_in(m, b, a);
}

std::vector<IdealEdge> enumerate_ideal_edges(const MarkedGraph& m, int v,
                                             int max_size) {
  std::vector<int> st = m.graph.star(v);
  if (static_cast<int>(st.size()) < 2)
    throw InactiveVertex("vertex has valence < 2");
  int ord = vgorder(m, v);
  std::set<IdealEdge> reps;
  // choose a subset of edges and one group element per chosen edge
  const int E = static_cast<int>(st.size());
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int i) {
    if (static_cast<int>(chosen.size()) >= 2 &&
        static_cast<int>(chosen.size()) <= max_size) {
      // assign elements
      std::vector<int> elt(chosen.size(), 0);
      std::function<void(size_t)> assign = [&](size_t j) {
        if (j == chosen.size()) {
          IdealEdge a;
          a.vertex = v;
          for (size_t t = 0; t < chosen.size(); ++t)
            a.dirs.push_back(Dir{st[chosen[t]], elt[t]});
          std::sort(a.dirs.begin(), a.dirs.end());
          std::string why;
          if (ideal_edge_valid(m, a, &why)) reps.insert(class_rep(m, a));
          return;
        }
        for (int x = 0; x < ord; ++x) {
          elt[j] = x;
          assign(j + 1);
        }
      };
      assign(0);
    }
    if (i == E || static_cast<int>(chosen.size()) >= max_size) return;
    for (int j = i; j < E; ++j) {
      chosen.push_back(j);
      rec(j + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return std::vector<IdealEdge>(reps.begin(), reps.end());
}

std::vector<std::vector<IdealEdge>> enumerate_ideal_forests(
    const MarkedGraph& m, int max_family) {
  std::vector<IdealEdge> all;
  for (int v = 0; v < m.graph.V(); ++v) {
    if (m.graph.valence(v) < 2) continue;
    auto at_v = enumerate_ideal_edges(m, v, m.graph.valence(v));
    all.insert(all.end(), at_v.begin(), at_v.end());
  }
  std::sort(all.begin(), all.end());
  std::vector<std::vector<IdealEdge>> out;
  std::vector<IdealEdge> cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) >= max_family) return;
    for (size_t j = i; j < all.size(); ++j) {
      bool ok = true;
      for (const auto& c : cur)
        if (same_class(m, c, all[j]) || !compatible(m, c, all[j])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(all[j]);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

namespace {

// single blow-up step; forest entries still to process are rewritten
MarkedGraph blow_one(const MarkedGraph& m, const IdealEdge& alpha,
                     int* new_edge, int* new_vertex,
                     std::vector<IdealEdge>* rest) {
  const int v = alpha.vertex;
  GraphOfGroups g = m.graph;
  int va = g.add_vertex(-1);
  // reattach: every edge with a direction in alpha now starts at v_alpha
  std::set<int> moved;
  std::vector<int> g_of_edge(g.oriented_count(), -1);
  for (const auto& d : alpha.dirs) {
    moved.insert(d.edge);
    g_of_edge[d.edge] = d.g;
  }
  for (int e : moved) g.edge_init[e] = va;
  int a_edge = g.add_edge(v, va);
  *new_edge = a_edge;
  *new_vertex = va;

  // lift loops: h.e -> (h g^-1) a e  and  e-bar h -> e-bar a-bar (g h)
  std::vector<LoopRep> loops;
  loops.reserve(m.loops.size());
  const auto& sig = m.ctx->sig;
  int grp = m.graph.vertex_group[v];
  auto gprod = [&](int x, int y) {
    return grp < 0 ? 0 : sig.factors[grp].prod(x, y);
  };
  auto ginv = [&](int x) { return grp < 0 ? 0 : sig.factors[grp].inverse(x); };
  for (const auto& loop : m.loops) {
    LoopRep nl;
    if (loop.elliptic()) {
      nl = loop;
      loops.push_back(cyclically_reduce(sig, g, std::move(nl)));
      continue;
    }
    const auto& items = loop.items;
    const size_t n = items.size();
    for (size_t i = 0; i < n; ++i) {
      int prev_edge = items[(i + n - 1) % n].edge;
      bool arrived_at_va = moved.count(GraphOfGroups::rev(prev_edge)) > 0;
      int h = items[i].g;
      if (arrived_at_va) {
        nl.items.push_back(LoopItem{0, GraphOfGroups::rev(a_edge)});
        h = gprod(g_of_edge[GraphOfGroups::rev(prev_edge)], h);
      }
      if (moved.count(items[i].edge)) {
        nl.items.push_back(
            LoopItem{gprod(h, ginv(g_of_edge[items[i].edge])), a_edge});
        nl.items.push_back(LoopItem{0, items[i].edge});
      } else {
        nl.items.push_back(LoopItem{h, items[i].edge});
      }
    }
    loops.push_back(cyclically_reduce(sig, g, std::move(nl)));
  }
  MarkedGraph out = m.with_graph(std::move(g), std::move(loops));

  // rewrite the remaining forest entries
  if (rest) {
    for (auto& rho : *rest) {
      if (rho.vertex != v) continue;
      if (contained_in(m, rho, alpha)) {
        // find the aligning translate and move it to v_alpha
        for (int h = 0; h < (grp < 0 ? 1 : sig.factors[grp].order); ++h) {
          IdealEdge t = translate(m, rho, h);
          bool sub = true;
          std::set<Dir> as(alpha.dirs.begin(), alpha.dirs.end());
          for (const auto& d : t.dirs)
            if (!as.count(d)) {
              sub = false;
              break;
            }
          if (sub) {
            IdealEdge moved_rho;
            moved_rho.vertex = va;
            for (const auto& d : t.dirs) moved_rho.dirs.push_back(Dir{d.edge, 0});
            std::sort(moved_rho.dirs.begin(), moved_rho.dirs.end());
            rho = moved_rho;
            break;
          }
        }
      }
      // disjoint entries keep their directions; edge ids are stable
    }
  }
  return out;
}

}  // namespace

BlowUpResult blow_up(const MarkedGraph& m, std::vector<IdealEdge> forest) {
  for (const auto& a : forest) {
    std::string why;
    if (!ideal_edge_valid(m, a, &why))
      throw IncompatibleForest("invalid ideal edge: " + why);
  }
  for (size_t i = 0; i < forest.size(); ++i)
    for (size_t j = i + 1; j < forest.size(); ++j) {
      if (same_class(m, forest[i], forest[j]))
        throw IncompatibleForest("two ideal edges in the same class");
      if (!compatible(m, forest[i], forest[j]))
        throw IncompatibleForest("ideal edges are not compatible");
    }
  // containment-maximal first: larger sizes first, canonical tie order
  std::vector<size_t> idx(forest.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (forest[a].dirs.size() != forest[b].dirs.size())
      return forest[a].dirs.size() > forest[b].dirs.size();
    return forest[a] < forest[b];
  });

  BlowUpResult r;
  r.alpha_edge.assign(forest.size(), -1);
  r.alpha_vertex.assign(forest.size(), -1);
  MarkedGraph cur = m;
  std::vector<IdealEdge> work;
  for (size_t t : idx) work.push_back(forest[t]);
  for (size_t step = 0; step < work.size(); ++step) {
    IdealEdge alpha = work[step];
    std::vector<IdealEdge> rest(work.begin() + step + 1, work.end());
    int ne = -1, nv = -1;
    cur = blow_one(cur, alpha, &ne, &nv, &rest);
    std::copy(rest.begin(), rest.end(), work.begin() + step + 1);
    r.alpha_edge[idx[step]] = ne;
    r.alpha_vertex[idx[step]] = nv;
  }
  r.out = std::move(cur);
  return r;
}

MarkedGraph whitehead_move(const MarkedGraph& m, const IdealEdge& a, Dir d) {
  if (!m.reduced()) throw NotReduced("whitehead_move requires a reduced graph");
  auto Da = D_alpha(a);
  if (std::find(Da.begin(), Da.end(), d) == Da.end())
    throw NotInDalpha("direction is not in D(alpha)");
  BlowUpResult b = blow_up(m, {a});
  MarkedGraph out = collapse_edge(b.out, d.edge);
  if (!out.reduced())
    throw Error("whitehead move produced a non-reduced graph");
  return out;
}

MoveEffect move_reductivity(const StarGraph& s, const IdealEdge& a, Dir d) {
  long long na = s.abs_dirs(a.dirs);
  long long ne = s.abs_dir(d);
  if (na > ne) return MoveEffect::INCREASE;
  if (na == ne) return MoveEffect::EQUAL;
  return MoveEffect::STRICT_DECREASE;
}

bool is_reductive(const StarGraph& s, const IdealEdge& a) {
  for (const auto& d : D_alpha(a))
    if (move_reductivity(s, a, d) == MoveEffect::INCREASE) return false;
  return true;
}

bool supports_strict_increase(const StarGraph& s, const IdealEdge& a) {
  return !is_reductive(s, a);
}

Dir best_strict_move(const StarGraph& s, const IdealEdge& a) {
  long long na = s.abs_dirs(a.dirs);
  Dir best{};
  long long best_gap = 0;
  bool have = false;
  for (const auto& d : D_alpha(a)) {
    long long gap = na - s.abs_dir(d);
    if (gap > 0 && (!have || gap > best_gap ||
                    (gap == best_gap && d < best))) {
      have = true;
      best = d;
      best_gap = gap;
    }
  }
  if (!have) throw NotFound("ideal edge supports no strictly increasing move");
  return best;
}

EqStarCheck check_eq_star(const MarkedGraph& m,
                          const std::vector<IdealEdge>& forest,
                          const std::vector<Dir>& choice) {
  if (forest.size() != choice.size())
    throw BadEdgeChoice("one direction per ideal edge required");
  for (size_t i = 0; i < forest.size(); ++i) {
    auto Da = D_alpha(forest[i]);
    if (std::find(Da.begin(), Da.end(), choice[i]) == Da.end())
      throw BadEdgeChoice("chosen direction not in D(alpha)");
  }
  StarGraph s = m.star_graph();
  long long rhs = m.norm();
  for (size_t i = 0; i < forest.size(); ++i)
    rhs += s.abs_dirs(forest[i].dirs) - s.abs_dir(choice[i]);

  BlowUpResult b = blow_up(m, forest);
  // the chosen edges must form a collapsible forest upstairs
  std::set<int> chosen;
  for (const auto& d : choice) chosen.insert(d.edge & ~1);
  if (!is_collapsible_forest(b.out.graph, chosen))
    throw BadEdgeChoice("chosen edges are not a collapsible forest upstairs");
  CollapseResult c =
      collapse_forest(m.ctx->sig, b.out.graph, b.out.loops, chosen);
  EqStarCheck r;
  r.result = m.with_graph(std::move(c.graph), std::move(c.loops));
  r.lhs = r.result.total_length();
  r.rhs = rhs;
  r.ok = (r.lhs == r.rhs);
  return r;
}

}  // namespace briar
