#include "briar/marked_graph.hpp"

#include <algorithm>
#include <map>

#include "briar/errors.hpp"

namespace briar {

void MarkedGraph::validate() const {
  if (!ctx) throw Error("MarkedGraph without context");
  if (!graph.connected()) throw Error("MarkedGraph: graph not connected");
  std::vector<int> count(ctx->sig.n(), 0);
  for (int v = 0; v < graph.V(); ++v)
    if (graph.vertex_group[v] >= 0) ++count[graph.vertex_group[v]];
  for (int i = 0; i < ctx->sig.n(); ++i)
    if (count[i] != 1)
      throw Error("factor " + ctx->sig.factors[i].name +
                  " must appear at exactly one vertex");
  if (graph.euler_rank() != ctx->sig.k())
    throw Error("fundamental-group rank bookkeeping failed");
  if (loops.size() != ctx->W.size())
    throw Error("loop family does not match W");
  for (const auto& l : loops) {
    LoopRep r = cyclically_reduce(ctx->sig, graph, l);
    if (!(r == l)) throw Error("w-loop stored non-reduced or non-canonical");
  }
}

long long MarkedGraph::translation_length(int w_index) const {
  if (w_index < 0 || w_index >= static_cast<int>(loops.size()))
    throw UnknownWord("word index out of range");
  return loops[w_index].length();
}

long long MarkedGraph::translation_length(const Word& w) const {
  int i = ctx->word_index(w);
  if (i < 0) throw UnknownWord("word is not in W");
  return translation_length(i);
}

long long MarkedGraph::total_length() const {
  long long s = 0;
  for (const auto& l : loops) s += l.length();
  return s;
}

long long MarkedGraph::norm() const {
  if (!reduced()) throw NotReduced("norm is defined for reduced marked graphs");
  return total_length();
}

MarkedGraph MarkedGraph::with_graph(GraphOfGroups g,
                                    std::vector<LoopRep> l) const {
  MarkedGraph m;
  m.ctx = ctx;
  m.graph = std::move(g);
  m.loops = std::move(l);
  return m;
}

StarGraph MarkedGraph::star_graph() const {
  StarGraph s;
  const auto& g = graph;
  s.dir_offset.assign(g.oriented_count(), 0);
  int total = 0;
  for (int e = 0; e < g.oriented_count(); ++e) {
    s.dir_offset[e] = total;
    int grp = g.vertex_group[g.init(e)];
    total += grp < 0 ? 1 : ctx->sig.factors[grp].order;
  }
  s.graph.n = total;
  s.dir_edge.resize(total);
  s.dir_g.resize(total);
  s.dir_vertex.resize(total);
  for (int e = 0; e < g.oriented_count(); ++e) {
    int grp = g.vertex_group[g.init(e)];
    int ord = grp < 0 ? 1 : ctx->sig.factors[grp].order;
    for (int x = 0; x < ord; ++x) {
      int id = s.dir_offset[e] + x;
      s.dir_edge[id] = e;
      s.dir_g[id] = x;
      s.dir_vertex[id] = g.init(e);
    }
  }
  // multiplicity accumulation over turns, orbit-saturated
  std::map<std::pair<int, int>, long long> acc;
  auto add_turn = [&](int v, Dir d1, Dir d2) {
    int grp = g.vertex_group[v];
    int ord = grp < 0 ? 1 : ctx->sig.factors[grp].order;
    for (int h = 0; h < ord; ++h) {
      int g1 = grp < 0 ? 0 : ctx->sig.factors[grp].prod(h, d1.g);
      int g2 = grp < 0 ? 0 : ctx->sig.factors[grp].prod(h, d2.g);
      int a = s.dir_id(d1.edge, g1), b = s.dir_id(d2.edge, g2);
      if (a == b) throw Error("degenerate turn in a reduced loop");
      if (a > b) std::swap(a, b);
      acc[{a, b}] += 1;
    }
  };
  for (const auto& loop : loops) {
    const auto& items = loop.items;
    const size_t n = items.size();
    for (size_t i = 0; i < n; ++i) {
      size_t j = (i + 1) % n;
      int v = g.term(items[i].edge);
      add_turn(v, Dir{GraphOfGroups::rev(items[i].edge), 0},
               Dir{items[j].edge, items[j].g});
    }
  }
  for (const auto& [key, m] : acc) s.graph.add_edge(key.first, key.second, m);
  return s;
}

long long StarGraph::abs_dir(const Dir& d) const {
  return graph.absolute({dir_id(d)});
}

long long StarGraph::abs_dirs(const std::vector<Dir>& ds) const {
  std::vector<int> ids;
  ids.reserve(ds.size());
  for (const auto& d : ds) ids.push_back(dir_id(d));
  return graph.absolute(ids);
}

Rational norm_from_star(const MarkedGraph& m, const StarGraph& s) {
  Rational total(0);
  std::vector<long long> val(s.num_dirs(), 0);
  for (size_t i = 0; i < s.graph.ends.size(); ++i) {
    val[s.graph.ends[i][0]] += s.graph.mult[i];
    val[s.graph.ends[i][1]] += s.graph.mult[i];
  }
  for (int d = 0; d < s.num_dirs(); ++d) {
    int grp = m.graph.vertex_group[s.dir_vertex[d]];
    long long ord = grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
    total += Rational(val[d], ord);
  }
  return total / 2;
}

LoopRep seed_loop(const SpineContext& ctx, const GraphOfGroups& g,
                  const Word& w) {
  // Seed shape: vertex 0 is the hub (factor 0); vertex i (1 <= i < n) is
  // factor i reached by spoke edge 2*(i-1); loops l_j are edge pairs
  // 2*(n-1+j). Words evaluate by substituting per-letter subpaths.
  const int n = ctx.sig.n();
  EdgePath p;
  p.base = 0;
  p.elts = {0};
  auto push_elt_at_hub = [&](int elt) {
    p.elts.back() = ctx.sig.factors[0].prod(p.elts.back(), elt);
  };
  for (const auto& l : w.letters) {
    if (l.kind == Letter::FACTOR) {
      if (l.index == 0) {
        push_elt_at_hub(l.elt);
      } else {
        int spoke = 2 * (l.index - 1);
        p.edges.push_back(spoke);
        p.elts.push_back(l.elt);
        p.edges.push_back(GraphOfGroups::rev(spoke));
        p.elts.push_back(0);
      }
    } else {
      int loop_edge = 2 * (n - 1 + l.index);
      p.edges.push_back(l.elt > 0 ? loop_edge
                                  : GraphOfGroups::rev(loop_edge));
      p.elts.push_back(0);
    }
  }
  return loop_from_path(ctx.sig, g, reduce_path(ctx.sig, g, p));
}

MarkedGraph standard_seed(std::shared_ptr<const SpineContext> ctx) {
  const int n = ctx->sig.n(), k = ctx->sig.k();
  if (n < 1)
    throw UnsupportedSignature("seed construction requires n >= 1");
  GraphOfGroups g;
  g.add_vertex(0);
  for (int i = 1; i < n; ++i) {
    g.add_vertex(i);
    g.add_edge(0, i);
  }
  for (int j = 0; j < k; ++j) g.add_edge(0, 0);
  MarkedGraph m;
  m.ctx = ctx;
  m.graph = g;
  m.loops.reserve(ctx->W.size());
  for (const auto& w : ctx->W) m.loops.push_back(seed_loop(*ctx, g, w));
  m.validate();
  return m;
}

MarkedGraph collapse_edge(const MarkedGraph& m, int e) {
  CollapseResult r = collapse_edge(m.ctx->sig, m.graph, m.loops, e);
  return m.with_graph(std::move(r.graph), std::move(r.loops));
}

MarkedGraph collapse_forest_m(const MarkedGraph& m, const std::set<int>& f) {
  CollapseResult r = collapse_forest(m.ctx->sig, m.graph, m.loops, f);
  return m.with_graph(std::move(r.graph), std::move(r.loops));
}

}  // namespace briar
