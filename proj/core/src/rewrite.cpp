#include <algorithm>
#include <functional>
#include <set>

#include "briar/errors.hpp"
#include "briar/paths.hpp"
#include "briar/lemmas.hpp"
#include "briar/polygon.hpp"

namespace briar {

namespace {

int order_at(const MarkedGraph& m, int v) {
  int grp = m.graph.vertex_group[v];
  return grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
}

Dir act(const MarkedGraph& m, int v, int h, const Dir& d) {
  int grp = m.graph.vertex_group[v];
  return Dir{d.edge, grp < 0 ? 0 : m.ctx->sig.factors[grp].prod(h, d.g)};
}

}  // namespace

Reroute reroute_compatible(const MarkedGraph& tau, const StarGraph& star,
                           const IdealEdge& alpha, Dir e_dir,
                           const IdealEdge& beta, Dir f_dir) {
  bool same = same_class(tau, alpha, beta);
  if (!same && !compatible(tau, alpha, beta))
    throw IncompatibleEdges("reroute requires compatible ideal edges");
  long long na = star.abs_dirs(alpha.dirs), nb = star.abs_dirs(beta.dirs);
  long long ne = star.abs_dir(e_dir), nf = star.abs_dir(f_dir);
  if (!(na > ne))
    throw IncompatibleEdges("(alpha,e) must strictly increase norm");
  if (!(nb >= nf))
    throw IncompatibleEdges("(beta,f) must not decrease norm");
  long long base = tau.norm();

  Reroute out;
  out.square.norm_floor = base;

  if (same) {
    // degenerate square through tau^alpha
    int h = -1;
    for (int g = 0; g < order_at(tau, alpha.vertex); ++g)
      if (translate(tau, beta, g) == alpha) h = g;
    if (h < 0)
      throw IncompatibleEdges("equivalent ideal edges failed to align");
    Dir f_t = act(tau, alpha.vertex, h, f_dir);
    BlowUpResult b = blow_up(tau, {alpha});
    MarkedGraph left = collapse_edge(b.out, e_dir.edge);
    out.square.center = b.out;
    if ((e_dir.edge & ~1) == (f_t.edge & ~1)) {
      out.path.entries = {left};
    } else {
      MarkedGraph right = collapse_edge(b.out, f_t.edge);
      out.path.entries = {left, b.out, right};
    }
    out.square.old_entries = {left, b.out, tau, b.out,
                              out.path.entries.back()};
    out.square.new_entries = out.path.entries;
    return out;
  }

  BlowUpResult b2 = blow_up(tau, {alpha, beta});
  const MarkedGraph& G2 = b2.out;
  int a_edge = b2.alpha_edge[0] & ~1;
  int b_edge = b2.alpha_edge[1] & ~1;
  int e_u = e_dir.edge & ~1;
  int f_u = f_dir.edge & ~1;

  auto entry = [&](std::set<int> edges) {
    return collapse_forest_m(G2, edges);
  };

  MarkedGraph left = entry({b_edge, e_u});   // tau^alpha_e
  MarkedGraph right = entry({a_edge, f_u});  // tau^beta_f
  out.square.center = G2;
  out.square.old_entries = {left, entry({b_edge}), tau, entry({a_edge}),
                            right};

  if (e_u == f_u) {
    out.path.entries = {left, entry({e_u}), right};
  } else if (is_collapsible_forest(G2.graph, {e_u, f_u})) {
    out.path.entries = {left, entry({e_u}), entry({e_u, f_u}), entry({f_u}),
                        right};
  } else {
    // two-edge-loop case: {e,f} spans a loop through both new vertices,
    // but {alpha,f} and {beta,e} are forests
    if (ne >= nf) {
      out.path.entries = {left, entry({b_edge}), entry({b_edge, f_u}),
                          entry({f_u}), right};
    } else {
      out.path.entries = {left, entry({e_u}), entry({a_edge, e_u}),
                          entry({a_edge}), right};
    }
  }
  out.square.new_entries = out.path.entries;

  for (size_t i = 0; i < out.path.entries.size(); i += 2)
    if (!out.path.entries[i].reduced())
      throw Error("reroute produced a non-reduced even entry");
  for (size_t i = 2; i + 2 < out.path.entries.size(); i += 2)
    if (out.path.entries[i].total_length() <= base)
      throw Error("reroute interior norm bound failed");
  return out;
}

MovePair shrink_to_size_two(const MarkedGraph& tau, const StarGraph& star,
                            const IdealEdge& alpha, Dir e_dir) {
  if (star.abs_dirs(alpha.dirs) < star.abs_dir(e_dir))
    throw HypothesesNotMet("shrink requires |alpha| >= |e|");
  if (alpha.dirs.size() == 2) return MovePair{alpha, e_dir};
  const int v = alpha.vertex;
  const auto& ds = alpha.dirs;
  // trio route
  for (size_t i = 0; i < ds.size(); ++i)
    for (size_t j = i + 1; j < ds.size(); ++j)
      for (size_t k = j + 1; k < ds.size(); ++k) {
        std::set<int> unor = {ds[i].edge & ~1, ds[j].edge & ~1,
                              ds[k].edge & ~1};
        if (unor.size() != 3) continue;
        for (auto [x, y] : {std::pair{ds[i], ds[j]}, std::pair{ds[i], ds[k]},
                            std::pair{ds[j], ds[k]}}) {
          IdealEdge pair;
          pair.vertex = v;
          pair.dirs = {x, y};
          std::sort(pair.dirs.begin(), pair.dirs.end());
          if (!ideal_edge_valid(tau, pair)) continue;
          if (supports_strict_increase(star, pair))
            return MovePair{pair, best_strict_move(star, pair)};
        }
      }
  // {e,f,fbar} route
  if (ds.size() == 3) {
    for (size_t ui = 0; ui < 3; ++ui) {
      size_t a = (ui + 1) % 3, b = (ui + 2) % 3;
      if (ds[a].edge != GraphOfGroups::rev(ds[b].edge)) continue;
      for (size_t other : {a, b}) {
        IdealEdge pair;
        pair.vertex = v;
        pair.dirs = {ds[ui], ds[other]};
        std::sort(pair.dirs.begin(), pair.dirs.end());
        if (!ideal_edge_valid(tau, pair)) continue;
        if (supports_strict_increase(star, pair))
          return MovePair{pair, best_strict_move(star, pair)};
      }
    }
  }
  throw NotFound("no strictly increasing size-two ideal edge inside alpha");
}

namespace {

// Rewrites the five-entry window around tau (at index `win`) along a chain
// of moves: chain[0] is the right-hand move (strict), chain.back() the
// left-hand one (non-decreasing), interior moves strict; consecutive chain
// entries are compatible.
Elimination run_chain(const StandardPath& p, int win, const MarkedGraph& tau,
                      const StarGraph& star,
                      const std::vector<MovePair>& chain) {
  Elimination out;
  std::vector<MarkedGraph> cur = p.entries;
  for (size_t j = 0; j + 1 < chain.size(); ++j) {
    Reroute rr = reroute_compatible(tau, star, chain[j].alpha, chain[j].d,
                                    chain[j + 1].alpha, chain[j + 1].d);
    // rr.path runs tau^{c_j}_{d_j} -> tau^{c_{j+1}}_{d_{j+1}}; spliced
    // reversed to sit right of tau
    std::vector<MarkedGraph> seg(rr.path.entries.rbegin(),
                                 rr.path.entries.rend());
    Replacement rep;
    rep.center = rr.square.center;
    rep.norm_floor = rr.square.norm_floor;
    bool last = (j + 2 == chain.size());
    if (!last) {
      rep.at = win;
      rep.old_entries = {cur[win], cur[win + 1], cur[win + 2]};
      rep.new_entries = {cur[win]};
      BlowUpResult bn = blow_up(tau, {chain[j + 1].alpha});
      rep.new_entries.push_back(bn.out);
      rep.new_entries.insert(rep.new_entries.end(), seg.begin(), seg.end());
    } else {
      rep.at = win - 2;
      rep.old_entries = {cur[win - 2], cur[win - 1], cur[win], cur[win + 1],
                         cur[win + 2]};
      rep.new_entries = seg;
    }
    if (!marked_equal(rep.old_entries.front(), rep.new_entries.front()) ||
        !marked_equal(rep.old_entries.back(), rep.new_entries.back()))
      throw Error("elimination produced mismatched endpoints");
    cur.erase(cur.begin() + rep.at,
              cur.begin() + rep.at + rep.old_entries.size());
    cur.insert(cur.begin() + rep.at, rep.new_entries.begin(),
               rep.new_entries.end());
    out.steps.push_back(std::move(rep));
  }
  out.path.entries = std::move(cur);
  return out;
}

}  // namespace

Elimination eliminate_local_min(const StandardPath& p, int i) {
  if (i % 2 != 0 || i < 2 || i + 2 >= static_cast<int>(p.entries.size()))
    throw HypothesesNotMet("index must be an interior briar patch");
  const MarkedGraph& tau = p.entries[i];
  Classification cl = classify(tau.ctx->sig);
  if (cl.dim_L < 2) throw HypothesesNotMet("dim L must be at least 2");
  if (tau.ctx->sig.n() == 2 && tau.ctx->sig.k() == 1)
    throw HypothesesNotMet("excluded signature A1*A2*Z");
  long long m = tau.norm();
  long long left_norm = p.entries[i - 2].norm();
  long long right_norm = p.entries[i + 2].norm();
  if (left_norm < m || right_norm < m)
    throw HypothesesNotMet("neighbors must not be below the local minimum");
  if (left_norm == m && right_norm == m)
    throw HypothesesNotMet("one adjacent move must strictly increase");

  // orient the strict side to the right; mirror otherwise
  if (right_norm == m) {
    StandardPath rev;
    rev.entries.assign(p.entries.rbegin(), p.entries.rend());
    Elimination e = eliminate_local_min(
        rev, static_cast<int>(p.entries.size()) - 1 - i);
    Elimination out;
    out.path.entries.assign(e.path.entries.rbegin(), e.path.entries.rend());
    size_t cur_len = p.entries.size();
    for (auto& st : e.steps) {
      Replacement r;
      r.center = st.center;
      r.norm_floor = st.norm_floor;
      r.old_entries.assign(st.old_entries.rbegin(), st.old_entries.rend());
      r.new_entries.assign(st.new_entries.rbegin(), st.new_entries.rend());
      r.at = static_cast<int>(cur_len) - st.at -
             static_cast<int>(st.old_entries.size());
      cur_len = cur_len - st.old_entries.size() + st.new_entries.size();
      out.steps.push_back(std::move(r));
    }
    return out;
  }

  auto amv = extract_move(tau, p.entries[i + 1], p.entries[i + 2]);
  auto bmv = extract_move(tau, p.entries[i - 1], p.entries[i - 2]);
  if (!amv || !bmv)
    throw NotAPath("local minimum neighbors are not elementary moves");
  StarGraph star = tau.star_graph();
  IdealEdge alpha = amv->alpha, beta = bmv->alpha;
  Dir e_dir = amv->d, f_dir = bmv->d;

  std::vector<MovePair> chain;
  chain.push_back({alpha, e_dir});

  if (!compatible(tau, alpha, beta) && !same_class(tau, alpha, beta)) {
    int actives = 0;
    for (int v = 0; v < tau.graph.V(); ++v)
      if (tau.graph.valence(v) >= 2) ++actives;
    if (actives > 1) {
      // incompatibility forces a common vertex; detour through a strictly
      // increasing size-two move at a different active vertex
      int other = -1;
      for (int v = 0; v < tau.graph.V(); ++v)
        if (tau.graph.valence(v) >= 2 && v != alpha.vertex) other = v;
      if (other < 0) throw Error("multi-active bookkeeping failed");
      auto [gamma, gd] = find_size_two_increasing(tau, other);
      chain.push_back({gamma, gd});
    } else {
      MovePair a2 = shrink_to_size_two(tau, star, alpha, e_dir);
      MovePair b2 = shrink_to_size_two(tau, star, beta, f_dir);
      if (!(a2.alpha == alpha)) chain.push_back(a2);
      if (!compatible(tau, a2.alpha, b2.alpha) &&
          !same_class(tau, a2.alpha, b2.alpha)) {
        PolygonResult pr = find_good_polygon(tau, star, a2.alpha, b2.alpha);
        if (pr.kind == PolygonResult::UNION_NONREDUCTIVE) {
          chain.push_back(
              {pr.union_edge, best_strict_move(star, pr.union_edge)});
        } else {
          const GoodPolygon& poly = pr.polygon;
          size_t n = poly.corners.size();
          int red_mid = -1;
          for (size_t t = 0; t < n; ++t)
            if (is_reductive(star, poly.midpoints[t]))
              red_mid = static_cast<int>(t);
          auto arc = [&](bool forward) {
            std::vector<int> mids, corners;
            int at = poly.alpha_at;
            while (at != poly.beta_at) {
              int mid = forward ? at : static_cast<int>((at + n - 1) % n);
              int nxt = forward ? static_cast<int>((at + 1) % n)
                                : static_cast<int>((at + n - 1) % n);
              mids.push_back(mid);
              corners.push_back(nxt);
              at = nxt;
            }
            return std::pair(mids, corners);
          };
          auto [mf, cf] = arc(true);
          auto [mb, cb] = arc(false);
          bool use_fwd = true;
          if (red_mid >= 0)
            use_fwd = std::find(mf.begin(), mf.end(), red_mid) == mf.end();
          else if (mb.size() < mf.size())
            use_fwd = false;
          const auto& mids = use_fwd ? mf : mb;
          const auto& corners = use_fwd ? cf : cb;
          for (size_t t = 0; t < mids.size(); ++t) {
            const IdealEdge& mid = poly.midpoints[mids[t]];
            chain.push_back({mid, best_strict_move(star, mid)});
            const IdealEdge& c = poly.corners[corners[t]];
            if (!same_class(tau, c, b2.alpha))
              chain.push_back({c, best_strict_move(star, c)});
          }
        }
      }
      if (!(b2.alpha == beta)) chain.push_back(b2);
    }
  }
  chain.push_back({beta, f_dir});
  return run_chain(p, i, tau, star, chain);
}

}  // namespace briar
