#include "briar/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "briar/errors.hpp"

namespace briar {

namespace {

struct VertexKey {
  int cls;
  int valence;
  int loops_at;
  friend auto operator<=>(const VertexKey&, const VertexKey&) = default;
};

std::string edge_part(const GraphOfGroups& g, const std::vector<int>& vmap) {
  std::vector<std::pair<int, int>> pairs;
  for (int e = 0; e < g.oriented_count(); e += 2) {
    int a = vmap[g.init(e)], b = vmap[g.term(e)];
    pairs.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(pairs.begin(), pairs.end());
  std::string s;
  for (auto& p : pairs) {
    s += std::to_string(p.first);
    s += '-';
    s += std::to_string(p.second);
    s += ';';
  }
  return s;
}

void enumerate_edge_assignments(const GraphOfGroups& g,
                                const std::vector<int>& vmap,
                                std::vector<std::vector<int>>& out) {
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int e = 0; e < g.oriented_count(); e += 2) {
    int a = vmap[g.init(e)], b = vmap[g.term(e)];
    groups[{std::min(a, b), std::max(a, b)}].push_back(e);
  }
  std::vector<std::vector<int>> group_edges;
  std::vector<std::pair<int, int>> group_pairs;
  for (auto& [p, es] : groups) {
    group_pairs.push_back(p);
    group_edges.push_back(es);
  }
  std::vector<int> group_first(group_edges.size());
  int uid = 0;
  for (size_t gi = 0; gi < group_edges.size(); ++gi) {
    group_first[gi] = uid;
    uid += static_cast<int>(group_edges[gi].size());
  }
  std::vector<int> emap(g.oriented_count(), -1);
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == group_edges.size()) {
      out.push_back(emap);
      return;
    }
    auto& es = group_edges[gi];
    bool is_loop_group = group_pairs[gi].first == group_pairs[gi].second;
    std::vector<int> perm(es.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int nflip = is_loop_group ? (1 << es.size()) : 1;
      for (int flips = 0; flips < nflip; ++flips) {
        for (size_t i = 0; i < es.size(); ++i) {
          int old_even = es[perm[i]];
          int new_u = group_first[gi] + static_cast<int>(i);
          bool flip;
          if (is_loop_group)
            flip = (flips >> i) & 1;
          else
            flip = vmap[g.init(old_even)] > vmap[g.term(old_even)];
          emap[old_even] = 2 * new_u + (flip ? 1 : 0);
          emap[old_even ^ 1] = 2 * new_u + (flip ? 0 : 1);
        }
        rec(gi + 1);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(0);
}

}  // namespace

std::string compute_canonical_string(const MarkedGraph& m) {
  const auto& g = m.graph;
  const auto& ctx = *m.ctx;
  const int V = g.V();
  const int E2 = g.oriented_count();

  auto order_of = [&](int v) {
    int grp = g.vertex_group[v];
    return grp < 0 ? 1 : ctx.sig.factors[grp].order;
  };
  auto prod_at = [&](int v, int a, int b) {
    int grp = g.vertex_group[v];
    return grp < 0 ? 0 : ctx.sig.factors[grp].prod(a, b);
  };
  auto inv_at = [&](int v, int a) {
    int grp = g.vertex_group[v];
    return grp < 0 ? 0 : ctx.sig.factors[grp].inverse(a);
  };

  std::vector<VertexKey> keys(V);
  std::vector<int> loops_at(V, 0);
  for (int e = 0; e < E2; e += 2)
    if (g.is_loop_edge(e)) ++loops_at[g.init(e)];
  for (int v = 0; v < V; ++v) {
    int grp = g.vertex_group[v];
    keys[v] = VertexKey{grp < 0 ? -1 : ctx.table_class[grp], g.valence(v),
                        loops_at[v]};
  }
  std::vector<int> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<std::vector<int>> key_groups;
  for (int i = 0; i < V;) {
    int j = i;
    while (j < V && keys[order[j]] == keys[order[i]]) ++j;
    key_groups.push_back(std::vector<int>(order.begin() + i, order.begin() + j));
    i = j;
  }

  std::string header;
  for (int i = 0; i < V; ++i) {
    header += std::to_string(keys[order[i]].cls);
    header += ',';
    header += std::to_string(keys[order[i]].valence);
    header += ',';
    header += std::to_string(keys[order[i]].loops_at);
    header += ';';
  }

  // stage 1: vertex relabelings minimizing the incidence serialization
  std::vector<std::vector<int>> best_vmaps;
  std::string best_edges;
  std::vector<int> vmap(V, -1);
  std::function<void(size_t)> rec_v = [&](size_t gi) {
    if (gi == key_groups.size()) {
      std::string ep = edge_part(g, vmap);
      if (best_vmaps.empty() || ep < best_edges) {
        best_edges = ep;
        best_vmaps.assign(1, vmap);
      } else if (ep == best_edges) {
        best_vmaps.push_back(vmap);
      }
      return;
    }
    auto verts = key_groups[gi];
    int base = 0;
    for (size_t i = 0; i < gi; ++i)
      base += static_cast<int>(key_groups[i].size());
    std::sort(verts.begin(), verts.end());
    do {
      for (size_t i = 0; i < verts.size(); ++i)
        vmap[verts[i]] = base + static_cast<int>(i);
      rec_v(gi + 1);
    } while (std::next_permutation(verts.begin(), verts.end()));
  };
  rec_v(0);

  // stage 2: edge assignment x table isomorphism x edge twist, minimizing
  // the loop serialization. A twist re-chooses the Bass lift of each
  // unoriented edge: e -> u e w with u in G_init, w in G_term; folded items
  // transform as h_i -> w(e_{i-1}) * h_i * u(e_i).
  std::string best_loops;
  bool have = false;

  // prebuild per-loop item arrays referencing original ids
  for (const auto& vm : best_vmaps) {
    std::vector<std::vector<int>> eas;
    enumerate_edge_assignments(g, vm, eas);
    std::vector<std::vector<std::vector<int>>> vertex_gmaps(V);
    for (int v = 0; v < V; ++v) {
      int grp = g.vertex_group[v];
      if (grp < 0) {
        vertex_gmaps[v] = {{0}};
        continue;
      }
      const auto& iso = ctx.iso_to_rep[grp];
      for (const auto& aut : ctx.class_auts[ctx.table_class[grp]]) {
        std::vector<int> comp(iso.size());
        for (size_t x = 0; x < iso.size(); ++x) comp[x] = aut[iso[x]];
        vertex_gmaps[v].push_back(std::move(comp));
      }
    }

    // twist enumeration: per unoriented edge, u in G_init(even),
    // w in G_term(even); derived on the odd orientation
    std::vector<int> u_tw(E2, 0), w_tw(E2, 0);
    std::vector<std::vector<int>> gmap(V);

    auto serialize_loops = [&](const std::vector<int>& emap) {
      std::string s;
      for (const auto& loop : m.loops) {
        const auto& items = loop.items;
        const size_t n = items.size();
        std::vector<LoopItem> tw(n);
        for (size_t i = 0; i < n; ++i) {
          int prev = items[(i + n - 1) % n].edge;
          int v = g.init(items[i].edge);
          int h = prod_at(v, w_tw[prev], prod_at(v, items[i].g,
                                                 u_tw[items[i].edge]));
          tw[i].edge = emap[items[i].edge];
          tw[i].g = gmap[v][h];
        }
        if (n >= 2) {
          std::vector<LoopItem> best = tw, cur = tw;
          for (size_t r = 1; r < n; ++r) {
            std::rotate(cur.begin(), cur.begin() + 1, cur.end());
            if (std::lexicographical_compare(cur.begin(), cur.end(),
                                             best.begin(), best.end(),
                                             std::less<LoopItem>()))
              best = cur;
          }
          tw = std::move(best);
        }
        for (const auto& it : tw) {
          s += std::to_string(it.edge);
          s += '.';
          s += std::to_string(it.g);
          s += ',';
        }
        s += '|';
      }
      return s;
    };

    std::function<void(int, const std::vector<int>&)> rec_tw =
        [&](int ue, const std::vector<int>& emap) {
          if (ue == E2 / 2) {
            std::string lp = serialize_loops(emap);
            if (!have || lp < best_loops) {
              have = true;
              best_loops = lp;
            }
            return;
          }
          int even = 2 * ue;
          int iv = g.init(even), tv = g.term(even);
          for (int u = 0; u < order_of(iv); ++u)
            for (int w = 0; w < order_of(tv); ++w) {
              u_tw[even] = u;
              w_tw[even] = w;
              u_tw[even ^ 1] = inv_at(tv, w);
              w_tw[even ^ 1] = inv_at(iv, u);
              rec_tw(ue + 1, emap);
            }
        };

    std::function<void(int, const std::vector<int>&)> rec_g =
        [&](int v, const std::vector<int>& emap) {
          if (v == V) {
            rec_tw(0, emap);
            return;
          }
          for (const auto& gm : vertex_gmaps[v]) {
            gmap[v] = gm;
            rec_g(v + 1, emap);
          }
        };
    for (const auto& ea : eas) rec_g(0, ea);
  }
  return header + '#' + best_edges + '#' + best_loops;
}

const std::string& canonical_string(const MarkedGraph& m) {
  if (!m.canon_cache)
    m.canon_cache =
        std::make_shared<const std::string>(compute_canonical_string(m));
  return *m.canon_cache;
}

bool marked_equal(const MarkedGraph& a, const MarkedGraph& b) {
  return canonical_string(a) == canonical_string(b);
}

}  // namespace briar
