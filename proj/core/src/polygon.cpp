#include "briar/polygon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "briar/errors.hpp"

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

IdealEdge make_pair_edge(int v, Dir a, Dir b) {
  IdealEdge e;
  e.vertex = v;
  e.dirs = {a, b};
  std::sort(e.dirs.begin(), e.dirs.end());
  return e;
}

std::optional<IdealEdge> merge_midpoint(const MarkedGraph& m,
                                        const IdealEdge& x,
                                        const IdealEdge& y) {
  if (x.vertex != y.vertex) return std::nullopt;
  int v = x.vertex;
  for (int h = 0; h < order_at(m, v); ++h) {
    IdealEdge ty = translate(m, y, h);
    std::set<Dir> u(x.dirs.begin(), x.dirs.end());
    for (const auto& d : ty.dirs) u.insert(d);
    if (u.size() != 3) continue;
    IdealEdge out;
    out.vertex = v;
    out.dirs.assign(u.begin(), u.end());
    if (ideal_edge_valid(m, out)) return out;
  }
  return std::nullopt;
}

}  // namespace

PolygonCheck validate_good_polygon(const MarkedGraph& tau, const StarGraph& s,
                                   const GoodPolygon& p, const IdealEdge& alpha,
                                   const IdealEdge& beta) {
  PolygonCheck c;
  auto fail = [&](std::string why) {
    c.ok = false;
    c.why = std::move(why);
    return c;
  };
  size_t n = p.corners.size();
  if (n != 3 && n != 4 && n != 6) return fail("corner count not 3, 4 or 6");
  if (p.midpoints.size() != n) return fail("midpoint count mismatch");
  for (const auto& e : p.corners) {
    if (e.dirs.size() != 2) return fail("corner not size two");
    if (!ideal_edge_valid(tau, e)) return fail("corner not an ideal edge");
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (same_class(tau, p.corners[i], p.corners[j]))
        return fail("two corners share an equivalence class");
  if (p.alpha_at < 0 || p.beta_at < 0 ||
      !same_class(tau, p.corners[p.alpha_at], alpha) ||
      !same_class(tau, p.corners[p.beta_at], beta))
    return fail("alpha/beta not at their recorded corners");
  for (size_t i = 0; i < n; ++i) {
    const auto& mid = p.midpoints[i];
    if (mid.dirs.size() != 3) return fail("midpoint not size three");
    if (!ideal_edge_valid(tau, mid)) return fail("midpoint not an ideal edge");
    if (!contained_in(tau, p.corners[i], mid) ||
        !contained_in(tau, p.corners[(i + 1) % n], mid))
      return fail("midpoint not compatible with its corners");
  }
  int reductive_mids = 0;
  for (const auto& mid : p.midpoints)
    if (is_reductive(s, mid)) ++reductive_mids;
  if (reductive_mids > 1) return fail("more than one reductive midpoint");
  int reductive_corners = 0;
  for (size_t i = 0; i < n; ++i)
    if (is_reductive(s, p.corners[i])) {
      ++reductive_corners;
      if (static_cast<int>(i) != p.alpha_at)
        return fail("a corner other than alpha is reductive");
    }
  if (reductive_corners > 1) return fail("more than one reductive corner");
  return c;
}

namespace {

struct TemplateSearch {
  const MarkedGraph& tau;
  const StarGraph& s;
  const IdealEdge& alpha;
  const IdealEdge& beta;
  std::vector<IdealEdge> pool;
  // merge cache between pool members and the two pinned edges
  std::map<std::pair<int, int>, bool> mergeable;  // indices; -1=alpha, -2=beta

  const IdealEdge& at(int i) const {
    if (i == -1) return alpha;
    if (i == -2) return beta;
    return pool[i];
  }

  bool can_merge(int i, int j) {
    auto key = std::minmax(i, j);
    auto it = mergeable.find(key);
    if (it != mergeable.end()) return it->second;
    bool ok = merge_midpoint(tau, at(i), at(j)).has_value();
    mergeable.emplace(key, ok);
    return ok;
  }

  std::optional<GoodPolygon> assemble(const std::vector<int>& idx) {
    GoodPolygon p;
    for (int i : idx) p.corners.push_back(at(i));
    size_t n = idx.size();
    for (size_t i = 0; i < n; ++i) {
      auto mid = merge_midpoint(tau, p.corners[i], p.corners[(i + 1) % n]);
      if (!mid) return std::nullopt;
      p.midpoints.push_back(*mid);
    }
    for (size_t i = 0; i < n; ++i) {
      if (idx[i] == -1) p.alpha_at = static_cast<int>(i);
      if (idx[i] == -2) p.beta_at = static_cast<int>(i);
    }
    if (validate_good_polygon(tau, s, p, alpha, beta).ok) return p;
    return std::nullopt;
  }

  // fill the free slots of a cyclic template; -1/-2 are pinned, -3 is free
  std::optional<GoodPolygon> run(std::vector<int> tmpl) {
    std::vector<size_t> free_slots;
    for (size_t i = 0; i < tmpl.size(); ++i)
      if (tmpl[i] == -3) free_slots.push_back(i);
    std::function<std::optional<GoodPolygon>(size_t)> rec =
        [&](size_t k) -> std::optional<GoodPolygon> {
      if (k == free_slots.size()) return assemble(tmpl);
      size_t slot = free_slots[k];
      size_t n = tmpl.size();
      for (size_t i = 0; i < pool.size(); ++i) {
        tmpl[slot] = static_cast<int>(i);
        // adjacency pruning against already-filled neighbors
        int prev = tmpl[(slot + n - 1) % n];
        int next = tmpl[(slot + 1) % n];
        if (prev != -3 && !can_merge(prev, static_cast<int>(i))) continue;
        if (next != -3 && !can_merge(static_cast<int>(i), next)) continue;
        auto r = rec(k + 1);
        if (r) return r;
      }
      tmpl[slot] = -3;
      return std::nullopt;
    };
    return rec(0);
  }
};

}  // namespace

PolygonResult find_good_polygon(const MarkedGraph& tau, const StarGraph& s,
                                const IdealEdge& alpha, const IdealEdge& beta) {
  const auto& sig = tau.ctx->sig;
  Classification cl = classify(sig);
  if (sig.n() < 1) throw HypothesesNotMet("needs n >= 1");
  if (cl.edge_number < 3) throw HypothesesNotMet("edge number < 3");
  if (sig.n() == 2 && sig.k() == 1)
    throw HypothesesNotMet("excluded signature A1*A2*Z");
  if (!tau.reduced()) throw HypothesesNotMet("tau not reduced");
  int active = -1, actives = 0;
  for (int v = 0; v < tau.graph.V(); ++v)
    if (tau.graph.valence(v) >= 2) {
      active = v;
      ++actives;
    }
  if (actives != 1) throw HypothesesNotMet("tau must have one active vertex");
  if (alpha.dirs.size() != 2 || beta.dirs.size() != 2)
    throw HypothesesNotMet("alpha, beta must have size two");
  if (alpha.vertex != active || beta.vertex != active)
    throw HypothesesNotMet("ideal edges not at the active vertex");
  if (compatible(tau, alpha, beta))
    throw HypothesesNotMet("alpha and beta are compatible");
  bool a_ok = false;
  for (const Dir& d : D_alpha(alpha))
    if (s.abs_dirs(alpha.dirs) >= s.abs_dir(d)) a_ok = true;
  bool b_ok = supports_strict_increase(s, beta);
  if (!a_ok || !b_ok)
    throw HypothesesNotMet("move inequalities |a|>=|e|, |b|>|f| unavailable");

  const int star_v = active;
  const int ord = order_at(tau, star_v);

  // rechoose representatives so alpha and beta share a direction u
  IdealEdge b_shifted = beta;
  Dir u{}, v_dir{}, w_dir{};
  bool aligned = false;
  for (int h = 0; h < ord && !aligned; ++h) {
    IdealEdge t = translate(tau, beta, h);
    for (const Dir& da : alpha.dirs)
      for (const Dir& db : t.dirs)
        if (da == db && !aligned) {
          aligned = true;
          u = da;
          b_shifted = t;
        }
  }
  if (!aligned)
    throw HypothesesNotMet(
        "incompatible size-two edges must share a direction orbit");
  for (const Dir& d : alpha.dirs)
    if (!(d == u)) v_dir = d;
  for (const Dir& d : b_shifted.dirs)
    if (!(d == u)) w_dir = d;

  PolygonResult res;
  // union branch: alpha + beta an ideal edge and non-reductive
  {
    std::set<Dir> un(alpha.dirs.begin(), alpha.dirs.end());
    un.insert(b_shifted.dirs.begin(), b_shifted.dirs.end());
    if (un.size() == 3) {
      IdealEdge u3;
      u3.vertex = star_v;
      u3.dirs.assign(un.begin(), un.end());
      if (ideal_edge_valid(tau, u3) && !is_reductive(s, u3)) {
        res.kind = PolygonResult::UNION_NONREDUCTIVE;
        res.union_edge = u3;
        return res;
      }
    }
  }

  auto pair_of = [&](Dir a, Dir b) { return make_pair_edge(star_v, a, b); };
  auto add_pair = [&](std::vector<IdealEdge>& v, Dir a, Dir b) {
    if (a == b || a.edge == b.edge) return;
    IdealEdge e = pair_of(a, b);
    if (ideal_edge_valid(tau, e)) v.push_back(e);
  };

  const int uel = u.edge, ve = v_dir.edge, we = w_dir.edge;
  TemplateSearch ts{tau, s, alpha, b_shifted, {}, {}};

  // proof-guided pool: the gamma/delta/eta candidate families of the case
  // analysis (translates of pairs drawn from u, v, w and one auxiliary
  // direction off their orbits)
  std::vector<IdealEdge> guided;
  if ((we & ~1) != (ve & ~1)) {
    // case one: {u,v,w} a trio; triangles with gamma(g) = {v, g.w}
    for (int g = 1; g < ord; ++g)
      add_pair(guided, v_dir, act(tau, star_v, g, w_dir));
  } else {
    // cases two and three: auxiliary directions r with orbit off u, v
    std::vector<Dir> aux;
    for (int f : tau.graph.star(star_v)) {
      if ((f & ~1) == (uel & ~1) || (f & ~1) == (ve & ~1)) continue;
      aux.push_back(Dir{f, 0});
    }
    if (aux.empty())
      for (int f : {GraphOfGroups::rev(uel), GraphOfGroups::rev(ve)})
        if (tau.graph.init(f) == star_v && f != uel && f != ve && f != we)
          aux.push_back(Dir{f, 0});
    for (const Dir& r0 : aux)
      for (int h = 0; h < ord; ++h) {
        Dir hr = act(tau, star_v, h, r0);
        add_pair(guided, w_dir, hr);  // gamma family
        add_pair(guided, v_dir, hr);  // delta family
      }
    for (int g = 1; g < ord; ++g) {
      add_pair(guided, u, act(tau, star_v, g, v_dir));  // alpha(g)
      add_pair(guided, u, act(tau, star_v, g, w_dir));  // beta(g)
    }
  }
  std::sort(guided.begin(), guided.end());
  guided.erase(std::unique(guided.begin(), guided.end()), guided.end());

  auto search_with = [&](std::vector<IdealEdge> pool)
      -> std::optional<GoodPolygon> {
    ts.pool = std::move(pool);
    ts.mergeable.clear();
    for (auto tmpl : {std::vector<int>{-1, -3, -2},
                      std::vector<int>{-1, -3, -2, -3},
                      std::vector<int>{-1, -3, -2, -3, -3, -3}}) {
      auto r = ts.run(tmpl);
      if (r) return r;
    }
    return std::nullopt;
  };

  if (auto p = search_with(guided)) {
    res.kind = PolygonResult::POLYGON;
    res.polygon = *p;
    return res;
  }

  // exhaustive fallback over every size-two ideal edge at the vertex
  res.used_fallback = true;
  std::vector<Dir> dirs;
  for (int f : tau.graph.star(star_v))
    for (int g = 0; g < ord; ++g) dirs.push_back(Dir{f, g});
  std::vector<IdealEdge> pool;
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      add_pair(pool, dirs[i], dirs[j]);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (auto p = search_with(pool)) {
    res.kind = PolygonResult::POLYGON;
    res.polygon = *p;
    return res;
  }

  std::ostringstream os;
  os << "no good polygon found; alpha={";
  for (auto& d : alpha.dirs) os << "(" << d.g << "," << d.edge << ")";
  os << "} beta={";
  for (auto& d : beta.dirs) os << "(" << d.g << "," << d.edge << ")";
  os << "} at vertex " << star_v << ", |pool|=" << pool.size();
  throw SearchExhausted(os.str());
}

}  // namespace briar
