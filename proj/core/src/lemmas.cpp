#include "briar/lemmas.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "briar/errors.hpp"

namespace briar {

const char* lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::THREE_DIRECTIONS: return "THREE_DIRECTIONS";
    case LemmaId::WHEN_REDUCTIVE: return "WHEN_REDUCTIVE";
    case LemmaId::TWO_REDUCTIVE: return "TWO_REDUCTIVE";
    case LemmaId::ONE_REDUCTIVE_SIZE_TWO: return "ONE_REDUCTIVE_SIZE_TWO";
    case LemmaId::REALLY_TWO_REDUCTIVE: return "REALLY_TWO_REDUCTIVE";
    case LemmaId::TRIOS_INCREASING: return "TRIOS_INCREASING";
    case LemmaId::E_F_FBAR: return "E_F_FBAR";
    case LemmaId::SIZE_TWO_EXISTS: return "SIZE_TWO_EXISTS";
  }
  return "?";
}

std::optional<LemmaId> lemma_from_name(const std::string& s) {
  for (LemmaId id : all_lemmas())
    if (s == lemma_name(id)) return id;
  return std::nullopt;
}

std::vector<LemmaId> all_lemmas() {
  return {LemmaId::THREE_DIRECTIONS,      LemmaId::WHEN_REDUCTIVE,
          LemmaId::TWO_REDUCTIVE,         LemmaId::ONE_REDUCTIVE_SIZE_TWO,
          LemmaId::REALLY_TWO_REDUCTIVE,  LemmaId::TRIOS_INCREASING,
          LemmaId::E_F_FBAR,              LemmaId::SIZE_TWO_EXISTS};
}

bool has_standard_W(const SpineContext& ctx) {
  std::set<std::vector<Letter>> have;
  for (const auto& w : ctx.W) have.insert(w.letters);
  for (const auto& w : standard_w_words(ctx.sig))
    if (!have.count(w.letters)) return false;
  return true;
}

namespace {

LemmaOutcome holds() { return {LemmaOutcome::HOLDS, ""}; }
LemmaOutcome unmet(std::string why) {
  return {LemmaOutcome::HYPOTHESES_NOT_MET, std::move(why)};
}
LemmaOutcome violation(std::string witness) {
  return {LemmaOutcome::VIOLATION, std::move(witness)};
}

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// absolutenonzero conclusions used as standing hypotheses by the
// star-graph lemmas; all directly machine-checked
bool star_facts(const MarkedGraph& m, const StarGraph& s, std::string* why) {
  for (int e = 0; e < m.graph.oriented_count(); ++e)
    if (s.abs_dir(Dir{e, 0}) == 0) {
      if (why) *why = "edge " + std::to_string(e) + " has absolute value 0";
      return false;
    }
  if (s.graph.component_count() != m.graph.V()) {
    if (why) *why = "star graph components != vertex count";
    return false;
  }
  return true;
}

bool same_edge_pairs_joined_somewhere(const MarkedGraph& m, const StarGraph& s,
                                      int v) {
  DenseCalc dc(s.graph);
  for (int e : m.graph.star(v)) {
    int grp = m.graph.vertex_group[v];
    int ord = grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
    if (ord < 2) continue;
    bool all = true;
    for (int a = 0; a < ord && all; ++a)
      for (int b = a + 1; b < ord && all; ++b)
        if (dc.a(s.dir_id(e, a), s.dir_id(e, b)) == 0) all = false;
    if (all) return true;
  }
  return false;
}

LemmaOutcome check_three_directions(const MultiGraph& g,
                                    const std::vector<int>& verts) {
  if (verts.size() != 3) return unmet("need three vertices");
  int u = verts[0], v = verts[1], w = verts[2];
  if (u == v || u == w || v == w) return unmet("vertices not distinct");
  DenseCalc dc(g);
  if (!(dc.abs2(u, v) <= dc.abs1(v))) return unmet("|{u,v}| > |v|");
  if (!(dc.abs2(u, w) <= dc.abs1(w))) return unmet("|{u,w}| > |w|");
  long long uv = dc.a(u, v), uw = dc.a(u, w);
  long long uS = dc.abs1(u) - uv - uw;
  if (uv == uw && uS == 0) return holds();
  std::ostringstream os;
  os << "u=" << u << " v=" << v << " w=" << w << " u.v=" << uv
     << " u.w=" << uw << " u.S=" << uS;
  return violation(os.str());
}

LemmaOutcome check_when_reductive(const MultiGraph& g,
                                  const std::vector<int>& S, int x) {
  if (S.empty()) return unmet("S empty");
  if (std::find(S.begin(), S.end(), x) == S.end())
    return unmet("x not in S");
  DenseCalc dc(g);
  std::vector<int> T;
  for (int s : S)
    if (s != x) T.push_back(s);
  long long absS = dc.abs_set(S), absx = dc.abs1(x);
  long long xT = dc.dot_sets({x}, T), absT = dc.abs_set(T);
  bool left_le = absS <= absx, right_ge = 2 * xT >= absT;
  bool left_eq = absS == absx, right_eq = 2 * xT == absT;
  if (left_le == right_ge && left_eq == right_eq) return holds();
  std::ostringstream os;
  os << "S={" << join_ints(S) << "} x=" << x << " |S|=" << absS
     << " |x|=" << absx << " x.T=" << xT << " |T|=" << absT;
  return violation(os.str());
}

LemmaOutcome check_two_reductive(const MultiGraph& g,
                                 const std::vector<int>& T) {
  if (T.empty()) return unmet("T empty");
  DenseCalc dc(g);
  // |T| > 0 is needed by the proof (with |T| = 0 every outside vertex
  // satisfies |T + x| <= |x|); every application has it via the nonzero
  // absolute values of the chosen word set
  if (dc.abs_set(T) == 0) return unmet("|T| = 0");
  std::set<int> inT(T.begin(), T.end());
  std::vector<int> Q;
  for (int x = 0; x < g.n; ++x) {
    if (inT.count(x)) continue;
    std::vector<int> Tx = T;
    Tx.push_back(x);
    if (dc.abs_set(Tx) <= dc.abs1(x)) Q.push_back(x);
  }
  if (Q.size() > 2) {
    return violation("T={" + join_ints(T) + "} has " +
                     std::to_string(Q.size()) + " reductive completions {" +
                     join_ints(Q) + "}");
  }
  if (Q.size() == 2) {
    for (int x : Q) {
      std::vector<int> Tx = T;
      Tx.push_back(x);
      if (dc.abs_set(Tx) != dc.abs1(x))
        return violation("two completions but inequality strict at x=" +
                         std::to_string(x));
    }
    std::vector<int> rest;
    for (int y = 0; y < g.n; ++y)
      if (!inT.count(y) && y != Q[0] && y != Q[1]) rest.push_back(y);
    if (dc.dot_sets(T, rest) != 0)
      return violation("T connects outside {T, x, x'}");
  }
  return holds();
}

LemmaOutcome check_really_two_reductive(const MultiGraph& g,
                                        const std::vector<int>& verts) {
  if (verts.size() != 5) return unmet("need five vertices");
  std::set<int> uniq(verts.begin(), verts.end());
  if (uniq.size() != 5) return unmet("vertices not distinct");
  int u = verts[0], v = verts[1], w = verts[2], x = verts[3], y = verts[4];
  DenseCalc dc(g);
  long long auvw = dc.abs3(u, v, w);
  if (!(auvw <= std::min({dc.abs1(u), dc.abs1(v), dc.abs1(w)})))
    return unmet("|{u,v,w}| not minimal");
  long long auv = dc.abs2(u, v), auw = dc.abs2(u, w);
  bool h1 = auv >= std::min(dc.abs1(u), dc.abs1(v));
  bool h2 = auw >= std::min(dc.abs1(u), dc.abs1(w));
  bool strict = auv > std::min(dc.abs1(u), dc.abs1(v)) ||
                auw > std::min(dc.abs1(u), dc.abs1(w));
  if (!h1 || !h2 || !strict) return unmet("pair inequalities fail");
  if (!(dc.abs3(u, v, x) <= dc.abs1(x))) return unmet("|{u,v,x}| > |x|");
  if (dc.abs3(u, w, y) > dc.abs1(y)) return holds();
  std::ostringstream os;
  os << "u,v,w,x,y=" << join_ints(verts) << " |{u,w,y}|=" << dc.abs3(u, w, y)
     << " |y|=" << dc.abs1(y);
  return violation(os.str());
}

// pure-calculus reformulation of the trio lemma: if {u,v,w} touches the
// rest of the graph, some pair {a,b} has |{a,b}| > min(|a|,|b|)
LemmaOutcome check_trios_pure(const MultiGraph& g,
                              const std::vector<int>& verts) {
  if (verts.size() != 3) return unmet("need three vertices");
  int u = verts[0], v = verts[1], w = verts[2];
  if (u == v || u == w || v == w) return unmet("vertices not distinct");
  DenseCalc dc(g);
  long long outside = dc.abs3(u, v, w);
  if (outside == 0) return unmet("{u,v,w} is isolated from the rest");
  auto strict = [&](int a, int b) {
    return dc.abs2(a, b) > std::min(dc.abs1(a), dc.abs1(b));
  };
  if (strict(u, v) || strict(u, w) || strict(v, w)) return holds();
  return violation("no strictly increasing pair among {" + join_ints(verts) +
                   "}");
}

// pure-calculus reformulation of the size-two existence argument:
// an edge d--d' forces one of ({d,c},c), ({d,c'},c') to strictly increase
LemmaOutcome check_size_two_pure(const MultiGraph& g,
                                 const std::vector<int>& verts) {
  if (verts.size() != 4) return unmet("need four vertices");
  std::set<int> uniq(verts.begin(), verts.end());
  if (uniq.size() != 4) return unmet("vertices not distinct");
  int d = verts[0], dp = verts[1], c = verts[2], cp = verts[3];
  DenseCalc dc(g);
  if (dc.a(d, dp) == 0) return unmet("no edge between d and d'");
  if (dc.abs2(d, c) > dc.abs1(c) || dc.abs2(d, cp) > dc.abs1(cp))
    return holds();
  return violation("both candidate moves reductive for d=" +
                   std::to_string(d));
}

LemmaOutcome star_hypotheses(const MarkedGraph& m, const StarGraph& s,
                             bool need_n2) {
  if (!m.reduced()) return unmet("marked graph not reduced");
  if (need_n2 && m.ctx->sig.n() < 2) return unmet("needs n >= 2");
  if (!has_standard_W(*m.ctx)) return unmet("W does not contain standard W");
  std::string why;
  if (!star_facts(m, s, &why)) return unmet("star facts fail: " + why);
  return holds();
}

LemmaOutcome check_one_reductive_size_two(const MarkedGraph& m,
                                          int star_vertex,
                                          const std::vector<Dir>& dirs,
                                          const StarGraph* star) {
  StarGraph local;
  if (!star) {
    local = m.star_graph();
    star = &local;
  }
  const StarGraph& s = *star;
  LemmaOutcome hyp = star_hypotheses(m, s, false);
  if (hyp.kind != LemmaOutcome::HOLDS) return hyp;
  if (dirs.size() != 2) return unmet("need directions u, v");
  int grp = m.graph.vertex_group[star_vertex];
  if (grp < 0 || m.ctx->sig.factors[grp].order < 2)
    return unmet("vertex group trivial");
  if (m.graph.valence(star_vertex) < 3) return unmet("valence < 3");
  IdealEdge a;
  a.vertex = star_vertex;
  a.dirs = dirs;
  std::sort(a.dirs.begin(), a.dirs.end());
  if (!ideal_edge_valid(m, a)) return unmet("{u,v} is not an ideal edge");
  const auto& tbl = m.ctx->sig.factors[grp];
  int reductive_count = 0;
  for (int h = 0; h < tbl.order; ++h) {
    IdealEdge cand;
    cand.vertex = star_vertex;
    cand.dirs = {dirs[0], Dir{dirs[1].edge, tbl.prod(h, dirs[1].g)}};
    std::sort(cand.dirs.begin(), cand.dirs.end());
    if (!ideal_edge_valid(m, cand)) continue;
    if (is_reductive(s, cand)) ++reductive_count;
  }
  if (reductive_count <= 1) return holds();
  return violation("vertex " + std::to_string(star_vertex) + " has " +
                   std::to_string(reductive_count) +
                   " reductive translates of {u,v}");
}

LemmaOutcome check_trios_star(const MarkedGraph& m, int v,
                              const std::vector<Dir>& dirs,
                              const StarGraph* star) {
  StarGraph local;
  if (!star) {
    local = m.star_graph();
    star = &local;
  }
  const StarGraph& s = *star;
  LemmaOutcome hyp = star_hypotheses(m, s, false);
  if (hyp.kind != LemmaOutcome::HOLDS) return hyp;
  if (dirs.size() != 3) return unmet("need three directions");
  std::set<int> unor;
  for (const auto& d : dirs) {
    if (m.graph.init(d.edge) != v) return unmet("directions not at vertex");
    unor.insert(d.edge & ~1);
  }
  if (unor.size() != 3) return unmet("underlying edges do not form a trio");
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      IdealEdge pair;
      pair.vertex = v;
      pair.dirs = {dirs[i], dirs[j]};
      std::sort(pair.dirs.begin(), pair.dirs.end());
      if (!ideal_edge_valid(m, pair)) continue;
      if (supports_strict_increase(s, pair)) return holds();
    }
  return violation("no size-two pair of the trio increases strictly");
}

LemmaOutcome check_efbarf(const MarkedGraph& m, int v,
                          const std::vector<Dir>& dirs,
                          const StarGraph* star) {
  StarGraph local;
  if (!star) {
    local = m.star_graph();
    star = &local;
  }
  const StarGraph& s = *star;
  LemmaOutcome hyp = star_hypotheses(m, s, false);
  if (hyp.kind != LemmaOutcome::HOLDS) return hyp;
  if (dirs.size() != 3) return unmet("need directions u, v, vbar");
  Dir u = dirs[0], p = dirs[1], q = dirs[2];
  if (m.graph.init(u.edge) != v || m.graph.init(p.edge) != v ||
      m.graph.init(q.edge) != v)
    return unmet("directions not at vertex");
  if (q.edge != GraphOfGroups::rev(p.edge))
    return unmet("v and vbar must share an unoriented edge");
  if ((u.edge & ~1) == (p.edge & ~1)) return unmet("u must use a third edge");
  IdealEdge a;
  a.vertex = v;
  a.dirs = {u, p, q};
  std::sort(a.dirs.begin(), a.dirs.end());
  if (!ideal_edge_valid(m, a)) return unmet("{u,v,vbar} not an ideal edge");
  if (s.abs_dirs(a.dirs) < s.abs_dir(u)) return unmet("|alpha| < |e|");
  for (const Dir& other : {p, q}) {
    IdealEdge pair;
    pair.vertex = v;
    pair.dirs = {u, other};
    std::sort(pair.dirs.begin(), pair.dirs.end());
    if (!ideal_edge_valid(m, pair)) continue;
    if (supports_strict_increase(s, pair)) return holds();
  }
  return violation("neither {u,v} nor {u,vbar} increases strictly");
}

LemmaOutcome check_size_two_star(const MarkedGraph& m, int v,
                                 const StarGraph* star) {
  StarGraph local;
  if (!star) {
    local = m.star_graph();
    star = &local;
  }
  const StarGraph& s = *star;
  LemmaOutcome hyp = star_hypotheses(m, s, true);
  if (hyp.kind != LemmaOutcome::HOLDS) return hyp;
  if (m.graph.valence(v) < 2) return unmet("vertex not active");
  if (!same_edge_pairs_joined_somewhere(m, s, v))
    return unmet("no fully joined same-edge direction pair at vertex");
  try {
    find_size_two_increasing(m, v);
    return holds();
  } catch (const NotFound& e) {
    return violation(e.what());
  }
}

}  // namespace

LemmaOutcome check_lemma_with_star(LemmaId id, const LemmaContext& ctx,
                                   const StarGraph* star) {
  switch (id) {
    case LemmaId::THREE_DIRECTIONS:
      if (!ctx.graph) return unmet("needs a multigraph context");
      return check_three_directions(*ctx.graph, ctx.verts);
    case LemmaId::WHEN_REDUCTIVE:
      if (!ctx.graph) return unmet("needs a multigraph context");
      return check_when_reductive(*ctx.graph, ctx.S, ctx.x);
    case LemmaId::TWO_REDUCTIVE:
      if (!ctx.graph) return unmet("needs a multigraph context");
      return check_two_reductive(*ctx.graph, ctx.T);
    case LemmaId::REALLY_TWO_REDUCTIVE:
      if (!ctx.graph) return unmet("needs a multigraph context");
      return check_really_two_reductive(*ctx.graph, ctx.verts);
    case LemmaId::ONE_REDUCTIVE_SIZE_TWO:
      if (!ctx.marked) return unmet("needs a marked-graph context");
      return check_one_reductive_size_two(*ctx.marked, ctx.vertex, ctx.dirs,
                                          star);
    case LemmaId::TRIOS_INCREASING:
      if (ctx.marked)
        return check_trios_star(*ctx.marked, ctx.vertex, ctx.dirs, star);
      if (ctx.graph) return check_trios_pure(*ctx.graph, ctx.verts);
      return unmet("needs a context");
    case LemmaId::E_F_FBAR:
      if (!ctx.marked) return unmet("needs a marked-graph context");
      return check_efbarf(*ctx.marked, ctx.vertex, ctx.dirs, star);
    case LemmaId::SIZE_TWO_EXISTS:
      if (ctx.marked) return check_size_two_star(*ctx.marked, ctx.vertex, star);
      if (ctx.graph) return check_size_two_pure(*ctx.graph, ctx.verts);
      return unmet("needs a context");
  }
  return unmet("unknown lemma");
}

LemmaOutcome check_lemma(LemmaId id, const LemmaContext& ctx) {
  return check_lemma_with_star(id, ctx, nullptr);
}

std::pair<IdealEdge, Dir> find_size_two_increasing(const MarkedGraph& m,
                                                   int v) {
  if (m.ctx->sig.n() < 2)
    throw HypothesesNotMet("size-two existence needs n >= 2");
  if (m.graph.valence(v) < 2) throw InactiveVertex("vertex not active");
  StarGraph s = m.star_graph();
  DenseCalc dc(s.graph);
  // proof-guided: a same-edge star edge (d, d') at v, then candidates
  // {d,c}, {d,c'} with c, c' off e and e-bar
  for (int e : m.graph.star(v)) {
    int grp = m.graph.vertex_group[v];
    int ord = grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
    for (int a = 0; a < ord; ++a)
      for (int b = a + 1; b < ord; ++b) {
        if (dc.a(s.dir_id(e, a), s.dir_id(e, b)) == 0) continue;
        Dir d{e, a};
        std::vector<Dir> cands;
        for (int f : m.graph.star(v)) {
          if ((f & ~1) == (e & ~1)) continue;
          for (int x = 0; x < ord; ++x) cands.push_back(Dir{f, x});
        }
        for (const Dir& c : cands) {
          IdealEdge pair;
          pair.vertex = v;
          pair.dirs = {d, c};
          std::sort(pair.dirs.begin(), pair.dirs.end());
          if (!ideal_edge_valid(m, pair)) continue;
          if (s.abs_dirs(pair.dirs) > s.abs_dir(c)) return {pair, c};
        }
      }
  }
  // exhaustive fallback over all size-two ideal edges at v
  for (const auto& a : enumerate_ideal_edges(m, v, 2)) {
    for (int h = 0;
         h < (m.graph.vertex_group[v] < 0
                  ? 1
                  : m.ctx->sig.factors[m.graph.vertex_group[v]].order);
         ++h) {
      IdealEdge t = translate(m, a, h);
      for (const Dir& d : D_alpha(t))
        if (s.abs_dirs(t.dirs) > s.abs_dir(d)) return {t, d};
    }
  }
  throw NotFound("no strictly increasing size-two move at vertex " +
                 std::to_string(v));
}

MultiGraph random_multigraph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(4, 12);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> mm(1, 3);
  MultiGraph g;
  g.n = nv(rng);
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if (coin(rng) < 0.35) g.add_edge(u, v, mm(rng));
  return g;
}

namespace {

void tally(CampaignStats& st, const LemmaOutcome& o) {
  if (o.kind == LemmaOutcome::HYPOTHESES_NOT_MET) return;
  ++st.contexts;
  if (o.kind == LemmaOutcome::VIOLATION) {
    ++st.violations;
    if (st.first_witness.empty()) st.first_witness = o.detail;
  }
}

}  // namespace

CampaignStats scan_multigraph(LemmaId id, const MultiGraph& g,
                              std::mt19937_64& rng) {
  CampaignStats st;
  LemmaContext ctx;
  ctx.graph = &g;
  std::uniform_int_distribution<int> pick(0, g.n - 1);
  switch (id) {
    case LemmaId::THREE_DIRECTIONS:
      for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
          for (int w = v + 1; w < g.n; ++w) {
            if (u == v || u == w) continue;
            ctx.verts = {u, v, w};
            tally(st, check_lemma(id, ctx));
          }
      break;
    case LemmaId::WHEN_REDUCTIVE: {
      for (int t = 0; t < 40; ++t) {
        std::set<int> S;
        int sz = 1 + pick(rng) % std::max(1, g.n / 2 + 1);
        while (static_cast<int>(S.size()) < sz) S.insert(pick(rng));
        ctx.S.assign(S.begin(), S.end());
        ctx.x = ctx.S[rng() % ctx.S.size()];
        tally(st, check_lemma(id, ctx));
      }
      break;
    }
    case LemmaId::TWO_REDUCTIVE: {
      for (int x = 0; x < g.n; ++x) {
        ctx.T = {x};
        tally(st, check_lemma(id, ctx));
      }
      for (int x = 0; x < g.n; ++x)
        for (int y = x + 1; y < g.n; ++y) {
          ctx.T = {x, y};
          tally(st, check_lemma(id, ctx));
        }
      for (int t = 0; t < 20; ++t) {
        std::set<int> T;
        int sz = 3 + static_cast<int>(rng() % 3);
        if (sz >= g.n) sz = g.n - 1;
        while (static_cast<int>(T.size()) < sz) T.insert(pick(rng));
        ctx.T.assign(T.begin(), T.end());
        tally(st, check_lemma(id, ctx));
      }
      break;
    }
    case LemmaId::REALLY_TWO_REDUCTIVE: {
      DenseCalc dc(g);
      for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
          for (int w = v + 1; w < g.n; ++w) {
            if (u == v || u == w) continue;
            long long auvw = dc.abs3(u, v, w);
            if (auvw > std::min({dc.abs1(u), dc.abs1(v), dc.abs1(w)}))
              continue;
            bool h1 = dc.abs2(u, v) >= std::min(dc.abs1(u), dc.abs1(v));
            bool h2 = dc.abs2(u, w) >= std::min(dc.abs1(u), dc.abs1(w));
            bool strict =
                dc.abs2(u, v) > std::min(dc.abs1(u), dc.abs1(v)) ||
                dc.abs2(u, w) > std::min(dc.abs1(u), dc.abs1(w));
            if (!h1 || !h2 || !strict) continue;
            for (int x = 0; x < g.n; ++x) {
              if (x == u || x == v || x == w) continue;
              if (dc.abs3(u, v, x) > dc.abs1(x)) continue;
              for (int y = 0; y < g.n; ++y) {
                if (y == u || y == v || y == w || y == x) continue;
                ctx.verts = {u, v, w, x, y};
                tally(st, check_lemma(id, ctx));
              }
            }
          }
      break;
    }
    case LemmaId::TRIOS_INCREASING:
      for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
          for (int w = v + 1; w < g.n; ++w) {
            ctx.verts = {u, v, w};
            tally(st, check_lemma(id, ctx));
          }
      break;
    case LemmaId::SIZE_TWO_EXISTS: {
      DenseCalc dc(g);
      for (int d = 0; d < g.n; ++d)
        for (int dp = 0; dp < g.n; ++dp) {
          if (d == dp || dc.a(d, dp) == 0) continue;
          for (int c = 0; c < g.n; ++c)
            for (int cp = c + 1; cp < g.n; ++cp) {
              if (c == d || c == dp || cp == d || cp == dp) continue;
              ctx.verts = {d, dp, c, cp};
              tally(st, check_lemma(id, ctx));
            }
        }
      break;
    }
    case LemmaId::ONE_REDUCTIVE_SIZE_TWO:
    case LemmaId::E_F_FBAR:
      // no pure-calculus reformulation; these run on marked graphs only
      break;
  }
  return st;
}

CampaignStats scan_marked_graph(LemmaId id, const MarkedGraph& m) {
  CampaignStats st;
  StarGraph s = m.star_graph();
  LemmaContext ctx;
  auto run = [&](const LemmaContext& c) {
    tally(st, check_lemma_with_star(id, c, &s));
  };
  switch (id) {
    case LemmaId::THREE_DIRECTIONS:
    case LemmaId::WHEN_REDUCTIVE:
    case LemmaId::TWO_REDUCTIVE:
    case LemmaId::REALLY_TWO_REDUCTIVE: {
      // run the calculus lemmas on the star multigraph itself
      ctx.graph = &s.graph;
      std::mt19937_64 rng(0x5eed5eedULL ^ s.graph.n);
      return scan_multigraph(id, s.graph, rng);
    }
    case LemmaId::ONE_REDUCTIVE_SIZE_TWO: {
      ctx.marked = &m;
      for (int v = 0; v < m.graph.V(); ++v) {
        int grp = m.graph.vertex_group[v];
        if (grp < 0 || m.ctx->sig.factors[grp].order < 2) continue;
        if (m.graph.valence(v) < 3) continue;
        auto stv = m.graph.star(v);
        int ord = m.ctx->sig.factors[grp].order;
        for (size_t i = 0; i < stv.size(); ++i)
          for (size_t j = 0; j < stv.size(); ++j) {
            if ((stv[i] & ~1) == (stv[j] & ~1) && stv[i] >= stv[j]) continue;
            if (stv[i] == stv[j]) continue;
            for (int a = 0; a < ord; ++a)
              for (int b = 0; b < ord; ++b) {
                ctx.vertex = v;
                ctx.dirs = {Dir{stv[i], a}, Dir{stv[j], b}};
                run(ctx);
              }
          }
      }
      return st;
    }
    case LemmaId::TRIOS_INCREASING: {
      ctx.marked = &m;
      for (int v = 0; v < m.graph.V(); ++v) {
        auto stv = m.graph.star(v);
        int grp = m.graph.vertex_group[v];
        int ord = grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
        for (size_t i = 0; i < stv.size(); ++i)
          for (size_t j = i + 1; j < stv.size(); ++j)
            for (size_t k = j + 1; k < stv.size(); ++k) {
              std::set<int> unor = {stv[i] & ~1, stv[j] & ~1, stv[k] & ~1};
              if (unor.size() != 3) continue;
              for (int a = 0; a < ord; ++a)
                for (int b = 0; b < ord; ++b)
                  for (int c = 0; c < ord; ++c) {
                    ctx.vertex = v;
                    ctx.dirs = {Dir{stv[i], a}, Dir{stv[j], b},
                                Dir{stv[k], c}};
                    run(ctx);
                  }
            }
      }
      return st;
    }
    case LemmaId::E_F_FBAR: {
      ctx.marked = &m;
      for (int v = 0; v < m.graph.V(); ++v) {
        auto stv = m.graph.star(v);
        int grp = m.graph.vertex_group[v];
        int ord = grp < 0 ? 1 : m.ctx->sig.factors[grp].order;
        for (int f : stv) {
          if (!m.graph.is_loop_edge(f) || (f & 1)) continue;
          for (int e : stv) {
            if ((e & ~1) == (f & ~1)) continue;
            for (int a = 0; a < ord; ++a)
              for (int b = 0; b < ord; ++b)
                for (int c = 0; c < ord; ++c) {
                  ctx.vertex = v;
                  ctx.dirs = {Dir{e, a}, Dir{f, b},
                              Dir{GraphOfGroups::rev(f), c}};
                  run(ctx);
                }
          }
        }
      }
      return st;
    }
    case LemmaId::SIZE_TWO_EXISTS: {
      ctx.marked = &m;
      for (int v = 0; v < m.graph.V(); ++v) {
        if (m.graph.valence(v) < 2) continue;
        ctx.vertex = v;
        run(ctx);
      }
      return st;
    }
  }
  return st;
}

}  // namespace briar
