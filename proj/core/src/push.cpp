#include <algorithm>
#include <functional>
#include <set>

#include "briar/errors.hpp"
#include "briar/paths.hpp"

namespace briar {

namespace {

// forest of `top` whose collapse is canonically `bot`
std::optional<std::set<int>> find_collapse_forest(const MarkedGraph& top,
                                                  const MarkedGraph& bot) {
  int need = top.graph.unoriented_count() - bot.graph.unoriented_count();
  if (need < 0) return std::nullopt;
  if (need == 0)
    return marked_equal(top, bot)
               ? std::optional<std::set<int>>(std::set<int>{})
               : std::nullopt;
  std::vector<int> candidates;
  for (int e = 0; e < top.graph.oriented_count(); e += 2) {
    if (top.graph.is_loop_edge(e)) continue;
    if (top.graph.vertex_group[top.graph.init(e)] >= 0 &&
        top.graph.vertex_group[top.graph.term(e)] >= 0)
      continue;
    candidates.push_back(e);
  }
  std::vector<int> pick;
  std::optional<std::set<int>> found;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (static_cast<int>(pick.size()) == need) {
      std::set<int> f(pick.begin(), pick.end());
      if (!is_collapsible_forest(top.graph, f)) return false;
      if (marked_equal(collapse_forest_m(top, f), bot)) {
        found = f;
        return true;
      }
      return false;
    }
    for (size_t j = i; j < candidates.size(); ++j) {
      pick.push_back(candidates[j]);
      if (rec(j + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  rec(0);
  return found;
}

// single-collapse chain from m down the given forest
std::vector<MarkedGraph> descent_chain(const MarkedGraph& m,
                                       std::set<int> forest) {
  std::vector<MarkedGraph> chain = {m};
  MarkedGraph walker = m;
  while (!forest.empty()) {
    int e = *forest.begin();
    CollapseResult step =
        collapse_edge(walker.ctx->sig, walker.graph, walker.loops, e);
    std::set<int> rest;
    for (int f : forest)
      if (f != e && step.edge_map[f] >= 0) rest.insert(step.edge_map[f]);
    walker = walker.with_graph(std::move(step.graph), std::move(step.loops));
    chain.push_back(walker);
    forest = rest;
  }
  return chain;
}

std::set<int> least_maximal_forest(const MarkedGraph& m) {
  auto forests = maximal_forests(m.graph);
  std::set<int> best = forests.front();
  for (const auto& f : forests)
    if (std::lexicographical_compare(f.begin(), f.end(), best.begin(),
                                     best.end()))
      best = f;
  return best;
}

}  // namespace

Standardized standardize_path(const std::vector<MarkedGraph>& raw) {
  if (raw.empty()) throw NotAPath("empty input path");
  // prepared base: extend non-reduced ends by a full collapse
  std::vector<MarkedGraph> base = raw;
  if (!base.front().reduced()) {
    auto chain = descent_chain(base.front(), least_maximal_forest(base.front()));
    // chain: front ... rho; prepend reversed (rho ... front)
    std::vector<MarkedGraph> pre(chain.rbegin(), chain.rend());
    pre.pop_back();
    base.insert(base.begin(), pre.begin(), pre.end());
  }
  if (!base.back().reduced()) {
    auto chain = descent_chain(base.back(), least_maximal_forest(base.back()));
    base.insert(base.end(), chain.begin() + 1, chain.end());
  }

  Standardized out;
  std::vector<MarkedGraph> work = base;
  auto apply = [&](Replacement rep) {
    work.erase(work.begin() + rep.at,
               work.begin() + rep.at + rep.old_entries.size());
    work.insert(work.begin() + rep.at, rep.new_entries.begin(),
                rep.new_entries.end());
    out.cert.steps.push_back(std::move(rep));
  };

  // phase A: drop adjacent duplicates
  for (size_t i = 0; i + 1 < work.size();) {
    if (marked_equal(work[i], work[i + 1])) {
      Replacement rep;
      rep.center = work[i];
      rep.at = static_cast<int>(i);
      rep.old_entries = {work[i], work[i + 1]};
      rep.new_entries = {work[i]};
      apply(std::move(rep));
    } else {
      ++i;
    }
  }

  // phase B: refine multi-edge collapses into single-edge steps (the chain
  // spans a simplex of L, so this is a homotopy)
  for (size_t i = 0; i + 1 < work.size();) {
    const MarkedGraph& a = work[i];
    const MarkedGraph& b = work[i + 1];
    bool a_top = a.graph.unoriented_count() > b.graph.unoriented_count();
    const MarkedGraph& top = a_top ? a : b;
    const MarkedGraph& bot = a_top ? b : a;
    auto forest = find_collapse_forest(top, bot);
    if (!forest)
      throw NotAPath("consecutive entries are not related by a collapse");
    if (forest->size() <= 1) {
      ++i;
      continue;
    }
    std::vector<MarkedGraph> chain = descent_chain(top, *forest);
    if (!a_top) std::reverse(chain.begin(), chain.end());
    Replacement rep;
    rep.center = top;
    rep.at = static_cast<int>(i);
    rep.old_entries = {a, b};
    rep.new_entries = chain;
    apply(std::move(rep));
    i += 1;  // re-examine from the first refined step
  }

  // phase C: bridge non-reduced valleys with a backtrack to a full collapse
  for (size_t i = 1; i + 1 < work.size(); ++i) {
    if (work[i].reduced()) continue;
    bool down_before =
        work[i - 1].graph.unoriented_count() > work[i].graph.unoriented_count();
    bool up_after =
        work[i + 1].graph.unoriented_count() > work[i].graph.unoriented_count();
    if (!(down_before && up_after)) continue;
    auto chain = descent_chain(work[i], least_maximal_forest(work[i]));
    std::vector<MarkedGraph> insert = chain;  // x .. rho
    for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it)
      insert.push_back(*it);  // .. back to x
    Replacement rep;
    rep.center = work[i];
    rep.at = static_cast<int>(i);
    rep.old_entries = {work[i]};
    rep.new_entries = insert;
    size_t skip = insert.size() - 1;
    apply(std::move(rep));
    i += skip;
  }

  // phase D: peak interpolation through maximal forests
  size_t pos = 0;
  if (!work[pos].reduced()) throw NotAPath("path start is not reduced");
  while (pos + 1 < work.size()) {
    size_t nxt = pos + 1;
    while (nxt < work.size() && !work[nxt].reduced()) ++nxt;
    if (nxt >= work.size())
      throw NotAPath("path does not end at a reduced marked graph");
    size_t peak = pos + 1;
    for (size_t t = pos + 1; t < nxt; ++t)
      if (work[t].graph.unoriented_count() >
          work[peak].graph.unoriented_count())
        peak = t;
    const MarkedGraph X = work[peak];
    auto Fa = find_collapse_forest(X, work[pos]);
    auto Fb = find_collapse_forest(X, work[nxt]);
    if (!Fa || !Fb) throw NotAPath("peak does not collapse onto its anchors");
    std::vector<std::set<int>> forests = {*Fa};
    std::set<int> curF = *Fa;
    while (curF != *Fb) {
      int e2 = -1;
      for (int e : *Fb)
        if (!curF.count(e)) {
          e2 = e;
          break;
        }
      if (e2 < 0) throw NotAPath("forest interpolation stalled");
      int e_out = forest_exchange(X.graph, curF, *Fb, e2);
      curF.erase(e_out);
      curF.insert(e2);
      forests.push_back(curF);
    }
    std::vector<MarkedGraph> seg = {work[pos]};
    for (size_t t = 0; t + 1 < forests.size(); ++t) {
      std::set<int> common;
      std::set_intersection(forests[t].begin(), forests[t].end(),
                            forests[t + 1].begin(), forests[t + 1].end(),
                            std::inserter(common, common.begin()));
      seg.push_back(collapse_forest_m(X, common));
      seg.push_back(collapse_forest_m(X, forests[t + 1]));
    }
    bool same = (seg.size() == nxt - pos + 1);
    if (same)
      for (size_t t = 0; t < seg.size(); ++t)
        if (!marked_equal(seg[t], work[pos + t])) same = false;
    if (!same) {
      Replacement rep;
      rep.center = X;
      rep.at = static_cast<int>(pos);
      rep.old_entries.assign(work.begin() + pos, work.begin() + nxt + 1);
      rep.new_entries = seg;
      size_t new_len = seg.size();
      apply(std::move(rep));
      pos += new_len - 1;
    } else {
      pos = nxt;
    }
  }

  out.path.entries = work;
  PathCheck pc = validate_standard_path(out.path);
  if (!pc.ok) throw NotAPath("standardization failed: " + pc.why);
  // replayability against the prepared base, by construction
  StandardPath base_path;
  base_path.entries = base;
  out.base = std::move(base_path);
  return out;
}

PushResult push_outside_ball(const StandardPath& p, long long k,
                             const Ball& ball_k) {
  PathCheck pc = validate_standard_path(p);
  if (!pc.ok) throw NotAPath(pc.why);
  const MarkedGraph& first = p.entries.front();
  Classification cl = classify(first.ctx->sig);
  if (cl.ends != Ends::ONE)
    throw NotOneEnded("push requires a one-ended signature");
  if (p.entries.front().norm() <= ball_k.N_r ||
      p.entries.back().norm() <= ball_k.N_r)
    throw EndpointsTooLow("endpoint norms must exceed N(k)");

  PushResult out;
  out.path = p;
  while (true) {
    // raise the minimum briar-patch norm above N(k): a briar patch of
    // norm > N(k) has its whole star outside B_k, so every vertex of the
    // final path (blow-ups included) avoids the ball
    long long minn = -1;
    for (size_t i = 0; i < out.path.entries.size(); i += 2) {
      long long nn = out.path.entries[i].norm();
      if (minn < 0 || nn < minn) minn = nn;
    }
    out.stats.min_norms.push_back(minn);
    if (minn > ball_k.N_r) break;
    int pick = -1;
    for (size_t i = 2; i + 2 < out.path.entries.size(); i += 2) {
      if (out.path.entries[i].norm() != minn) continue;
      long long l = out.path.entries[i - 2].norm();
      long long r = out.path.entries[i + 2].norm();
      if (l > minn || r > minn) {
        pick = static_cast<int>(i);
        break;
      }
    }
    if (pick < 0) throw Error("no eliminable minimum-norm occurrence found");
    Elimination e = eliminate_local_min(out.path, pick);
    for (auto& st : e.steps) out.cert.steps.push_back(std::move(st));
    out.path = std::move(e.path);
    ++out.stats.eliminations;
  }
  for (const auto& v : out.path.entries)
    if (in_ball_radius(v, k)) throw Error("push finished inside the ball");
  return out;
}

int Ray::index_above(long long threshold) const {
  for (size_t i = 0; i < patches.size(); ++i)
    if (patches[i].total_length() > threshold) return static_cast<int>(i);
  throw NotFound("ray does not reach the requested norm");
}

Ray build_ray(const MarkedGraph& seed, int length) {
  if (!seed.reduced()) throw NotReduced("ray seed must be reduced");
  Ray ray;
  ray.patches.push_back(seed);
  ray.path.entries.push_back(seed);
  MarkedGraph cur = seed;
  for (int step = 0; step < length; ++step) {
    StarGraph s = cur.star_graph();
    long long best_gap = 0;
    std::optional<std::pair<IdealEdge, Dir>> best;
    for (int v = 0; v < cur.graph.V(); ++v) {
      if (cur.graph.valence(v) < 2) continue;
      for (const auto& a :
           enumerate_ideal_edges(cur, v, cur.graph.valence(v))) {
        long long na = s.abs_dirs(a.dirs);
        for (const Dir& d : D_alpha(a)) {
          long long gap = na - s.abs_dir(d);
          if (gap <= 0) continue;
          if (!best || gap > best_gap ||
              (gap == best_gap &&
               std::pair(a, d) < std::pair(best->first, best->second))) {
            best = {a, d};
            best_gap = gap;
          }
        }
      }
    }
    if (!best)
      throw NoIncreasingMove("no strictly increasing move from the ray tip");
    BlowUpResult b = blow_up(cur, {best->first});
    MarkedGraph next = collapse_edge(b.out, best->second.edge);
    ray.path.entries.push_back(b.out);
    ray.path.entries.push_back(next);
    ray.patches.push_back(next);
    cur = std::move(next);
  }
  return ray;
}

Ray build_ray_above(const MarkedGraph& seed, long long target_norm,
                    int max_steps) {
  Ray ray = build_ray(seed, 0);
  int steps = 0;
  while (ray.patches.back().total_length() <= target_norm) {
    if (++steps > max_steps)
      throw NoIncreasingMove("ray budget exhausted before target norm");
    Ray ext = build_ray(ray.patches.back(), 1);
    ray.path.entries.push_back(ext.path.entries[1]);
    ray.path.entries.push_back(ext.path.entries[2]);
    ray.patches.push_back(ext.patches[1]);
  }
  return ray;
}

LoopPush push_loop(const StandardPath& loop, long long k, long long n,
                   const Ray& ray, const Ball& ball_k, const Ball& ball_n) {
  if (n < ball_k.N_r) throw Error("target radius below N(k)");
  PathCheck pc = validate_standard_path(loop);
  if (!pc.ok) throw NotAPath(pc.why);
  if (!marked_equal(loop.entries.front(), loop.entries.back()))
    throw NotAPath("loop endpoints differ");
  int base_idx = -1;
  for (size_t i = 0; i < ray.patches.size(); ++i)
    if (marked_equal(ray.patches[i], loop.entries.front()))
      base_idx = static_cast<int>(i);
  if (base_idx < 0) throw NotAPath("loop basepoint is not on the ray");
  if (ray.patches[base_idx].total_length() <= ball_k.N_r)
    throw EndpointsTooLow("loop basepoint norm must exceed N(k)");
  for (const auto& v : loop.entries)
    if (in_ball_radius(v, ball_k.N_r))
      throw EndpointsTooLow("loop must avoid B_{N(k)}");
  int target = ray.index_above(ball_n.N_r);
  if (target < base_idx) target = base_idx;
  std::vector<MarkedGraph> transit(ray.path.entries.begin() + 2 * base_idx,
                                   ray.path.entries.begin() + 2 * target + 1);
  LoopPush out;
  std::vector<MarkedGraph> composed;
  composed.insert(composed.end(), transit.rbegin(), transit.rend());
  composed.insert(composed.end(), loop.entries.begin() + 1,
                  loop.entries.end());
  composed.insert(composed.end(), transit.begin() + 1, transit.end());
  out.composed_input.entries = std::move(composed);
  PathCheck cc = validate_standard_path(out.composed_input);
  if (!cc.ok) throw NotAPath("composed loop not standard: " + cc.why);
  PushResult pushed = push_outside_ball(out.composed_input, n, ball_n);
  out.loop = std::move(pushed.path);
  out.cert = std::move(pushed.cert);
  CertCheck rc = replay_certificate(out.composed_input, out.cert, out.loop, k);
  if (!rc.ok)
    throw Error("loop push certificate fails B_k avoidance: " + rc.why);
  return out;
}

}  // namespace briar
