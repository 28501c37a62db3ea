#include <algorithm>
#include <functional>
#include <map>

#include "briar/errors.hpp"
#include "briar/paths.hpp"

namespace briar {

namespace {

// does `top` collapse onto `bot`? (the empty forest counts: equivalent
// marked graphs are collapses of each other)
bool collapses_onto(const MarkedGraph& top, const MarkedGraph& bot) {
  int need = top.graph.unoriented_count() - bot.graph.unoriented_count();
  if (need < 0) return false;
  if (need == 0) return marked_equal(top, bot);
  std::vector<int> candidates;
  for (int e = 0; e < top.graph.oriented_count(); e += 2) {
    if (top.graph.is_loop_edge(e)) continue;
    if (top.graph.vertex_group[top.graph.init(e)] >= 0 &&
        top.graph.vertex_group[top.graph.term(e)] >= 0)
      continue;
    candidates.push_back(e);
  }
  const int m = static_cast<int>(candidates.size());
  if (need > m) return false;
  std::vector<int> pick;
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (static_cast<int>(pick.size()) == need) {
      std::set<int> f(pick.begin(), pick.end());
      if (!is_collapsible_forest(top.graph, f)) return false;
      return marked_equal(collapse_forest_m(top, f), bot);
    }
    for (int j = i; j < m; ++j) {
      pick.push_back(candidates[j]);
      if (rec(j + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

struct CollapseMemo {
  std::map<std::pair<std::string, std::string>, bool> memo;
  bool check(const MarkedGraph& top, const MarkedGraph& bot) {
    auto key = std::make_pair(canonical_string(top), canonical_string(bot));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool r = collapses_onto(top, bot);
    memo.emplace(std::move(key), r);
    return r;
  }
};

}  // namespace

PathCheck validate_standard_path(const StandardPath& p) {
  PathCheck c;
  auto fail = [&](std::string s) {
    c.ok = false;
    c.why = std::move(s);
    return c;
  };
  if (p.entries.empty()) return fail("empty path");
  if (p.entries.size() % 2 == 0) return fail("path has odd length");
  CollapseMemo memo;
  for (size_t i = 0; i < p.entries.size(); ++i) {
    if (i % 2 == 0) {
      if (!p.entries[i].reduced())
        return fail("entry " + std::to_string(i) + " is not reduced");
    } else {
      const MarkedGraph& x = p.entries[i];
      if (x.graph.unoriented_count() !=
          p.entries[i - 1].graph.unoriented_count() + 1)
        return fail("entry " + std::to_string(i) +
                    " is not a one-edge blow-up");
      if (!memo.check(x, p.entries[i - 1]) || !memo.check(x, p.entries[i + 1]))
        return fail("entry " + std::to_string(i) +
                    " does not collapse onto its neighbors");
    }
  }
  return c;
}

CertCheck replay_certificate(const StandardPath& initial,
                             const HomotopyCertificate& cert,
                             const StandardPath& final_path,
                             long long avoid_radius) {
  CertCheck r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.why = std::move(s);
    return r;
  };
  CollapseMemo memo;
  std::map<std::string, bool> ball_checked;
  auto check_outside = [&](const MarkedGraph& m) {
    if (avoid_radius < 0) return true;
    const std::string& id = canonical_string(m);
    auto it = ball_checked.find(id);
    if (it != ball_checked.end()) return it->second;
    bool outside = !in_ball_radius(m, avoid_radius);
    ball_checked.emplace(id, outside);
    return outside;
  };

  std::vector<MarkedGraph> cur = initial.entries;
  for (const auto& e : cur)
    if (!check_outside(e)) return fail("initial path touches the ball");

  for (size_t si = 0; si < cert.steps.size(); ++si) {
    const Replacement& st = cert.steps[si];
    std::string where = "step " + std::to_string(si) + ": ";
    if (st.old_entries.empty() || st.new_entries.empty())
      return fail(where + "empty slice");
    if (st.at < 0 ||
        st.at + st.old_entries.size() > cur.size())
      return fail(where + "slice out of range");
    for (size_t i = 0; i < st.old_entries.size(); ++i)
      if (!marked_equal(cur[st.at + i], st.old_entries[i]))
        return fail(where + "old slice does not match the path");
    if (!marked_equal(st.old_entries.front(), st.new_entries.front()) ||
        !marked_equal(st.old_entries.back(), st.new_entries.back()))
      return fail(where + "replacement changes endpoints");
    for (const auto& v : st.old_entries)
      if (!memo.check(st.center, v))
        return fail(where + "center does not collapse onto an old entry");
    for (const auto& v : st.new_entries)
      if (!memo.check(st.center, v))
        return fail(where + "center does not collapse onto a new entry");
    if (st.norm_floor >= 0) {
      for (size_t i = 1; i + 1 < st.new_entries.size(); ++i) {
        const MarkedGraph& v = st.new_entries[i];
        if (v.reduced() && v.total_length() <= st.norm_floor)
          return fail(where + "interior norm bound violated");
      }
    }
    if (avoid_radius >= 0) {
      for (const auto& v : st.new_entries)
        if (!check_outside(v))
          return fail(where + "homotopy touches the ball");
      if (!check_outside(st.center))
        return fail(where + "center lies in the ball");
    }
    cur.erase(cur.begin() + st.at,
              cur.begin() + st.at + st.old_entries.size());
    cur.insert(cur.begin() + st.at, st.new_entries.begin(),
               st.new_entries.end());
    ++r.steps_checked;
  }
  if (cur.size() != final_path.entries.size())
    return fail("replayed path length differs from the final path");
  for (size_t i = 0; i < cur.size(); ++i)
    if (!marked_equal(cur[i], final_path.entries[i]))
      return fail("replayed path differs from the final path at entry " +
                  std::to_string(i));
  r.ok = true;
  return r;
}

std::optional<MovePair> extract_move(const MarkedGraph& tau,
                                     const MarkedGraph& X,
                                     const MarkedGraph& sigma) {
  if (X.graph.unoriented_count() != tau.graph.unoriented_count() + 1)
    return std::nullopt;
  StarGraph s = tau.star_graph();
  long long upstairs = X.total_length();
  long long base = tau.total_length();
  for (int v = 0; v < tau.graph.V(); ++v) {
    if (tau.graph.valence(v) < 2) continue;
    for (const auto& a : enumerate_ideal_edges(tau, v, tau.graph.valence(v))) {
      // blow-ups of equivalent ideal edges are equivalent, so class
      // representatives suffice
      if (base + s.abs_dirs(a.dirs) != upstairs) continue;  // cheap reject
      BlowUpResult b = blow_up(tau, {a});
      if (!marked_equal(b.out, X)) continue;
      for (const Dir& d : D_alpha(a)) {
        MarkedGraph moved = collapse_edge(b.out, d.edge);
        if (marked_equal(moved, sigma)) return MovePair{a, d};
      }
    }
  }
  return std::nullopt;
}

}  // namespace briar
