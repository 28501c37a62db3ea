#include <doctest.h>

#include <random>

#include "briar/errors.hpp"
#include "briar/paths.hpp"
#include "briar/polygon.hpp"
#include "test_util.hpp"

using namespace briar;
using namespace briar_test;

namespace {

StandardPath elementary(const MarkedGraph& m, const IdealEdge& a, Dir d) {
  BlowUpResult b = blow_up(m, {a});
  StandardPath p;
  p.entries = {m, b.out, collapse_edge(b.out, d.edge)};
  return p;
}

std::vector<std::pair<IdealEdge, Dir>> all_moves(const MarkedGraph& m) {
  std::vector<std::pair<IdealEdge, Dir>> out;
  for (int v = 0; v < m.graph.V(); ++v) {
    if (m.graph.valence(v) < 2) continue;
    for (const auto& a : enumerate_ideal_edges(m, v, m.graph.valence(v)))
      for (const Dir& d : D_alpha(a)) out.push_back({a, d});
  }
  return out;
}

}  // namespace

TEST_CASE("standard path validation") {
  auto ctx = make_ctx({2, 2}, 1);
  MarkedGraph m = standard_seed(ctx);
  auto moves = all_moves(m);
  StandardPath p = elementary(m, moves[0].first, moves[0].second);
  CHECK(validate_standard_path(p).ok);
  StandardPath bad;
  bad.entries = {m, m};
  CHECK(!validate_standard_path(bad).ok);
}

TEST_CASE("extract_move recovers the move from path structure") {
  auto ctx = make_ctx({2, 2}, 1);
  MarkedGraph m = standard_seed(ctx);
  StarGraph s = m.star_graph();
  for (const auto& [a, d] : all_moves(m)) {
    StandardPath p = elementary(m, a, d);
    auto mv = extract_move(m, p.entries[1], p.entries[2]);
    REQUIRE(mv.has_value());
    // the recovered move has the same blow-up and collapse, hence the same
    // absolute values
    CHECK(s.abs_dirs(mv->alpha.dirs) == s.abs_dirs(a.dirs));
    CHECK(s.abs_dir(mv->d) == s.abs_dir(d));
  }
}

TEST_CASE("reroute_compatible covers the proof cases") {
  auto ctx = make_ctx({2, 2}, 2);
  auto patches = random_patches(ctx, 8, 321);
  int degenerate = 0, forest = 0, loopcase = 0;
  for (const auto& m : patches) {
    StarGraph s = m.star_graph();
    auto moves = all_moves(m);
    for (size_t i = 0; i < moves.size(); ++i)
      for (size_t j = 0; j < moves.size(); ++j) {
        const auto& [a, e] = moves[i];
        const auto& [b, f] = moves[j];
        if (!(s.abs_dirs(a.dirs) > s.abs_dir(e))) continue;
        if (!(s.abs_dirs(b.dirs) >= s.abs_dir(f))) continue;
        if (!compatible(m, a, b) && !same_class(m, a, b)) continue;
        Reroute rr = reroute_compatible(m, s, a, e, b, f);
        // endpoints as promised
        CHECK(marked_equal(rr.path.entries.front(),
                           whitehead_move(m, a, e)));
        CHECK(marked_equal(rr.path.entries.back(), whitehead_move(m, b, f)));
        CHECK(validate_standard_path(rr.path).ok);
        // interior briar patches above the base norm, at most one
        int interior = 0;
        for (size_t t = 2; t + 2 < rr.path.entries.size(); t += 2) {
          ++interior;
          CHECK(rr.path.entries[t].norm() > m.norm());
        }
        CHECK(interior <= 1);
        if (same_class(m, a, b))
          ++degenerate;
        else if (rr.path.entries.size() == 5)
          ++forest;
        else
          ++loopcase;
      }
  }
  CHECK(degenerate > 0);
  CHECK(forest > 0);
  (void)loopcase;
}

TEST_CASE("shrink_to_size_two") {
  auto ctx = make_ctx({2, 2}, 2);
  auto patches = random_patches(ctx, 10, 55);
  int shrunk = 0, kept = 0, efbar = 0;
  for (const auto& m : patches) {
    StarGraph s = m.star_graph();
    for (const auto& [a, e] : all_moves(m)) {
      if (s.abs_dirs(a.dirs) < s.abs_dir(e)) continue;
      MovePair out = shrink_to_size_two(m, s, a, e);
      CHECK(out.alpha.dirs.size() == 2);
      if (a.dirs.size() == 2) {
        CHECK(out.alpha == a);
        ++kept;
      } else {
        CHECK(s.abs_dirs(out.alpha.dirs) > s.abs_dir(out.d));
        CHECK(compatible(m, out.alpha, a));
        ++shrunk;
        std::set<int> unor;
        for (const auto& d : a.dirs) unor.insert(d.edge & ~1);
        if (unor.size() < a.dirs.size()) ++efbar;
      }
    }
  }
  CHECK(kept > 0);
  CHECK(shrunk > 0);
  CHECK(efbar > 0);  // the {e,f,fbar} route fires on loop-rich patches
}

TEST_CASE("good polygons at (4,0) and (1,2)") {
  for (auto [orders, rank] : std::vector<std::pair<std::vector<int>, int>>{
           {{2, 2, 2, 2}, 0}, {{2}, 2}, {{3}, 2}}) {
    auto ctx = make_ctx(orders, rank);
    auto patches = random_patches(ctx, 15, 1000 + rank);
    long long found = 0, unions = 0, fallbacks = 0;
    for (const auto& m : patches) {
      int actives = 0, star_v = -1;
      for (int v = 0; v < m.graph.V(); ++v)
        if (m.graph.valence(v) >= 2) {
          ++actives;
          star_v = v;
        }
      if (actives != 1) continue;
      StarGraph s = m.star_graph();
      auto pairs = enumerate_ideal_edges(m, star_v, 2);
      for (size_t i = 0; i < pairs.size(); ++i)
        for (size_t j = 0; j < pairs.size(); ++j) {
          if (i == j) continue;
          const IdealEdge& a = pairs[i];
          const IdealEdge& b = pairs[j];
          if (a.dirs.size() != 2 || b.dirs.size() != 2) continue;
          if (compatible(m, a, b)) continue;
          bool a_ok = false;
          for (const Dir& d : D_alpha(a))
            if (s.abs_dirs(a.dirs) >= s.abs_dir(d)) a_ok = true;
          if (!a_ok || !supports_strict_increase(s, b)) continue;
          PolygonResult pr = find_good_polygon(m, s, a, b);
          if (pr.kind == PolygonResult::UNION_NONREDUCTIVE) {
            CHECK(ideal_edge_valid(m, pr.union_edge));
            CHECK(!is_reductive(s, pr.union_edge));
            ++unions;
          } else {
            auto v = validate_good_polygon(m, s, pr.polygon, a, b);
            CAPTURE(v.why);
            CHECK(v.ok);
            ++found;
          }
          if (pr.used_fallback) ++fallbacks;
        }
    }
    CAPTURE(orders.size());
    CHECK(found + unions > 0);
    (void)fallbacks;
  }
}

TEST_CASE("eliminate_local_min raises the interior") {
  auto ctx = make_ctx({2, 2, 2, 2}, 0);
  MarkedGraph seed = standard_seed(ctx);
  std::mt19937_64 rng(9);
  // build a valley: two strictly increasing walks glued at the seed
  auto up_walk = [&](int steps) {
    StandardPath p;
    p.entries.push_back(seed);
    MarkedGraph cur = seed;
    for (int t = 0; t < steps; ++t) {
      StarGraph s = cur.star_graph();
      auto moves = all_moves(cur);
      std::vector<std::pair<IdealEdge, Dir>> ups;
      for (const auto& mv : moves)
        if (s.abs_dirs(mv.first.dirs) > s.abs_dir(mv.second)) ups.push_back(mv);
      auto [a, d] = ups[rng() % ups.size()];
      BlowUpResult b = blow_up(cur, {a});
      p.entries.push_back(b.out);
      cur = collapse_edge(b.out, d.edge);
      p.entries.push_back(cur);
    }
    return p;
  };
  StandardPath left = up_walk(2);
  std::reverse(left.entries.begin(), left.entries.end());
  StandardPath right = up_walk(2);
  StandardPath p;
  p.entries = left.entries;
  p.entries.insert(p.entries.end(), right.entries.begin() + 1,
                   right.entries.end());
  REQUIRE(validate_standard_path(p).ok);
  int mid = static_cast<int>(left.entries.size()) - 1;
  long long m0 = p.entries[mid].norm();
  Elimination e = eliminate_local_min(p, mid);
  CHECK(validate_standard_path(e.path).ok);
  CHECK(marked_equal(e.path.entries.front(), p.entries.front()));
  CHECK(marked_equal(e.path.entries.back(), p.entries.back()));
  // the replaced window is gone: interior norms strictly above m0 in the
  // replaced region; verify via certificate replay
  HomotopyCertificate cert;
  cert.steps = e.steps;
  CertCheck cc = replay_certificate(p, cert, e.path, -1);
  CAPTURE(cc.why);
  CHECK(cc.ok);
  // a corrupted certificate must fail replay
  if (!cert.steps.empty()) {
    HomotopyCertificate bad = cert;
    bad.steps[0].at += 2;
    CertCheck cb = replay_certificate(p, bad, e.path, -1);
    CHECK(!cb.ok);
  }
  (void)m0;
}

TEST_CASE("standardize_path") {
  auto ctx = make_ctx({2, 2, 2, 2}, 0);
  MarkedGraph seed = standard_seed(ctx);
  SUBCASE("already standard is untouched") {
    auto moves = all_moves(seed);
    StandardPath p = elementary(seed, moves[0].first, moves[0].second);
    Standardized st = standardize_path(p.entries);
    CHECK(st.path.entries.size() == p.entries.size());
    CHECK(st.cert.steps.empty());
  }
  SUBCASE("forest interpolation at a multi-collapse peak") {
    // blow up a two-edge ideal forest and descend to two different patches
    auto forests = enumerate_ideal_forests(seed, 2);
    for (const auto& fam : forests) {
      if (fam.size() != 2) continue;
      BlowUpResult b = blow_up(seed, fam);
      auto fs = maximal_forests(b.out.graph);
      if (fs.size() < 2) continue;
      MarkedGraph rho_a = collapse_forest_m(b.out, fs[0]);
      MarkedGraph rho_b = collapse_forest_m(b.out, fs[1]);
      std::vector<MarkedGraph> raw = {rho_a, b.out, rho_b};
      Standardized st = standardize_path(raw);
      CHECK(validate_standard_path(st.path).ok);
      CHECK(marked_equal(st.path.entries.front(), rho_a));
      CHECK(marked_equal(st.path.entries.back(), rho_b));
      CertCheck cc = replay_certificate(st.base, st.cert, st.path, -1);
      CAPTURE(cc.why);
      CHECK(cc.ok);
      break;
    }
  }
  SUBCASE("non-reduced endpoints are extended by a collapse") {
    auto moves = all_moves(seed);
    BlowUpResult b = blow_up(seed, {moves[0].first});
    std::vector<MarkedGraph> raw = {b.out, seed};
    Standardized st = standardize_path(raw);
    CHECK(validate_standard_path(st.path).ok);
    CHECK(st.base.entries.size() >= raw.size());
    CertCheck cc = replay_certificate(st.base, st.cert, st.path, -1);
    CHECK(cc.ok);
  }
}

TEST_CASE("build_ray grows strictly and matches eq-star increments") {
  auto ctx = make_ctx({2, 2, 2, 2}, 0);
  MarkedGraph seed = standard_seed(ctx);
  Ray r0 = build_ray(seed, 0);
  CHECK(r0.patches.size() == 1);
  Ray ray = build_ray(seed, 6);
  for (size_t i = 1; i < ray.patches.size(); ++i) {
    CHECK(ray.patches[i].norm() > ray.patches[i - 1].norm());
    // norm increment equals |alpha| - |e| for the recovered move
    auto mv = extract_move(ray.patches[i - 1], ray.path.entries[2 * i - 1],
                           ray.patches[i]);
    REQUIRE(mv.has_value());
    StarGraph s = ray.patches[i - 1].star_graph();
    CHECK(ray.patches[i].norm() - ray.patches[i - 1].norm() ==
          s.abs_dirs(mv->alpha.dirs) - s.abs_dir(mv->d));
  }
  CHECK(validate_standard_path(ray.path).ok);
}

TEST_CASE("push_outside_ball preconditions") {
  auto ctx = make_ctx({2, 2}, 1);  // infinitely many ends: rejected
  MarkedGraph seed = standard_seed(ctx);
  Ball ball = explore_ball(seed, seed.norm());
  StandardPath p;
  p.entries = {seed};
  CHECK_THROWS_AS(push_outside_ball(p, seed.norm(), ball), NotOneEnded);
}
