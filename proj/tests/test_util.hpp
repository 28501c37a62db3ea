#pragma once

#include <random>
#include <vector>

#include "briar/ball.hpp"
#include "briar/canonical.hpp"
#include "briar/ideal.hpp"

namespace briar_test {

using namespace briar;

inline FactorSignature make_sig(std::vector<int> orders, int rank) {
  FactorSignature sig;
  for (size_t i = 0; i < orders.size(); ++i)
    sig.factors.push_back(
        FiniteGroupTable::cyclic(orders[i], "A" + std::to_string(i + 1)));
  sig.free_rank = rank;
  return sig;
}

inline std::shared_ptr<const SpineContext> make_ctx(std::vector<int> orders,
                                                    int rank) {
  return SpineContext::make_standard(make_sig(std::move(orders), rank));
}

// independent word-reduction oracle: repeated full scans instead of a stack
inline Word oracle_reduce(const FactorSignature& sig,
                          std::vector<Letter> ls) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < ls.size(); ++i) {
      const Letter& a = ls[i];
      const Letter& b = ls[i + 1];
      if (a.kind == Letter::FACTOR && b.kind == Letter::FACTOR &&
          a.index == b.index) {
        int p = sig.factors[a.index].prod(a.elt, b.elt);
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        if (p != 0) ls.insert(ls.begin() + i, Letter::factor(a.index, p));
        changed = true;
        break;
      }
      if (a.kind == Letter::FREE && b.kind == Letter::FREE &&
          a.index == b.index && a.elt == -b.elt) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  Word w;
  w.letters = std::move(ls);
  return w;
}

// independent loop-length oracle: cyclic reduction by rotation scanning
inline long long oracle_loop_length(const FactorSignature& sig,
                                    const GraphOfGroups& g,
                                    std::vector<LoopItem> items) {
  bool changed = true;
  while (changed && !items.empty()) {
    changed = false;
    const size_t n = items.size();
    for (size_t r = 0; r < n && !changed; ++r) {
      size_t j = (r + 1) % n;
      if (items[j].edge == GraphOfGroups::rev(items[r].edge) &&
          items[j].g == 0) {
        int v = g.init(items[r].edge);
        int carried = items[r].g;
        if (n == 2) {
          items.clear();
        } else {
          size_t t = (j + 1) % n;
          int grp = g.vertex_group[v];
          items[t].g = grp < 0 ? 0
                               : sig.factors[grp].prod(carried, items[t].g);
          std::vector<LoopItem> rest;
          for (size_t q = 0; q < n; ++q)
            if (q != r && q != j) rest.push_back(items[q]);
          items = std::move(rest);
        }
        changed = true;
      }
    }
  }
  return static_cast<long long>(items.size());
}

inline Letter rand_letter(const FactorSignature& sig, std::mt19937_64& rng) {
  int total = sig.n() + sig.k();
  int pick = static_cast<int>(rng() % total);
  if (pick < sig.n()) {
    int elt = 1 + static_cast<int>(rng() % (sig.factors[pick].order - 1));
    return Letter::factor(pick, elt);
  }
  return Letter::free_gen(pick - sig.n(), rng() % 2 ? 1 : -1);
}

inline Word rand_word(const FactorSignature& sig, std::mt19937_64& rng,
                      int len) {
  std::vector<Letter> ls;
  for (int i = 0; i < len; ++i) ls.push_back(rand_letter(sig, rng));
  return reduce_word(sig, std::move(ls));
}

// random reduced marked graphs via random Whitehead walks from the seed
inline std::vector<MarkedGraph> random_patches(
    std::shared_ptr<const SpineContext> ctx, int count, uint64_t seed,
    int walk_len = 4) {
  std::mt19937_64 rng(seed);
  std::vector<MarkedGraph> out;
  MarkedGraph base = standard_seed(ctx);
  while (static_cast<int>(out.size()) < count) {
    MarkedGraph cur = base;
    int steps = 1 + static_cast<int>(rng() % walk_len);
    for (int s = 0; s < steps; ++s) {
      std::vector<std::pair<IdealEdge, Dir>> moves;
      for (int v = 0; v < cur.graph.V(); ++v) {
        if (cur.graph.valence(v) < 2) continue;
        for (const auto& a :
             enumerate_ideal_edges(cur, v, cur.graph.valence(v)))
          for (const Dir& d : D_alpha(a)) moves.push_back({a, d});
      }
      auto [a, d] = moves[rng() % moves.size()];
      cur = whitehead_move(cur, a, d);
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace briar_test
