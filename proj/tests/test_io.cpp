#include <doctest.h>

#include "briar/io.hpp"
#include "test_util.hpp"

using namespace briar;
using namespace briar_test;

TEST_CASE("signature text round trip") {
  FactorSignature sig = make_sig({2, 3}, 1);
  FactorSignature back = parse_signature(signature_spec(sig));
  CHECK(back.n() == 2);
  CHECK(back.k() == 1);
  CHECK(back.factors[0].order == 2);
  CHECK(back.factors[1].order == 3);
  CHECK_THROWS_AS(parse_signature("group A cyclic 2\n"), ParseError);
}

TEST_CASE("explicit table parsing validates the group axioms") {
  CHECK_THROWS_AS(
      parse_signature("group B table 2 / 0 1 / 1 1\n"
                      "signature factors B rank 1\n"),
      UnsupportedSignature);
  FactorSignature ok = parse_signature(
      "group B table 2 / 0 1 / 1 0\n"
      "signature factors B rank 0\n");
  CHECK(ok.factors[0].order == 2);
}

TEST_CASE("gog round trip on random patches") {
  for (auto [orders, rank] : std::vector<std::pair<std::vector<int>, int>>{
           {{2, 2}, 1}, {{2, 3}, 1}, {{2}, 2}}) {
    auto ctx = make_ctx(orders, rank);
    auto patches = random_patches(ctx, 6, 2 * rank + 3);
    for (const auto& m : patches) {
      GogFile back = parse_gog(serialize_gog(m));
      CHECK(marked_equal(back.graph, m));
      CHECK(back.graph.norm() == m.norm());
    }
  }
}

TEST_CASE("gog without a loops section uses the standard marking") {
  auto ctx = make_ctx({2, 2}, 1);
  MarkedGraph seed = standard_seed(ctx);
  GogFile g = parse_gog(signature_spec(ctx->sig));
  CHECK(marked_equal(g.graph, seed));
  CHECK(g.graph.norm() == 11);
}

TEST_CASE("marked graph and path JSON round trips") {
  auto ctx = make_ctx({2, 2, 2, 2}, 0);
  MarkedGraph seed = standard_seed(ctx);
  MarkedGraph back = marked_graph_from_json(ctx, marked_graph_to_json(seed));
  CHECK(marked_equal(back, seed));

  auto edges = enumerate_ideal_edges(seed, 0, 2);
  BlowUpResult b = blow_up(seed, {edges.front()});
  StandardPath p;
  p.entries = {seed, b.out, collapse_edge(b.out, D_alpha(edges.front())[0].edge)};
  StandardPath pback = path_from_json(ctx, path_to_json(p));
  REQUIRE(pback.entries.size() == p.entries.size());
  for (size_t i = 0; i < p.entries.size(); ++i)
    CHECK(marked_equal(pback.entries[i], p.entries[i]));
}
