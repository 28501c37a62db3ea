#include <doctest.h>

#include <random>

#include "briar/errors.hpp"
#include "test_util.hpp"

using namespace briar;
using namespace briar_test;

TEST_CASE("word reduction basics") {
  FactorSignature sig = make_sig({2, 3}, 1);
  // inverse cancellation inside a factor
  Word w1 = reduce_word(sig, {Letter::factor(0, 1), Letter::factor(0, 1)});
  CHECK(w1.empty());
  // free cancellation
  Word w2 = reduce_word(
      sig, {Letter::free_gen(0, 1), Letter::free_gen(0, -1),
            Letter::factor(1, 2)});
  CHECK(w2 == Word{{Letter::factor(1, 2)}});
  // multiply in the group table: Z/3, 1*1 = 2
  Word w3 = reduce_word(sig, {Letter::factor(1, 1), Letter::factor(1, 1)});
  CHECK(w3 == Word{{Letter::factor(1, 2)}});
  CHECK_THROWS_AS(reduce_word(sig, {Letter::factor(0, 0)}), InvalidLetter);
  CHECK_THROWS_AS(reduce_word(sig, {Letter::factor(5, 1)}), InvalidLetter);
}

TEST_CASE("reduce_word matches the scan oracle and is a homomorphism") {
  FactorSignature sig = make_sig({2, 3}, 2);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Letter> raw;
    int len = static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) raw.push_back(rand_letter(sig, rng));
    Word fast = reduce_word(sig, raw);
    Word slow = oracle_reduce(sig, raw);
    CHECK(fast == slow);
    // idempotent
    CHECK(reduce_word(sig, fast.letters) == fast);
  }
  for (int trial = 0; trial < 200; ++trial) {
    Word u = rand_word(sig, rng, static_cast<int>(rng() % 8));
    Word v = rand_word(sig, rng, static_cast<int>(rng() % 8));
    std::vector<Letter> cat = u.letters;
    cat.insert(cat.end(), v.letters.begin(), v.letters.end());
    CHECK(reduce_word(sig, cat) == word_mul(sig, u, v));
  }
}

TEST_CASE("cyclic normal form") {
  FactorSignature sig = make_sig({2, 2}, 2);
  // conjugate of a generator
  Word w = reduce_word(sig, {Letter::free_gen(0, 1), Letter::free_gen(1, 1),
                             Letter::free_gen(0, -1)});
  CyclicWord c = cyclic_normal_form(sig, w);
  CHECK(c.letters == std::vector<Letter>{Letter::free_gen(1, 1)});
  // already cyclically reduced single factor letter
  CyclicWord c2 = cyclic_normal_form(sig, Word{{Letter::factor(0, 1)}});
  CHECK(c2.letters == std::vector<Letter>{Letter::factor(0, 1)});
  // s1 a2 s1^-1 a2: all rotations reduced, canonical rotation is minimal
  Word w3 = reduce_word(sig, {Letter::free_gen(0, 1), Letter::factor(1, 1),
                              Letter::free_gen(0, -1), Letter::factor(1, 1)});
  CyclicWord c3 = cyclic_normal_form(sig, w3);
  CHECK(c3.letters.size() == 4);
  std::vector<Letter> rot = c3.letters;
  for (size_t r = 1; r < rot.size(); ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    CHECK(!(rot < c3.letters));
  }
}

TEST_CASE("cyclic normal form is conjugation invariant (brute force)") {
  FactorSignature sig = make_sig({2, 3}, 1);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    Word w = rand_word(sig, rng, static_cast<int>(rng() % 8));
    Word g = rand_word(sig, rng, static_cast<int>(rng() % 4));
    Word conj = word_mul(sig, word_mul(sig, g, w), word_inverse(sig, g));
    CHECK(cyclic_normal_form(sig, w) == cyclic_normal_form(sig, conj));
  }
}

TEST_CASE("standard W sets") {
  // n=2, k=0, both Z/2: single word a1 a2
  {
    auto words = standard_w_words(make_sig({2, 2}, 0));
    CHECK(words.size() == 1);
    CHECK(words[0] ==
          Word{{Letter::factor(0, 1), Letter::factor(1, 1)}});
    // the Out-finite gate rejects this signature
    CHECK_THROWS_AS(build_standard_W(make_sig({2, 2}, 0)),
                    UnsupportedSignature);
  }
  // n=2, k=1, both Z/2: the six-element set
  {
    auto words = build_standard_W(make_sig({2, 2}, 1));
    CHECK(words.size() == 6);
  }
  // n=1, k=2: contains s1 s2 and s1 s2^-1
  {
    FactorSignature sig = make_sig({2}, 2);
    auto words = build_standard_W(sig);
    Word s1s2 = reduce_word(
        sig, {Letter::free_gen(0, 1), Letter::free_gen(1, 1)});
    Word s1s2i = reduce_word(
        sig, {Letter::free_gen(0, 1), Letter::free_gen(1, -1)});
    CHECK(std::find(words.begin(), words.end(), s1s2) != words.end());
    CHECK(std::find(words.begin(), words.end(), s1s2i) != words.end());
  }
  CHECK_THROWS_AS(build_standard_W(make_sig({5}, 0)), UnsupportedSignature);
  CHECK_THROWS_AS(build_standard_W(make_sig({5}, 1)), UnsupportedSignature);
  // every standard word is hyperbolic: nonempty cyclic form, not a single
  // finite-factor letter
  for (auto orders : std::vector<std::vector<int>>{{2, 2}, {2, 3}, {3, 3}}) {
    FactorSignature sig = make_sig(orders, 1);
    for (const auto& w : build_standard_W(sig)) {
      CyclicWord c = cyclic_normal_form(sig, w);
      CHECK(!c.letters.empty());
      if (c.letters.size() == 1) CHECK(c.letters[0].kind == Letter::FREE);
    }
  }
}

TEST_CASE("classification table") {
  CHECK(classify(2, 0).ends == Ends::ZERO);
  CHECK(classify(2, 1).ends == Ends::INFINITE);
  CHECK(classify(2, 1).dim_L == 2);
  CHECK(classify(4, 0).ends == Ends::ONE);
  CHECK(classify(4, 0).edge_number == 3);
  CHECK(classify(4, 0).dim_L == 2);
  CHECK(classify(0, 2).ends == Ends::INFINITE);
  CHECK(classify(3, 0).ends == Ends::INFINITE);
  CHECK(classify(1, 2).ends == Ends::ONE);
  // closed forms recomputed independently on 0 <= n,k <= 5
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= 5; ++k) {
      Classification c = classify(n, k);
      int dim = n >= 2 ? 2 * k + n - 2 : std::max(2 * k + n - 3, 0);
      CHECK(c.dim_L == dim);
      CHECK(c.edge_number == 2 * k + n - 1);
    }
}

TEST_CASE("word token round trip") {
  FactorSignature sig = make_sig({2, 3}, 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Word w = rand_word(sig, rng, static_cast<int>(rng() % 9));
    CHECK(word_from_string(sig, word_to_string(sig, w)) == w);
  }
}
