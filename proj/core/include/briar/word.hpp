#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "briar/group_table.hpp"

namespace briar {

/// One letter of a normal-form word in F = A_1 * ... * A_n * F_k:
/// either a nontrivial element of a finite factor or a free generator
/// with a sign.
struct Letter {
  enum Kind : uint8_t { FACTOR = 0, FREE = 1 };
  Kind kind = FACTOR;
  int16_t index = 0;  // factor index or free-generator index
  int32_t elt = 0;    // element index (>= 1) for FACTOR, +1/-1 for FREE

  static Letter factor(int factor_index, int element) {
    Letter l;
    l.kind = FACTOR;
    l.index = static_cast<int16_t>(factor_index);
    l.elt = element;
    return l;
  }
  static Letter free_gen(int gen_index, int sign) {
    Letter l;
    l.kind = FREE;
    l.index = static_cast<int16_t>(gen_index);
    l.elt = sign;
    return l;
  }

  // Fixed total order: finite-factor letters by (factor, element) first,
  // then free letters by (index, sign).
  friend auto operator<=>(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.index != b.index) return a.index <=> b.index;
    return a.elt <=> b.elt;
  }
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in normal form: no adjacent letters from the same finite factor,
/// no cancelling free-generator pair.
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  friend auto operator<=>(const Word&, const Word&) = default;
};

/// Checks every letter against the signature; throws InvalidLetter.
void validate_letters(const FactorSignature& sig,
                      const std::vector<Letter>& letters);

/// Normal form of a raw letter sequence. The empty word is the identity.
Word reduce_word(const FactorSignature& sig, std::vector<Letter> letters);

Word word_mul(const FactorSignature& sig, const Word& a, const Word& b);
Word word_inverse(const FactorSignature& sig, const Word& w);

/// A cyclically reduced word with a canonical (lexicographically least)
/// rotation; equality of CyclicWords decides conjugacy for hyperbolic
/// classes.  Single finite-factor letters are additionally normalized to
/// the least element of their factor conjugacy class.
struct CyclicWord {
  std::vector<Letter> letters;
  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;
};

CyclicWord cyclic_normal_form(const FactorSignature& sig, const Word& w);

/// The mandated word set: {a_i a_j : i < j}, {s_i a_j, a_j s_i : a_j in A_j}
/// and {s_i s_j, s_i s_j^-1 : i != j}, deduplicated, in a fixed order.
/// Requires n >= 1 and Out(F) infinite; rejects F_1, A_1, A_1*F_1, A_1*A_2.
std::vector<Word> build_standard_W(const FactorSignature& sig);

/// Enumeration without the standing-assumption gate (used by tests and by
/// callers that supply their own signature checks).
std::vector<Word> standard_w_words(const FactorSignature& sig);

std::string word_to_string(const FactorSignature& sig, const Word& w);
Word word_from_string(const FactorSignature& sig, const std::string& text);

}  // namespace briar
