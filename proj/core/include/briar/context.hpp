#pragma once

#include <memory>
#include <vector>

#include "briar/group_table.hpp"
#include "briar/word.hpp"

namespace briar {

/// Shared immutable data for a whole exploration: the signature, the word
/// set W whose translation lengths define the norm, and group-table caches
/// used by canonical forms. Safe to share across threads.
struct SpineContext {
  FactorSignature sig;
  std::vector<Word> W;

  // isomorphism-class bookkeeping for canonical forms
  std::vector<int> table_class;              // factor -> class id
  std::vector<int> class_rep;                // class id -> factor index
  std::vector<std::vector<int>> iso_to_rep;  // factor -> element map into rep
  std::vector<std::vector<std::vector<int>>> class_auts;  // class id -> Aut(rep)

  static std::shared_ptr<const SpineContext> make(FactorSignature sig,
                                                  std::vector<Word> W);
  /// Standard W (plus optional extra words).
  static std::shared_ptr<const SpineContext> make_standard(
      FactorSignature sig, std::vector<Word> extra = {});

  int word_index(const Word& w) const;  // -1 if absent
};

}  // namespace briar
