#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "briar/ideal.hpp"
#include "briar/multigraph.hpp"

namespace briar {

enum class LemmaId {
  THREE_DIRECTIONS,
  WHEN_REDUCTIVE,
  TWO_REDUCTIVE,
  ONE_REDUCTIVE_SIZE_TWO,
  REALLY_TWO_REDUCTIVE,
  TRIOS_INCREASING,
  E_F_FBAR,
  SIZE_TWO_EXISTS,
};

const char* lemma_name(LemmaId id);
std::optional<LemmaId> lemma_from_name(const std::string& s);
std::vector<LemmaId> all_lemmas();

/// A lemma instance: either a bare multigraph with chosen vertices/sets,
/// or a marked graph with chosen vertex/directions. Hypotheses are always
/// machine-checked; unmet hypotheses yield HYPOTHESES_NOT_MET rather than
/// an assumption.
struct LemmaContext {
  const MultiGraph* graph = nullptr;
  std::vector<int> verts;  // THREE_DIRECTIONS {u,v,w}; REALLY {u,v,w,x,y};
                           // pure TRIOS {u,v,w}; pure SIZE_TWO {d,d',c,c'}
  std::vector<int> S;      // WHEN_REDUCTIVE
  int x = -1;              // WHEN_REDUCTIVE member of S
  std::vector<int> T;      // TWO_REDUCTIVE

  const MarkedGraph* marked = nullptr;
  int vertex = -1;          // star lemmas
  std::vector<Dir> dirs;    // TRIOS {u,v,w}; E_F_FBAR {u,v,vbar};
                            // ONE_REDUCTIVE_SIZE_TWO {u,v}
};

struct LemmaOutcome {
  enum Kind { HOLDS, VIOLATION, HYPOTHESES_NOT_MET } kind = HOLDS;
  std::string detail;  // witness on violation, reason when hypotheses unmet
};

LemmaOutcome check_lemma(LemmaId id, const LemmaContext& ctx);

/// Variant taking a precomputed star graph for the star-dependent lemmas.
LemmaOutcome check_lemma_with_star(LemmaId id, const LemmaContext& ctx,
                                   const StarGraph* star);

/// Constructive search for a strictly increasing size-two Whitehead move at
/// an active vertex (requires n >= 2): same-edge star pair first, then the
/// two candidate pairs, exhaustive scan as a fallback.
std::pair<IdealEdge, Dir> find_size_two_increasing(const MarkedGraph& m,
                                                   int v);

/// Seeded Erdos-Renyi-style multigraph: 4..12 vertices, multiplicity <= 3.
MultiGraph random_multigraph(std::mt19937_64& rng);

struct CampaignStats {
  long long contexts = 0;    // hypothesis-satisfying instances checked
  long long violations = 0;
  std::string first_witness;
};

/// Scans one random multigraph for hypothesis-satisfying instances of the
/// lemma (pure-calculus reformulations for the star-dependent ones where
/// one exists) and checks each.
CampaignStats scan_multigraph(LemmaId id, const MultiGraph& g,
                              std::mt19937_64& rng);

/// Scans every instance of the lemma on one reduced marked graph.
CampaignStats scan_marked_graph(LemmaId id, const MarkedGraph& m);

/// True when the context's word set contains the whole standard W of its
/// signature (the standing hypothesis of the counting lemmas).
bool has_standard_W(const SpineContext& ctx);

}  // namespace briar
