#pragma once

#include <map>
#include <string>
#include <vector>

#include "briar/ideal.hpp"

namespace briar {

struct BallOptions {
  long long patch_budget = 200000;  // BallNotFinite beyond this
  int forest_family_cap = 8;        // max ideal edges per blow-up family
};

/// The explored ball of radius r: all reduced marked graphs of norm <= r
/// (closed under star-sharing moves), the star nodes connecting them, the
/// one-star-hop closure C_r, and N(r) = max norm over C_r.
struct Ball {
  long long radius = 0;

  struct Patch {
    MarkedGraph rep;
    long long norm = 0;
    std::string canon;
  };
  std::vector<Patch> patches;  // sorted by canonical id
  std::map<std::string, int> index;

  /// A blow-up shared by several patches' stars; targets index `patches`
  /// for in-ball targets plus canonical ids for C_r-only ones.
  struct StarNode {
    std::string canon;
    std::vector<std::string> targets;  // canonical ids of collapse targets
  };
  std::vector<StarNode> star_nodes;

  std::vector<Patch> c_r;  // briar patches whose stars meet the ball
  long long N_r = 0;

  bool contains_reduced(const MarkedGraph& m) const;
};

Ball explore_ball(const MarkedGraph& seed, long long radius,
                  BallOptions opts = {});

/// Independent membership test for an arbitrary vertex of L: a reduced
/// graph lies in B_k iff its norm is <= k; a blow-up lies in B_k iff some
/// maximal-forest collapse has norm <= k.
bool in_ball_radius(const MarkedGraph& m, long long k);

/// Smallest norm over the reduced collapses of m (m itself if reduced).
long long min_collapse_norm(const MarkedGraph& m);

}  // namespace briar
