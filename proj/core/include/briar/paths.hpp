#pragma once

#include <optional>
#include <string>
#include <vector>

#include "briar/ball.hpp"
#include "briar/canonical.hpp"
#include "briar/ideal.hpp"

namespace briar {

/// A standard path: odd number of entries, reduced marked graphs at even
/// positions, and each (even, odd, even) triple an elementary Whitehead
/// path (the odd entry a one-ideal-edge blow-up collapsing onto both
/// neighbors).
struct StandardPath {
  std::vector<MarkedGraph> entries;

  size_t size() const { return entries.size(); }
  const MarkedGraph& front() const { return entries.front(); }
  const MarkedGraph& back() const { return entries.back(); }
};

struct PathCheck {
  bool ok = true;
  std::string why;
};

PathCheck validate_standard_path(const StandardPath& p);

/// One elementary rewriting step: inside the star of `center`, the slice
/// `old_entries` (found at index `at` of the current path) is replaced by
/// `new_entries` with the same endpoints. `norm_floor >= 0` asserts that
/// every interior reduced entry of the replacement has norm strictly
/// greater than the floor.
struct Replacement {
  MarkedGraph center;
  int at = 0;
  std::vector<MarkedGraph> old_entries;
  std::vector<MarkedGraph> new_entries;
  long long norm_floor = -1;
};

struct HomotopyCertificate {
  std::vector<Replacement> steps;
};

struct CertCheck {
  bool ok = false;
  std::string why;
  long long steps_checked = 0;
};

/// Independent replay: verifies slice match, endpoint agreement, that the
/// center collapses onto every entry it claims to cobound, the norm floors,
/// and (when avoid_radius >= 0) that every vertex the homotopy ever touches
/// stays outside the ball of that radius. Uses only collapse enumeration,
/// canonical forms and norms.
CertCheck replay_certificate(const StandardPath& initial,
                             const HomotopyCertificate& cert,
                             const StandardPath& final_path,
                             long long avoid_radius = -1);

/// Whitehead move data recovered from path structure.
struct MovePair {
  IdealEdge alpha;
  Dir d{};
};

/// Given the elementary triple (sigma, X, tau) with X a one-edge blow-up
/// collapsing onto both, recovers (alpha, d) on tau with tau^alpha == X and
/// tau^alpha_d == sigma (canonical equality).
std::optional<MovePair> extract_move(const MarkedGraph& tau,
                                     const MarkedGraph& X,
                                     const MarkedGraph& sigma);

/// The compatible-paths rewriting square: a standard path from tau^alpha_e
/// to tau^beta_f through briar patches of norm > ||tau|| (at most one in
/// the interior), given compatible ideal edges with (alpha,e) strictly
/// increasing and (beta,f) non-decreasing.
struct Reroute {
  StandardPath path;
  Replacement square;  // old: (tau^a_e, tau^a, tau, tau^b, tau^b_f)
};
Reroute reroute_compatible(const MarkedGraph& tau, const StarGraph& star,
                           const IdealEdge& alpha, Dir e,
                           const IdealEdge& beta, Dir f);

/// Size-two reduction: returns (alpha,e) itself when alpha has size two;
/// otherwise a size-two ideal edge compatible with alpha supporting a
/// strictly increasing move (trio route, else the {e,f,fbar} route).
MovePair shrink_to_size_two(const MarkedGraph& tau, const StarGraph& star,
                            const IdealEdge& alpha, Dir e);

/// Local-minimum elimination: replaces the subpath
/// (tau^b_f, tau^b, tau, tau^a, tau^a_e) around entry `i` (the briar patch
/// tau) by a standard path whose interior briar patches all have norm
/// strictly greater than ||tau||.
struct Elimination {
  StandardPath path;            // full path after replacement
  std::vector<Replacement> steps;
};
Elimination eliminate_local_min(const StandardPath& p, int i);

/// Standardization of an arbitrary edge path of L-vertices (consecutive
/// entries related by collapse): refine to single collapses, bridge
/// non-reduced valleys, and interpolate through maximal forests at peaks.
struct Standardized {
  StandardPath path;
  HomotopyCertificate cert;
  /// The input after the end extensions (when an end was not reduced, the
  /// path is extended by a collapse); the certificate replays base -> path.
  StandardPath base;
};
Standardized standardize_path(const std::vector<MarkedGraph>& raw);

struct PushStats {
  std::vector<long long> min_norms;  // per iteration, before each elimination
  long long eliminations = 0;
};

/// Pushes a standard path outside B_k: repeatedly eliminates a minimum-norm
/// briar-patch occurrence (first one with a strictly increasing side) until
/// every vertex of the path avoids the ball. Requires endpoint norms > N(k)
/// and a one-ended signature.
struct PushResult {
  StandardPath path;
  HomotopyCertificate cert;
  PushStats stats;
};
PushResult push_outside_ball(const StandardPath& p, long long k,
                             const Ball& ball_k);

/// A greedy strictly-increasing ray from a seed briar patch.
struct Ray {
  std::vector<MarkedGraph> patches;   // strictly increasing norms
  StandardPath path;                  // the concatenated standard path
  /// First patch with norm > threshold; NotFound if the ray is too short.
  int index_above(long long threshold) const;
};
Ray build_ray(const MarkedGraph& seed, int length);
Ray build_ray_above(const MarkedGraph& seed, long long target_norm,
                    int max_steps = 1024);

/// Loop pushing: concatenates ray transit at both ends, then pushes the
/// loop outside B_n; the certificate never touches B_k.
struct LoopPush {
  StandardPath loop;   // based at the ray patch above N(n), outside B_n
  HomotopyCertificate cert;
  StandardPath composed_input;  // the loop after transit concatenation
};
LoopPush push_loop(const StandardPath& loop, long long k, long long n,
                   const Ray& ray, const Ball& ball_k, const Ball& ball_n);

}  // namespace briar
