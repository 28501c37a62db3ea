#include "briar/ball.hpp"

#include <algorithm>
#include <deque>

#include "briar/errors.hpp"

namespace briar {

bool Ball::contains_reduced(const MarkedGraph& m) const {
  return index.count(canonical_string(m)) > 0;
}

long long min_collapse_norm(const MarkedGraph& m) {
  if (m.reduced()) return m.total_length();
  long long best = -1;
  for (const auto& f : maximal_forests(m.graph)) {
    MarkedGraph c = collapse_forest_m(m, f);
    long long nn = c.total_length();
    if (best < 0 || nn < best) best = nn;
  }
  return best;
}

bool in_ball_radius(const MarkedGraph& m, long long k) {
  if (m.reduced()) return m.total_length() <= k;
  for (const auto& f : maximal_forests(m.graph)) {
    MarkedGraph c = collapse_forest_m(m, f);
    if (c.total_length() <= k) return true;
  }
  return false;
}

Ball explore_ball(const MarkedGraph& seed, long long radius,
                  BallOptions opts) {
  if (seed.ctx->sig.n() < 1)
    throw UnsupportedSignature("ball exploration requires n >= 1");
  if (!seed.reduced()) throw NotReduced("ball seed must be reduced");
  if (seed.norm() > radius)
    throw Error("seed norm exceeds the requested radius");

  Ball ball;
  ball.radius = radius;

  std::map<std::string, MarkedGraph> in_ball;    // canon -> rep
  std::map<std::string, MarkedGraph> outside;    // C_r \ ball
  std::map<std::string, Ball::StarNode> stars;   // canon(blowup) -> node

  std::deque<std::string> queue;
  std::string seed_id = canonical_string(seed);
  in_ball.emplace(seed_id, seed);
  queue.push_back(seed_id);

  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    MarkedGraph tau = in_ball.at(id);
    auto forests = enumerate_ideal_forests(tau, opts.forest_family_cap);
    for (const auto& fam : forests) {
      BlowUpResult b = blow_up(tau, fam);
      std::string bid = canonical_string(b.out);
      auto [sit, fresh] = stars.try_emplace(bid);
      if (!fresh) continue;  // this star node was reached before
      sit->second.canon = bid;
      for (const auto& f : maximal_forests(b.out.graph)) {
        MarkedGraph sigma = collapse_forest_m(b.out, f);
        std::string sid = canonical_string(sigma);
        sit->second.targets.push_back(sid);
        long long nn = sigma.total_length();
        if (nn <= radius) {
          if (!in_ball.count(sid)) {
            if (static_cast<long long>(in_ball.size()) >= opts.patch_budget)
              throw BallNotFinite(
                  "patch budget exceeded; W may be too small for compact "
                  "balls");
            in_ball.emplace(sid, sigma);
            queue.push_back(sid);
          }
        } else {
          outside.emplace(sid, sigma);
        }
      }
      std::sort(sit->second.targets.begin(), sit->second.targets.end());
      sit->second.targets.erase(std::unique(sit->second.targets.begin(),
                                            sit->second.targets.end()),
                                sit->second.targets.end());
    }
  }

  for (auto& [id, m] : in_ball) {
    Ball::Patch p;
    p.rep = m;
    p.norm = m.total_length();
    p.canon = id;
    ball.index[id] = static_cast<int>(ball.patches.size());
    ball.patches.push_back(std::move(p));
  }
  ball.N_r = 0;
  auto add_cr = [&](const std::string& id, const MarkedGraph& m) {
    Ball::Patch p;
    p.rep = m;
    p.norm = m.total_length();
    p.canon = id;
    ball.N_r = std::max(ball.N_r, p.norm);
    ball.c_r.push_back(std::move(p));
  };
  for (auto& [id, m] : in_ball) add_cr(id, m);
  for (auto& [id, m] : outside) add_cr(id, m);
  for (auto& [id, node] : stars) ball.star_nodes.push_back(node);
  return ball;
}

}  // namespace briar
