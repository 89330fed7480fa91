#ifndef GROWTHLAB_CAYLEY_HPP
#define GROWTHLAB_CAYLEY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "growthlab/elemset.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

/// |S^r| for r = 0..r_max via frontier BFS (S used exactly as given),
/// truncated at the first radius where the ball stabilizes.
std::vector<std::uint64_t> ball_profile(const GroupCtx& ctx, const std::vector<Elem>& S,
                                        int r_max);

struct DiameterResult {
  std::uint64_t diameter = 0;
  std::vector<std::uint64_t> profile;  // |S̄^r|, r = 0..diameter
};

/// Least r with S̄^r = G, where S̄ = S ∪ S^-1 ∪ {id} (the word convention
/// with exponents in {-1,0,1}). Raises PreconditionError naming the closure
/// size if S generates a proper subgroup. Order must be <= 10^7.
DiameterResult diameter(const GroupCtx& ctx, const std::vector<Elem>& S);

/// Length of the shortest nonempty reduced word in a, b evaluating to the
/// identity, by non-backtracking BFS with collision detection: two distinct
/// reduced words of lengths r1, r2 reaching one element certify a relation
/// of length r1 + r2, and the minimum over collisions at BFS depth r is
/// exact once 2r + 2 exceeds the best candidate. nullopt when the radius
/// budget is exhausted without a collision.
std::optional<std::uint64_t> girth(const GroupCtx& ctx, const Elem& a, const Elem& b,
                                   int radius_budget);

/// Default girth radius budget ceil(log|G| / (2 log 3)) + 4.
int default_girth_budget(const GroupCtx& ctx);

struct RandomPairTrial {
  std::uint64_t trial = 0;
  bool generates = false;
  std::uint64_t closure_size = 0;
  std::optional<std::uint64_t> diam;  // absent when not generating or above the diameter cap
  std::optional<std::uint64_t> girth_len;
};

struct RandomGenStats {
  std::vector<RandomPairTrial> trials;
  bool diameters_computed = false;  // order <= 10^6
  double generating_fraction = 0.0;
  std::uint64_t diam_median = 0;
  std::uint64_t diam_max = 0;
  std::uint64_t girth_median = 0;  // over trials where found
};

/// Diameter/girth statistics over `trials` seeded random generator pairs.
/// Exact per-trial diameters require order <= 10^6 and are skipped beyond;
/// generation checks and girths run up to the enumeration cap.
RandomGenStats random_generator_stats(const GroupCtx& ctx, std::uint64_t trials,
                                      std::uint64_t seed);

struct ScalingFit {
  double c1 = 0.0;  // prefactor
  double c2 = 0.0;  // exponent in diam <= C1 * (log|G|)^C2
};

/// Least-squares fit of log(diam) against log log |G|. Requires >= 4 reports
/// over distinct orders with nondegenerate spread.
ScalingFit scaling_fit(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& order_diam);

}  // namespace growthlab

#endif
