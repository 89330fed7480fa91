#include "growthlab/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "growthlab/errors.hpp"
#include "growthlab/parallel.hpp"

namespace growthlab {

std::vector<std::uint64_t> ball_profile(const GroupCtx& ctx, const std::vector<Elem>& S,
                                        int r_max) {
  VisitedSet seen(ctx, 1024);
  const ElemKey idk = ctx.key(ctx.identity());
  seen.insert(idk);
  std::vector<ElemKey> frontier{idk};
  std::vector<std::uint64_t> sizes{1};
  for (int r = 1; r <= r_max && !frontier.empty(); ++r) {
    std::vector<ElemKey> next;
    for (ElemKey fk : frontier) {
      Elem x = ctx.unkey(fk);
      for (const Elem& s : S) {
        ElemKey yk = ctx.key(ctx.mul(x, s));
        if (seen.insert(yk)) next.push_back(yk);
      }
    }
    if (next.empty()) break;  // ball stabilized
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return sizes;
}

DiameterResult diameter(const GroupCtx& ctx, const std::vector<Elem>& S) {
  if (ctx.order() > u128{10000000}) {
    throw BudgetError("diameter needs group order <= 10^7");
  }
  const std::uint64_t order = ctx.order_u64();
  // S̄ = S ∪ S^-1 ∪ {id}: the word convention with exponents in {-1,0,1}.
  std::vector<Elem> sbar{ctx.identity()};
  auto push_unique = [&](const Elem& g) {
    if (std::find(sbar.begin(), sbar.end(), g) == sbar.end()) sbar.push_back(g);
  };
  for (const Elem& s : S) {
    push_unique(s);
    push_unique(ctx.inverse(s));
  }

  DiameterResult res;
  VisitedSet seen(ctx, order);
  const ElemKey idk = ctx.key(ctx.identity());
  seen.insert(idk);
  std::vector<ElemKey> frontier{idk};
  res.profile.push_back(1);
  std::uint64_t r = 0;
  while (!frontier.empty() && seen.size() < order) {
    std::vector<ElemKey> next;
    for (ElemKey fk : frontier) {
      Elem x = ctx.unkey(fk);
      for (const Elem& s : sbar) {
        ElemKey yk = ctx.key(ctx.mul(x, s));
        if (seen.insert(yk)) next.push_back(yk);
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
    ++r;
    res.profile.push_back(seen.size());
  }
  if (seen.size() != order) {
    throw PreconditionError("generators span a proper subgroup of size " +
                            std::to_string(seen.size()) + " < " + std::to_string(order));
  }
  res.diameter = r;
  return res;
}

int default_girth_budget(const GroupCtx& ctx) {
  const double lg = std::log(static_cast<double>(ctx.order_u64()));
  return static_cast<int>(std::ceil(lg / (2.0 * std::log(3.0)))) + 4;
}

std::optional<std::uint64_t> girth(const GroupCtx& ctx, const Elem& a, const Elem& b,
                                   int radius_budget) {
  // Non-backtracking BFS over reduced words in the four letters a, a^-1, b,
  // b^-1. First-visit depths are exact word metrics; an edge leading to an
  // already-visited element that is not the reverse of the tree-parent edge
  // certifies a relation of length dist(u) + dist(v) + 1. The minimum over
  // such collisions is the girth once the level exceeds half of it.
  struct Slot {
    Elem step;
    int inverse_slot;
  };
  const std::array<Slot, 4> slots{{{a, 1}, {ctx.inverse(a), 0}, {b, 3}, {ctx.inverse(b), 2}}};

  struct NodeInfo {
    std::uint32_t dist;
    std::int8_t parent_slot;   // -1 for the root
    ElemKey parent;
  };
  std::unordered_map<ElemKey, NodeInfo> info;
  const ElemKey idk = ctx.key(ctx.identity());
  info[idk] = {0, -1, 0};
  std::vector<ElemKey> frontier{idk};

  std::uint64_t best = ~std::uint64_t{0};
  for (std::uint32_t level = 0; static_cast<int>(level) < radius_budget; ++level) {
    if (best <= 2 * static_cast<std::uint64_t>(level) + 2) break;
    std::vector<ElemKey> next;
    for (ElemKey uk : frontier) {
      const NodeInfo u = info[uk];
      Elem ue = ctx.unkey(uk);
      for (int si = 0; si < 4; ++si) {
        ElemKey vk = ctx.key(ctx.mul(ue, slots[static_cast<std::size_t>(si)].step));
        // Skip re-traversing the tree edge to the parent (formal-letter
        // inverse of the parent slot, landing on the parent element).
        if (u.parent_slot >= 0 &&
            si == slots[static_cast<std::size_t>(static_cast<unsigned char>(u.parent_slot))].inverse_slot &&
            vk == u.parent) {
          continue;
        }
        auto it = info.find(vk);
        if (it == info.end()) {
          info[vk] = {u.dist + 1, static_cast<std::int8_t>(si), uk};
          next.push_back(vk);
        } else {
          best = std::min(best, static_cast<std::uint64_t>(u.dist) + it->second.dist + 1);
        }
      }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  if (best == ~std::uint64_t{0}) return std::nullopt;
  return best;
}

RandomGenStats random_generator_stats(const GroupCtx& ctx, std::uint64_t trials,
                                      std::uint64_t seed) {
  if (trials > 0 && ctx.order() > u128{10000000}) {
    throw BudgetError("random generator statistics need order <= 10^7");
  }
  RandomGenStats stats;
  stats.trials.resize(trials);
  stats.diameters_computed = ctx.order() <= u128{1000000};
  const int budget = trials ? default_girth_budget(ctx) : 0;
  parallel_for_index(trials, [&](std::size_t t) {
    Rng rng(seed, "random-pair-" + std::to_string(t));
    Elem a = ctx.random_element(rng);
    Elem b = ctx.random_element(rng);
    RandomPairTrial& row = stats.trials[t];
    row.trial = t;
    ElemSet cl = closure(ctx, {a, b});
    row.closure_size = cl.size();
    row.generates = (u128{cl.size()} == ctx.order());
    if (row.generates && stats.diameters_computed) {
      row.diam = diameter(ctx, {a, b}).diameter;
    }
    row.girth_len = girth(ctx, a, b, budget);
  });

  if (trials == 0) return stats;
  std::uint64_t gen_count = 0;
  std::vector<std::uint64_t> diams, girths;
  for (const auto& row : stats.trials) {
    if (row.generates) ++gen_count;
    if (row.diam) diams.push_back(*row.diam);
    if (row.girth_len) girths.push_back(*row.girth_len);
  }
  stats.generating_fraction = static_cast<double>(gen_count) / static_cast<double>(trials);
  auto median_of = [](std::vector<std::uint64_t> v) -> std::uint64_t {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  stats.diam_median = median_of(diams);
  stats.diam_max = diams.empty() ? 0 : *std::max_element(diams.begin(), diams.end());
  stats.girth_median = median_of(girths);
  return stats;
}

ScalingFit scaling_fit(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& order_diam) {
  std::vector<double> xs, ys;
  std::uint64_t omin = ~std::uint64_t{0}, omax = 0;
  for (auto [order, diam] : order_diam) {
    omin = std::min(omin, order);
    omax = std::max(omax, order);
    xs.push_back(std::log(std::log(static_cast<double>(order))));
    ys.push_back(std::log(static_cast<double>(diam)));
  }
  if (order_diam.size() < 4) throw PreconditionError("scaling fit needs at least 4 reports");
  if (omin == omax) throw PreconditionError("scaling fit needs distinct group orders");

  double xb = 0, yb = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xb += xs[i];
    yb += ys[i];
  }
  xb /= static_cast<double>(xs.size());
  yb /= static_cast<double>(ys.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - xb) * (ys[i] - yb);
    den += (xs[i] - xb) * (xs[i] - xb);
  }
  if (den == 0) throw PreconditionError("scaling fit needs spread in log log |G|");
  ScalingFit fit;
  fit.c2 = num / den;
  fit.c1 = std::exp(yb - fit.c2 * xb);
  return fit;
}

}  // namespace growthlab
