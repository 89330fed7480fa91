#include "growthlab/approx.hpp"

#include <algorithm>
#include <cmath>

#include "growthlab/errors.hpp"

namespace growthlab {

namespace {

std::vector<Elem> decode_all(const ElemSet& A) {
  std::vector<Elem> out;
  out.reserve(A.size());
  for (ElemKey k : A.keys()) out.push_back(A.ctx().unkey(k));
  return out;
}

// Ball sizes |S^r| for r = 0..r_max (or until stable); S symmetric with id
// makes S^r the radius-r ball. Returns the per-radius cumulative sizes and
// the final key set.
std::pair<std::vector<std::uint64_t>, std::vector<ElemKey>> ball_keys(
    const ElemSet& S, int r_max) {
  const GroupCtx& ctx = S.ctx();
  std::vector<Elem> gens = decode_all(S);
  VisitedSet seen(ctx, S.size());
  const ElemKey idk = ctx.key(ctx.identity());
  seen.insert(idk);
  std::vector<ElemKey> frontier{idk};
  std::vector<std::uint64_t> sizes{1};
  for (int r = 1; r <= r_max && !frontier.empty(); ++r) {
    std::vector<ElemKey> next;
    for (ElemKey fk : frontier) {
      Elem x = ctx.unkey(fk);
      for (const Elem& s : gens) {
        ElemKey yk = ctx.key(ctx.mul(x, s));
        if (seen.insert(yk)) next.push_back(yk);
      }
    }
    frontier = std::move(next);
    sizes.push_back(seen.size());
  }
  return {sizes, seen.sorted_keys()};
}

}  // namespace

ElemSet product_set(const ElemSet& A, const ElemSet& B) {
  const GroupCtx& ctx = A.ctx();
  const std::uint64_t pairs = static_cast<std::uint64_t>(A.size()) * B.size();
  if (pairs > kPairBudget) {
    throw BudgetError("product set needs " + std::to_string(pairs) +
                      " pairs, over the 10^9 budget; use a sampling mode");
  }
  std::vector<Elem> bs = decode_all(B);
  VisitedSet seen(ctx, std::min<std::uint64_t>(pairs, 1 << 22));
  for (ElemKey ak : A.keys()) {
    Elem a = ctx.unkey(ak);
    for (const Elem& b : bs) {
      seen.insert(ctx.key(ctx.mul(a, b)));
    }
  }
  return ElemSet(ctx, seen.sorted_keys());
}

ElemSet power_set(const ElemSet& A, int m) {
  if (m < 1) throw PreconditionError("power_set requires m >= 1");
  if (m == 1) return A;
  // Symmetric with id makes A^m the radius-m ball, one BFS instead of m-1
  // product sets.
  if (A.is_symmetric_with_id()) {
    auto [sizes, keys] = ball_keys(A, m);
    return ElemSet(A.ctx(), std::move(keys));
  }
  ElemSet acc = A;
  for (int i = 1; i < m; ++i) acc = product_set(acc, A);
  return acc;
}

TriplingReport tripling(const ElemSet& A) {
  if (A.empty()) throw PreconditionError("tripling of an empty set");
  TriplingReport r;
  r.size1 = A.size();
  r.size3 = power_set(A, 3).size();
  r.ratio = static_cast<double>(r.size3) / static_cast<double>(r.size1);
  r.exponent = r.size1 > 1 ? std::log(static_cast<double>(r.size3)) /
                                 std::log(static_cast<double>(r.size1))
                           : 0.0;
  return r;
}

ApproxCertificate approx_certify(const ElemSet& A) {
  const GroupCtx& ctx = A.ctx();
  if (!A.is_symmetric_with_id()) {
    throw PreconditionError("approx_certify requires a symmetric set containing id");
  }
  ElemSet AA = product_set(A, A);
  std::vector<Elem> as = decode_all(A);

  VisitedSet covered(ctx, AA.size());
  ApproxCertificate cert;
  auto add_center = [&](const Elem& x) {
    cert.cover.push_back(ctx.key(x));
    for (const Elem& a : as) covered.insert(ctx.key(ctx.mul(x, a)));
  };
  add_center(ctx.identity());
  for (ElemKey yk : AA.keys()) {
    if (covered.contains(yk)) continue;
    Elem y = ctx.unkey(yk);
    add_center(y);
    Elem yi = ctx.inverse(y);
    if (!(yi == y)) add_center(yi);
  }
  std::sort(cert.cover.begin(), cert.cover.end());
  cert.k_certified = cert.cover.size();
  if (!verify_cover(A, cert)) {
    throw PreconditionError("internal: greedy cover failed the soundness scan");
  }
  return cert;
}

bool verify_cover(const ElemSet& A, const ApproxCertificate& cert) {
  const GroupCtx& ctx = A.ctx();
  ElemSet AA = product_set(A, A);
  // X symmetric?
  ElemSet X(ctx, cert.cover);
  if (!X.size()) return false;
  for (ElemKey k : X.keys()) {
    if (!X.contains(ctx.key(ctx.inverse(ctx.unkey(k))))) return false;
  }
  // A*A subset of X*A, checked by membership scan y in x*A <=> x^-1 y in A.
  std::vector<Elem> xinv;
  for (ElemKey k : X.keys()) xinv.push_back(ctx.inverse(ctx.unkey(k)));
  for (ElemKey yk : AA.keys()) {
    Elem y = ctx.unkey(yk);
    bool hit = false;
    for (const Elem& xi : xinv) {
      if (A.contains(ctx.key(ctx.mul(xi, y)))) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

ControlCertificate control_certify(const ElemSet& A, const ElemSet& B) {
  const GroupCtx& ctx = A.ctx();
  ControlCertificate res;
  if (A.empty() || B.empty()) return res;

  const ElemKey idk = ctx.key(ctx.identity());
  std::vector<Elem> bs;
  for (ElemKey k : B.keys()) bs.push_back(ctx.unkey(k));
  Elem b0 = ctx.unkey(B.keys().front());
  Elem b0i = ctx.inverse(b0);

  std::vector<ElemKey> X;
  // a is left-covered if a in x*B for some x in X, right-covered if a in B*x.
  auto left_covered = [&](const Elem& a, const std::vector<Elem>& xs) {
    for (const Elem& x : xs) {
      if (B.contains(ctx.key(ctx.mul(ctx.inverse(x), a)))) return true;
    }
    return false;
  };
  auto right_covered = [&](const Elem& a, const std::vector<Elem>& xs) {
    for (const Elem& x : xs) {
      if (B.contains(ctx.key(ctx.mul(a, ctx.inverse(x))))) return true;
    }
    return false;
  };

  std::vector<Elem> xs;
  if (B.contains(idk)) {
    X.push_back(idk);
    xs.push_back(ctx.identity());
  }
  for (ElemKey ak : A.keys()) {
    Elem a = ctx.unkey(ak);
    if (!left_covered(a, xs)) {
      Elem x = ctx.mul(a, b0i);  // a = x b0
      xs.push_back(x);
      X.push_back(ctx.key(x));
    }
  }
  for (ElemKey ak : A.keys()) {
    Elem a = ctx.unkey(ak);
    if (!right_covered(a, xs)) {
      Elem x = ctx.mul(b0i, a);  // a = b0 x
      xs.push_back(x);
      X.push_back(ctx.key(x));
    }
  }
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());

  // Post-hoc scan of A subset (X*B) ∩ (B*X).
  std::vector<Elem> xall;
  for (ElemKey k : X) xall.push_back(ctx.unkey(k));
  for (ElemKey ak : A.keys()) {
    Elem a = ctx.unkey(ak);
    if (!left_covered(a, xall) || !right_covered(a, xall)) return res;
  }
  res.ok = true;
  res.X = std::move(X);
  std::uint64_t size_bound = (B.size() + A.size() - 1) / A.size();
  res.K = std::max<std::uint64_t>(res.X.size(), size_bound);
  return res;
}

GrowthReport growth_iterate(const ElemSet& S, double delta) {
  const GroupCtx& ctx = S.ctx();
  if (!S.is_symmetric_with_id()) {
    throw PreconditionError("growth_iterate requires a symmetric set containing id");
  }
  const double target = std::pow(static_cast<double>(ctx.order_u64()), 1.0 - delta);

  GrowthReport rep;
  // One BFS to closure supplies every |S^r|; read off r = 3^i.
  auto [sizes, keys] = ball_keys(S, 1 << 30);
  (void)keys;
  auto size_at = [&](std::uint64_t r) -> std::uint64_t {
    if (r >= sizes.size()) return sizes.back();
    return sizes[static_cast<std::size_t>(r)];
  };
  std::uint64_t prev = 0;
  for (std::uint64_t r = 1;; r *= 3) {
    std::uint64_t sz = size_at(r);
    rep.radii.push_back(static_cast<int>(rep.sizes.size()));
    rep.sizes.push_back(sz);
    if (rep.sizes.size() >= 2) {
      rep.tripling_ratios.push_back(static_cast<double>(sz) / static_cast<double>(prev));
    }
    if (static_cast<double>(sz) >= target) {
      rep.verdict = GrowthVerdict::reached_near_full;
      return rep;
    }
    if (rep.sizes.size() >= 2 && sz == prev) {
      rep.verdict = GrowthVerdict::stalled_proper_subgroup;
      return rep;
    }
    prev = sz;
    if (r > (std::uint64_t{1} << 40)) {
      rep.partial = true;
      rep.verdict = GrowthVerdict::growing;
      return rep;
    }
  }
}

GowersCheck gowers_check(const GroupCtx& ctx, const ElemSet& A, std::uint64_t d_min) {
  if (ctx.order() > u128{10000000}) {
    throw BudgetError("gowers check computes A^3 exactly; needs order <= 10^7");
  }
  GowersCheck res;
  res.a_size = A.size();
  res.group_order = ctx.order_u64();
  // |A| > |G| / d_min^(1/3)  <=>  |A|^3 * d_min > |G|^3, exactly in integers.
  u128 a3 = u128{res.a_size} * res.a_size * res.a_size;
  u128 g = u128{res.group_order};
  res.precondition_met = a3 * d_min > g * g * g;
  ElemSet a3set = power_set(A, 3);
  res.a3_equals_group = (u128{a3set.size()} == ctx.order());
  return res;
}

ElemSet random_symmetric_set(const GroupCtx& ctx, std::uint64_t target, Rng& rng) {
  std::vector<ElemKey> ks{ctx.key(ctx.identity())};
  ElemSet cur(ctx, ks);
  while (cur.size() < target) {
    Elem g = ctx.random_element(rng);
    std::vector<ElemKey> add = cur.keys();
    add.push_back(ctx.key(g));
    add.push_back(ctx.key(ctx.inverse(g)));
    cur = ElemSet(ctx, std::move(add));
  }
  return cur;
}

}  // namespace growthlab
