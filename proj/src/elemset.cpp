#include "growthlab/elemset.hpp"

#include <algorithm>

#include "growthlab/errors.hpp"

namespace growthlab {

ElemSet::ElemSet(const GroupCtx& ctx, std::vector<ElemKey> keys) : ctx_(&ctx), keys_(std::move(keys)) {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

ElemSet ElemSet::from_elems(const GroupCtx& ctx, const std::vector<Elem>& elems) {
  std::vector<ElemKey> ks;
  ks.reserve(elems.size());
  for (const Elem& g : elems) ks.push_back(ctx.key(g));
  return ElemSet(ctx, std::move(ks));
}

bool ElemSet::contains(ElemKey k) const {
  return std::binary_search(keys_.begin(), keys_.end(), k);
}

bool ElemSet::is_symmetric_with_id() const {
  if (!contains(ctx_->key(ctx_->identity()))) return false;
  for (ElemKey k : keys_) {
    if (!contains(ctx_->key(ctx_->inverse(ctx_->unkey(k))))) return false;
  }
  return true;
}

ElemSet ElemSet::symmetrized() const {
  std::vector<ElemKey> ks = keys_;
  ks.push_back(ctx_->key(ctx_->identity()));
  for (ElemKey k : keys_) ks.push_back(ctx_->key(ctx_->inverse(ctx_->unkey(k))));
  return ElemSet(*ctx_, std::move(ks));
}

ElemSet ElemSet::set_union(const ElemSet& other) const {
  std::vector<ElemKey> ks = keys_;
  ks.insert(ks.end(), other.keys_.begin(), other.keys_.end());
  return ElemSet(*ctx_, std::move(ks));
}

ElemSet ElemSet::intersect_with(const std::function<bool(const Elem&)>& pred) const {
  std::vector<ElemKey> ks;
  for (ElemKey k : keys_) {
    if (pred(ctx_->unkey(k))) ks.push_back(k);
  }
  return ElemSet(*ctx_, std::move(ks));
}

VisitedSet::VisitedSet(const GroupCtx& ctx, std::size_t expected) {
  dense_ = ctx.key_bits() <= kMaxBitsetBits;
  if (dense_) {
    bits_.assign((std::size_t{1} << ctx.key_bits()) / 64 + 1, 0);
  } else if (expected > 0) {
    hash_.reserve(expected * 2);
  }
}

bool VisitedSet::insert(ElemKey k) {
  if (dense_) {
    std::uint64_t& w = bits_[k >> 6];
    const std::uint64_t m = std::uint64_t{1} << (k & 63);
    if (w & m) return false;
    w |= m;
    ++count_;
    return true;
  }
  bool fresh = hash_.insert(k).second;
  if (fresh) ++count_;
  return fresh;
}

bool VisitedSet::contains(ElemKey k) const {
  if (dense_) return (bits_[k >> 6] >> (k & 63)) & 1;
  return hash_.count(k) != 0;
}

std::vector<ElemKey> VisitedSet::sorted_keys() const {
  std::vector<ElemKey> out;
  out.reserve(count_);
  if (dense_) {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t bitsw = bits_[w];
      while (bitsw) {
        int b = std::countr_zero(bitsw);
        out.push_back((static_cast<ElemKey>(w) << 6) | static_cast<ElemKey>(b));
        bitsw &= bitsw - 1;
      }
    }
  } else {
    out.assign(hash_.begin(), hash_.end());
    std::sort(out.begin(), out.end());
  }
  return out;
}

u128 group_order(const GroupCtx& ctx) { return ctx.order(); }

ElemSet closure(const GroupCtx& ctx, const std::vector<Elem>& gens, std::uint64_t cap) {
  std::vector<Elem> step{ctx.identity()};
  for (const Elem& g : gens) {
    step.push_back(g);
    step.push_back(ctx.inverse(g));
  }
  VisitedSet seen(ctx, 1024);
  std::vector<ElemKey> frontier;
  const ElemKey idk = ctx.key(ctx.identity());
  seen.insert(idk);
  frontier.push_back(idk);
  while (!frontier.empty()) {
    std::vector<ElemKey> next;
    for (ElemKey fk : frontier) {
      Elem x = ctx.unkey(fk);
      for (const Elem& s : step) {
        ElemKey yk = ctx.key(ctx.mul(x, s));
        if (seen.insert(yk)) {
          next.push_back(yk);
          if (seen.size() > cap) {
            throw BudgetError("closure exceeded cap of " + std::to_string(cap) + " elements");
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return ElemSet(ctx, seen.sorted_keys());
}

ElemSet enumerate_group(const GroupCtx& ctx) {
  if (ctx.order() > u128{10000000}) {
    throw BudgetError("group order " + u128_to_string(ctx.order()) + " exceeds enumeration cap 10^7");
  }
  ElemSet all = closure(ctx, ctx.elementary_generators());
  if (u128{all.size()} != ctx.order()) {
    throw PreconditionError("enumeration size disagrees with the order formula");
  }
  return all;
}

ElemSet centralizer_set(const GroupCtx& ctx, const Elem& g, const ElemSet& ambient) {
  std::vector<ElemKey> out;
  for (ElemKey k : ambient.keys()) {
    Elem h = ctx.unkey(k);
    if (ctx.commutes(g, h)) out.push_back(k);
  }
  return ElemSet(ctx, std::move(out));
}

ElemKey torus_key(const GroupCtx& ctx, const Elem& g, const ElemSet& whole_group) {
  if (!ctx.is_regular_ss(g)) {
    throw PreconditionError("torus_key requires a regular semisimple element");
  }
  ElemSet cen = centralizer_set(ctx, g, whole_group);
  // Minimum key over regular semisimple members: these lie in exactly one
  // maximal torus, so the id is generator independent and collision free.
  for (ElemKey k : cen.keys()) {
    if (ctx.is_regular_ss(ctx.unkey(k))) return k;
  }
  throw PreconditionError("centralizer holds no regular semisimple member");
}

ElemSet normalizer_of_set(const GroupCtx& ctx, const ElemSet& pts, const ElemSet& whole_group) {
  std::vector<ElemKey> out;
  for (ElemKey hk : whole_group.keys()) {
    Elem h = ctx.unkey(hk);
    bool norm = true;
    for (ElemKey tk : pts.keys()) {
      Elem conj = ctx.conjugate(ctx.unkey(tk), h);
      if (!pts.contains(ctx.key(conj))) {
        norm = false;
        break;
      }
    }
    if (norm) out.push_back(hk);
  }
  return ElemSet(ctx, std::move(out));
}

FiniteIndexCheck finite_index_generation_check(
    const GroupCtx& ctx, const ElemSet& S,
    const std::function<bool(const Elem&)>& member, std::uint64_t d) {
  if (!S.is_symmetric_with_id()) {
    throw PreconditionError("S must be symmetric and contain the identity");
  }
  std::vector<Elem> gens;
  for (ElemKey k : S.keys()) gens.push_back(ctx.unkey(k));
  ElemSet gamma = closure(ctx, gens);

  std::vector<ElemKey> g0keys;
  for (ElemKey k : gamma.keys()) {
    if (member(ctx.unkey(k))) g0keys.push_back(k);
  }
  ElemSet gamma0(ctx, std::move(g0keys));

  // The member predicate must define a genuine subgroup of Γ.
  if (!gamma0.contains(ctx.key(ctx.identity()))) {
    throw PreconditionError("member predicate excludes the identity");
  }
  for (ElemKey k : gamma0.keys()) {
    if (!gamma0.contains(ctx.key(ctx.inverse(ctx.unkey(k))))) {
      throw PreconditionError("member predicate not closed under inverse");
    }
  }
  if (static_cast<std::uint64_t>(gamma0.size()) * gamma0.size() <= 100000000ULL) {
    for (ElemKey a : gamma0.keys()) {
      Elem ea = ctx.unkey(a);
      for (ElemKey b : gamma0.keys()) {
        if (!gamma0.contains(ctx.key(ctx.mul(ea, ctx.unkey(b))))) {
          throw PreconditionError("member predicate not closed under product");
        }
      }
    }
  }

  FiniteIndexCheck res;
  res.gamma_size = gamma.size();
  res.gamma0_size = gamma0.size();
  res.observed_index = gamma.size() / std::max<std::uint64_t>(1, gamma0.size());
  if (res.observed_index != d) {
    throw PreconditionError("subgroup index is " + std::to_string(res.observed_index) +
                            ", not " + std::to_string(d));
  }

  // Ball of radius 2d-1 in the given generators.
  std::vector<ElemKey> ball{ctx.key(ctx.identity())};
  {
    VisitedSet seen(ctx, S.size());
    seen.insert(ctx.key(ctx.identity()));
    std::vector<ElemKey> frontier = ball;
    for (std::uint64_t r = 0; r + 1 <= 2 * d - 1 && !frontier.empty(); ++r) {
      std::vector<ElemKey> next;
      for (ElemKey fk : frontier) {
        Elem x = ctx.unkey(fk);
        for (const Elem& s : gens) {
          ElemKey yk = ctx.key(ctx.mul(x, s));
          if (seen.insert(yk)) next.push_back(yk);
        }
      }
      ball.insert(ball.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
  }

  std::vector<Elem> inter_gens;
  for (ElemKey k : ball) {
    if (gamma0.contains(k)) inter_gens.push_back(ctx.unkey(k));
  }
  res.intersection_size = inter_gens.size();
  if (inter_gens.empty()) {
    res.holds = gamma0.size() == 1;
    return res;
  }
  ElemSet generated = closure(ctx, inter_gens);
  res.holds = generated.keys() == gamma0.keys();
  return res;
}

}  // namespace growthlab
