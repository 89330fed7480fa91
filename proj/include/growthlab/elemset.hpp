#ifndef GROWTHLAB_ELEMSET_HPP
#define GROWTHLAB_ELEMSET_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include "growthlab/group.hpp"

namespace growthlab {

/// Deduplicated set of ElemKeys over one GroupCtx. Keys are held sorted
/// ascending, so iteration order and every derived output are deterministic.
class ElemSet {
 public:
  explicit ElemSet(const GroupCtx& ctx) : ctx_(&ctx) {}
  ElemSet(const GroupCtx& ctx, std::vector<ElemKey> keys);

  static ElemSet from_elems(const GroupCtx& ctx, const std::vector<Elem>& elems);

  const GroupCtx& ctx() const { return *ctx_; }
  const std::vector<ElemKey>& keys() const { return keys_; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(ElemKey k) const;
  bool contains(const Elem& g) const { return contains(ctx_->key(g)); }

  Elem elem_at(std::size_t i) const { return ctx_->unkey(keys_[i]); }

  /// Closed under inverse and contains the identity.
  bool is_symmetric_with_id() const;

  /// this ∪ inverses ∪ {id}.
  ElemSet symmetrized() const;
  ElemSet set_union(const ElemSet& other) const;
  ElemSet intersect_with(const std::function<bool(const Elem&)>& pred) const;

 private:
  const GroupCtx* ctx_;
  std::vector<ElemKey> keys_;
};

/// Membership structure for product-set and BFS inner loops. Dense bitset
/// indexed by the packed key when the key space fits in 32 MiB, hash set
/// fallback otherwise.
class VisitedSet {
 public:
  explicit VisitedSet(const GroupCtx& ctx, std::size_t expected = 0);

  /// Returns true if the key was newly inserted.
  bool insert(ElemKey k);
  bool contains(ElemKey k) const;
  std::size_t size() const { return count_; }

  std::vector<ElemKey> sorted_keys() const;

  static constexpr int kMaxBitsetBits = 28;

 private:
  bool dense_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<ElemKey> hash_;
};

/// Exact |SL_n(F_q)| by the product formula, in 128-bit arithmetic; raises
/// PreconditionError on overflow.
u128 group_order(const GroupCtx& ctx);

/// All elements, by closure from the elementary transvection generators.
/// Requires order <= 10^7.
ElemSet enumerate_group(const GroupCtx& ctx);

/// Subgroup/subset closure of gens ∪ gens^-1 ∪ {id}, capped at `cap`
/// elements (BudgetError beyond).
ElemSet closure(const GroupCtx& ctx, const std::vector<Elem>& gens,
                std::uint64_t cap = 10000000);

/// {h in ambient : hg = gh}.
ElemSet centralizer_set(const GroupCtx& ctx, const Elem& g, const ElemSet& ambient);

/// Canonical identifier of the unique maximal torus containing a regular
/// semisimple g: the minimum key over the regular semisimple members of its
/// centralizer in the whole group. Equal for g1, g2 iff they commute.
ElemKey torus_key(const GroupCtx& ctx, const Elem& g, const ElemSet& whole_group);

/// {h in whole_group : h T h^-1 = T} for a torus given as a point set.
ElemSet normalizer_of_set(const GroupCtx& ctx, const ElemSet& pts, const ElemSet& whole_group);

struct FiniteIndexCheck {
  bool holds = false;            // <S^{2d-1} ∩ Γ0> == Γ0
  std::uint64_t gamma_size = 0;  // |Γ|
  std::uint64_t gamma0_size = 0; // |Γ0|
  std::uint64_t observed_index = 0;
  std::uint64_t intersection_size = 0;  // |S^{2d-1} ∩ Γ0|
};

/// Property-test harness for bounded-length generation of finite-index
/// subgroups: computes whether S^{2d-1} ∩ Γ0 generates Γ0, where Γ0 is the
/// member-defined subgroup of Γ = <S> of index d. S must be symmetric with
/// id; `member` must define a genuine subgroup (checked, diagnostic raised).
FiniteIndexCheck finite_index_generation_check(
    const GroupCtx& ctx, const ElemSet& S,
    const std::function<bool(const Elem&)>& member, std::uint64_t d);

}  // namespace growthlab

#endif
