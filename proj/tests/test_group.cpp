#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "growthlab/elemset.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/group.hpp"

using namespace growthlab;

namespace {

GroupCtx sl2(std::uint64_t p) { return GroupCtx::make(FieldCtx::make(p, 1), 2); }

Elem mk2(const GroupCtx& ctx, long long a, long long b, long long c, long long d) {
  const FieldCtx& F = ctx.field();
  std::array<std::uint32_t, 9> e{};
  e[0] = static_cast<std::uint32_t>(F.from_int(a));
  e[1] = static_cast<std::uint32_t>(F.from_int(b));
  e[2] = static_cast<std::uint32_t>(F.from_int(c));
  e[3] = static_cast<std::uint32_t>(F.from_int(d));
  return ctx.elem_from_entries(e);
}

}  // namespace

TEST_CASE("order formula against exhaustive enumeration") {
  // The enumeration is the independent closure-based count; the formula is
  // evaluated inside GroupCtx.
  const std::map<std::pair<int, std::uint64_t>, std::uint64_t> expected = {
      {{2, 2}, 6}, {{2, 3}, 24}, {{2, 5}, 120}, {{2, 7}, 336}, {{3, 2}, 168}, {{3, 3}, 5616}};
  for (const auto& [nq, size] : expected) {
    GroupCtx ctx = GroupCtx::make(FieldCtx::make(nq.second, 1), nq.first);
    CHECK(ctx.order() == u128{size});
    CHECK(enumerate_group(ctx).size() == size);
  }
}

TEST_CASE("order formula over extension fields") {
  // Exercises the theta-basis transvection generators of SL_n(F_{p^2}).
  const std::map<std::pair<int, std::uint64_t>, std::uint64_t> expected = {
      {{2, 2}, 60}, {{2, 3}, 720}, {{2, 5}, 15600}, {{2, 7}, 117600}, {{3, 2}, 60480}};
  for (const auto& [np, size] : expected) {
    GroupCtx ctx = GroupCtx::make(FieldCtx::make(np.second, 2), np.first);
    CHECK(ctx.order() == u128{size});
    CHECK(enumerate_group(ctx).size() == size);
  }
}

TEST_CASE("centralizer size dichotomy holds over F_9 as well") {
  GroupCtx ctx = GroupCtx::make(FieldCtx::make(3, 2), 2);
  ElemSet all = enumerate_group(ctx);
  for (ElemKey k : all.keys()) {
    Elem g = ctx.unkey(k);
    if (!ctx.is_regular_ss(g)) continue;
    std::uint64_t c = centralizer_set(ctx, g, all).size();
    CHECK((c == 8 || c == 10));  // q - 1 or q + 1 at q = 9
  }
}

TEST_CASE("group law examples") {
  GroupCtx ctx = sl2(5);
  Elem a = mk2(ctx, 1, 1, 0, 1);
  Elem b = mk2(ctx, 1, 0, 1, 1);
  CHECK(ctx.mul(a, b) == mk2(ctx, 2, 1, 1, 1));
  CHECK(ctx.mul(ctx.identity(), b) == b);

  GroupCtx big = sl2(101);
  Rng rng(42, "group-law");
  for (int i = 0; i < 1000; ++i) {
    Elem g = big.random_element(rng);
    CHECK(big.det(g) == 1);
    CHECK(big.is_identity(big.mul(g, big.inverse(g))));
  }

  GroupCtx sl3 = GroupCtx::make(FieldCtx::make(7, 1), 3);
  for (int i = 0; i < 1000; ++i) {
    Elem g = sl3.random_element(rng);
    CHECK(sl3.det(g) == 1);
    CHECK(sl3.is_identity(sl3.mul(g, sl3.inverse(g))));
    CHECK(sl3.is_identity(sl3.mul(sl3.inverse(g), g)));
  }
}

TEST_CASE("key round-trip is exact on all of SL_2(F_7)") {
  GroupCtx ctx = sl2(7);
  ElemSet all = enumerate_group(ctx);
  for (ElemKey k : all.keys()) {
    CHECK(ctx.key(ctx.unkey(k)) == k);
    CHECK(ctx.det(ctx.unkey(k)) == 1);
  }
}

TEST_CASE("characteristic polynomial") {
  GroupCtx ctx = sl2(5);
  auto cid = ctx.char_poly(ctx.identity());
  // x^2 - 2x + 1
  CHECK(cid[2] == 1);
  CHECK(cid[1] == ctx.field().from_int(-2));
  CHECK(cid[0] == 1);
  Elem d23 = mk2(ctx, 2, 0, 0, 3);
  auto cp = ctx.char_poly(d23);
  CHECK(cp[1] == 0);  // trace 5 = 0
  CHECK(cp[0] == 1);

  GroupCtx sl3 = GroupCtx::make(FieldCtx::make(7, 1), 3);
  Rng rng(1, "charpoly");
  for (int i = 0; i < 1000; ++i) {
    Elem g = sl3.random_element(rng);
    auto c = sl3.char_poly(g);
    CHECK(c[3] == 1);
    CHECK(c[0] == sl3.field().from_int(-1));  // (-1)^n det
  }
}

TEST_CASE("regular semisimple detection") {
  GroupCtx ctx = sl2(5);
  CHECK_FALSE(ctx.is_regular_ss(mk2(ctx, 1, 1, 0, 1)));  // unipotent
  CHECK(ctx.is_regular_ss(mk2(ctx, 2, 0, 0, 3)));
  // The gcd test agrees with the distinct-eigenvalue discriminant test on
  // every element of SL_2(F_5).
  ElemSet all = enumerate_group(ctx);
  const FieldCtx& F = ctx.field();
  std::uint64_t count = 0, oracle_count = 0;
  for (ElemKey k : all.keys()) {
    Elem g = ctx.unkey(k);
    felem t = ctx.trace(g);
    bool disc_nonzero = F.sub(F.mul(t, t), F.from_int(4)) != 0;
    if (disc_nonzero) ++oracle_count;
    if (ctx.is_regular_ss(g)) ++count;
    CHECK(ctx.is_regular_ss(g) == disc_nonzero);
  }
  CHECK(count == oracle_count);
}

TEST_CASE("regular semisimple requires q > n") {
  GroupCtx tiny = sl2(2);
  CHECK_THROWS_AS(tiny.is_regular_ss(tiny.identity()), PreconditionError);
}

TEST_CASE("centralizer sets") {
  GroupCtx ctx = sl2(5);
  ElemSet all = enumerate_group(ctx);
  CHECK(centralizer_set(ctx, ctx.identity(), all).size() == all.size());
  Elem d23 = mk2(ctx, 2, 0, 0, 3);
  ElemSet cen = centralizer_set(ctx, d23, all);
  CHECK(cen.size() == 4);  // split: q - 1
  for (ElemKey k : cen.keys()) {
    Elem h = ctx.unkey(k);
    CHECK((h.e[1] == 0 && h.e[2] == 0));  // commutant of distinct diag is diag
  }
  // An element with irreducible characteristic polynomial: x^2 - x + 1 has
  // discriminant -3 = 2, a non-residue mod 5.
  Elem ns = mk2(ctx, 0, 1, -1, 1);
  CHECK(centralizer_set(ctx, ns, all).size() == 6);  // nonsplit: q + 1
}

TEST_CASE("centralizer dichotomy with split iff square discriminant") {
  for (std::uint64_t p : {5, 7, 11}) {
    GroupCtx ctx = sl2(p);
    ElemSet all = enumerate_group(ctx);
    const FieldCtx& F = ctx.field();
    for (ElemKey k : all.keys()) {
      Elem g = ctx.unkey(k);
      if (!ctx.is_regular_ss(g)) continue;
      std::uint64_t c = centralizer_set(ctx, g, all).size();
      felem t = ctx.trace(g);
      felem disc = F.sub(F.mul(t, t), F.from_int(4));
      bool split = F.is_square(disc) == FieldCtx::Square::yes;
      CHECK(c == (split ? p - 1 : p + 1));
    }
  }
}

TEST_CASE("torus keys partition the regular semisimple elements") {
  // Exhaustive census oracle: group regular semisimple elements by their
  // full centralizer point set and compare the class count with the number
  // of distinct torus keys. At p = 3 split tori have only central rational
  // points, so exactly the 3 nonsplit tori appear (not p^2, which counts all
  // maximal F_p-tori and matches only from p = 5 on).
  const std::map<std::uint64_t, std::uint64_t> expected = {{3, 3}, {5, 25}, {7, 49}};
  for (const auto& [p, want] : expected) {
    GroupCtx ctx = sl2(p);
    ElemSet all = enumerate_group(ctx);
    std::set<ElemKey> ids;
    std::set<std::vector<ElemKey>> oracle_classes;
    for (ElemKey k : all.keys()) {
      Elem g = ctx.unkey(k);
      if (!ctx.is_regular_ss(g)) continue;
      ids.insert(torus_key(ctx, g, all));
      oracle_classes.insert(centralizer_set(ctx, g, all).keys());
    }
    CHECK(ids.size() == want);
    CHECK(oracle_classes.size() == want);
  }
}

TEST_CASE("torus key properties") {
  GroupCtx ctx = sl2(5);
  ElemSet all = enumerate_group(ctx);
  Elem d23 = mk2(ctx, 2, 0, 0, 3);
  CHECK(torus_key(ctx, d23, all) == torus_key(ctx, ctx.inverse(d23), all));
  CHECK_THROWS_AS(torus_key(ctx, mk2(ctx, 1, 1, 0, 1), all), PreconditionError);

  // torus_key(g) == torus_key(g^a) iff a normalizes the torus, by exhaustion
  // in SL_2(F_3).
  GroupCtx c3 = sl2(3);
  ElemSet all3 = enumerate_group(c3);
  for (ElemKey gk : all3.keys()) {
    Elem g = c3.unkey(gk);
    if (!c3.is_regular_ss(g)) continue;
    ElemSet T = centralizer_set(c3, g, all3);
    ElemKey tid = torus_key(c3, g, all3);
    for (ElemKey ak : all3.keys()) {
      Elem a = c3.unkey(ak);
      bool normalizes = true;
      for (ElemKey tk : T.keys()) {
        if (!T.contains(c3.key(c3.conjugate(c3.unkey(tk), a)))) {
          normalizes = false;
          break;
        }
      }
      CHECK((torus_key(c3, c3.conjugate(g, a), all3) == tid) == normalizes);
    }
  }
}

TEST_CASE("Weyl bound |N(T)|/|T| = 2 in SL_2") {
  for (std::uint64_t p : {3, 5, 7}) {
    GroupCtx ctx = sl2(p);
    ElemSet all = enumerate_group(ctx);
    std::set<ElemKey> seen;
    for (ElemKey k : all.keys()) {
      Elem g = ctx.unkey(k);
      if (!ctx.is_regular_ss(g)) continue;
      ElemKey tid = torus_key(ctx, g, all);
      if (!seen.insert(tid).second) continue;
      ElemSet T = centralizer_set(ctx, g, all);
      ElemSet N = normalizer_of_set(ctx, T, all);
      CHECK(N.size() == 2 * T.size());
    }
  }
}

TEST_CASE("enumerate_group closure is symmetric with id") {
  GroupCtx ctx = sl2(7);
  ElemSet all = enumerate_group(ctx);
  CHECK(all.size() == 336);
  CHECK(all.is_symmetric_with_id());
}

TEST_CASE("random elements are uniform (chi-square at 0.001)") {
  GroupCtx ctx = sl2(5);
  ElemSet all = enumerate_group(ctx);
  std::map<ElemKey, std::uint64_t> index;
  std::uint64_t next = 0;
  for (ElemKey k : all.keys()) index[k] = next++;

  const std::uint64_t draws = 120000;
  std::vector<std::uint64_t> counts(all.size(), 0);
  Rng rng(2024, "uniformity");
  for (std::uint64_t i = 0; i < draws; ++i) {
    Elem g = ctx.random_element(rng);
    ++counts[index.at(ctx.key(g))];
  }
  const double expected = static_cast<double>(draws) / static_cast<double>(all.size());
  double chi2 = 0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // Upper 0.001 quantile of chi-square with 119 degrees of freedom.
  CHECK(chi2 < 172.4177);
}

TEST_CASE("random element stream is seed-deterministic") {
  GroupCtx ctx = sl2(101);
  Rng r1(7, "stream");
  Rng r2(7, "stream");
  for (int i = 0; i < 100; ++i) {
    CHECK(ctx.key(ctx.random_element(r1)) == ctx.key(ctx.random_element(r2)));
  }
  for (int i = 0; i < 10000; ++i) {
    CHECK(ctx.det(ctx.random_element(r1)) == 1);
  }
}

TEST_CASE("finite index generation: S^(2d-1) generates the subgroup") {
  // Q_8 inside SL_2(F_3) is the set of elements of order dividing 4.
  GroupCtx c3 = sl2(3);
  ElemSet S3 = ElemSet::from_elems(c3, c3.elementary_generators());
  auto order_divides_4 = [&](const Elem& g) {
    Elem g2 = c3.mul(g, g);
    return c3.is_identity(c3.mul(g2, g2));
  };
  FiniteIndexCheck q8 = finite_index_generation_check(c3, S3, order_divides_4, 3);
  CHECK(q8.gamma_size == 24);
  CHECK(q8.gamma0_size == 8);
  CHECK(q8.holds);

  // d = 1: the whole group, via S^1 = S.
  FiniteIndexCheck full = finite_index_generation_check(
      c3, S3, [](const Elem&) { return true; }, 1);
  CHECK(full.holds);

  // The center {±I} of SL_2(F_5) has index 60.
  GroupCtx c5 = sl2(5);
  ElemSet S5 = ElemSet::from_elems(c5, c5.elementary_generators());
  FiniteIndexCheck cen = finite_index_generation_check(
      c5, S5, [&](const Elem& g) { return c5.is_central(g); }, 60);
  CHECK(cen.gamma0_size == 2);
  CHECK(cen.holds);
}

TEST_CASE("finite index check rejects non-subgroups") {
  GroupCtx ctx = sl2(3);
  ElemSet S = ElemSet::from_elems(ctx, ctx.elementary_generators());
  auto not_closed = [&](const Elem& g) {
    return ctx.is_identity(g) || ctx.trace(g) == 1;  // not product-closed
  };
  CHECK_THROWS_AS(finite_index_generation_check(ctx, S, not_closed, 2), PreconditionError);
}

TEST_CASE("center size is gcd(n, q-1)") {
  CHECK(sl2(5).center().size() == 2);   // {I, -I}
  CHECK(sl2(2).center().size() == 1);   // -I = I in characteristic 2
  CHECK(GroupCtx::make(FieldCtx::make(7, 1), 3).center().size() == 3);  // 7 = 1 mod 3
  CHECK(GroupCtx::make(FieldCtx::make(5, 1), 3).center().size() == 1);
  CHECK(GroupCtx::make(FieldCtx::make(2, 2), 3).center().size() == 3);  // q = 4
  for (std::uint64_t p : {5, 7}) {
    GroupCtx ctx = GroupCtx::make(FieldCtx::make(p, 1), 3);
    for (const Elem& z : ctx.center()) {
      CHECK(ctx.is_central(z));
      CHECK(ctx.det(z) == 1);
    }
  }
}

TEST_CASE("exact order for large q and key-width guard") {
  GroupCtx big = GroupCtx::make(FieldCtx::make(32749, 1), 2);
  CHECK(u128_to_string(big.order()) == "35123204253000");
  // 4 entries of 16 bits exceed the 63-bit key budget.
  CHECK_THROWS_AS(GroupCtx::make(FieldCtx::make(65521, 1), 2), UsageError);
}
