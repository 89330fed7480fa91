#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "growthlab/errors.hpp"
#include "growthlab/sumprod.hpp"

using namespace growthlab;

TEST_CASE("sum and product set sizes of progressions") {
  FieldCtx F = FieldCtx::make(1009, 1);
  ScalarSet ap = ScalarSet::arithmetic_progression(F, 1, 1, 50);
  auto s = sum_prod_sizes(ap);
  CHECK(s.sum_size == 99);  // 2N - 1, no wraparound
  // Brute-force oracle count of the multiplication table mod 1009.
  CHECK(s.prod_size == 664);
  CHECK(static_cast<double>(s.prod_size) >= std::pow(50.0, 1.5));

  CHECK(smallest_primitive_root(1009) == 11);
  ScalarSet gp = ScalarSet::geometric_progression(F, 11, 50);
  auto g = sum_prod_sizes(gp);
  CHECK(g.prod_size == 99);  // exponent addition, generator order 1008 > 100
  CHECK(g.sum_size == 822);
  CHECK(static_cast<double>(g.sum_size) >= std::pow(50.0, 1.5));
}

TEST_CASE("subfield is a sum-product fixed point") {
  for (std::uint64_t p : {3, 5, 7, 11}) {
    FieldCtx F = FieldCtx::make(p, 2);
    ScalarSet sub = ScalarSet::prime_subfield(F);
    auto s = sum_prod_sizes(sub);
    CHECK(s.sum_size == p);
    CHECK(s.prod_size == p);
  }
}

TEST_CASE("sumset lower bound 2|A| - 1 with equality for APs") {
  FieldCtx F = FieldCtx::make(1009, 1);
  // A inside an interval of length < p/2: no wraparound.
  ScalarSet ap = ScalarSet::arithmetic_progression(F, 7, 3, 40);
  CHECK(sum_prod_sizes(ap).sum_size == 79);
  Rng rng(11, "sumset");
  std::vector<felem> vals;
  std::set<felem> seen;
  while (vals.size() < 40) {
    felem x = rng.below(400);  // interval [0, 400), no wraparound in sums
    if (seen.insert(x).second) vals.push_back(x);
  }
  ScalarSet rnd(F, std::move(vals));
  auto s = sum_prod_sizes(rnd);
  CHECK(s.sum_size >= 2 * rnd.size() - 1);
  bool is_ap = true;
  for (std::size_t i = 2; i < rnd.vals.size(); ++i) {
    if (F.sub(rnd.vals[i], rnd.vals[i - 1]) != F.sub(rnd.vals[1], rnd.vals[0])) is_ap = false;
  }
  CHECK((s.sum_size == 2 * rnd.size() - 1) == is_ap);
}

TEST_CASE("dichotomy scan flags nothing over a prime field") {
  FieldCtx F = FieldCtx::make(1009, 1);
  Rng rng(5, "dichotomy");
  std::vector<std::pair<std::string, ScalarSet>> families;
  families.push_back({"ap", ScalarSet::arithmetic_progression(F, 1, 1, 50)});
  families.push_back({"gp", ScalarSet::geometric_progression(F, 11, 50)});
  families.push_back({"random", ScalarSet::random_subset(F, 50, rng)});
  auto rows = dichotomy_scan(families, 4.0);
  for (const auto& r : rows) {
    CHECK_FALSE(r.flagged);
    CHECK(r.k_obs > 1.0);
  }
  // GP doubling is driven by the sumset, AP doubling by the product set.
  CHECK(rows[1].sum_size > rows[1].prod_size);
  CHECK(rows[0].prod_size > rows[0].sum_size);
}

TEST_CASE("dichotomy scan flags the subfield inside F_p^2") {
  FieldCtx F = FieldCtx::make(7, 2);
  std::vector<std::pair<std::string, ScalarSet>> families;
  families.push_back({"subfield", ScalarSet::prime_subfield(F)});
  auto rows = dichotomy_scan(families, 4.0);
  CHECK(rows[0].k_obs == doctest::Approx(1.0));
  CHECK(rows[0].flagged);  // the q = p^2 counterexample shape
}

TEST_CASE("rational images") {
  FieldCtx F = FieldCtx::make(1009, 1);
  ScalarSet gp = ScalarSet::geometric_progression(F, 11, 20);

  ExprTree ident = ExprTree::parse("x1", 1);
  CHECK(rational_image(gp, ident).image_size == 20);

  // On a subfield, x1 + x2*x3 stays inside the subfield.
  FieldCtx F49 = FieldCtx::make(7, 2);
  ScalarSet sub = ScalarSet::prime_subfield(F49);
  ExprTree e = ExprTree::parse("x1 + x2*x3", 3);
  CHECK(rational_image(sub, e).image_size == 7);

  // The matrix-entry function (1 + x1 x2)/x3; triple-loop oracle value.
  ExprTree psi = ExprTree::parse("(1 + x1*x2)/x3", 3);
  RationalImage img = rational_image(gp, psi);
  CHECK(img.image_size == 568);
  CHECK(img.infinity_count == 0);  // 0 is not in a geometric progression

  // Zero denominators land in the infinity bucket, never the image.
  ScalarSet with_zero(F, {0, 1, 2});
  ExprTree div = ExprTree::parse("x1/x2", 2);
  RationalImage dimg = rational_image(with_zero, div);
  CHECK(dimg.infinity_count == 3);
}

TEST_CASE("dyadic refinement and image growth on both sets") {
  FieldCtx F49 = FieldCtx::make(7, 2);
  ScalarSet sub = ScalarSet::prime_subfield(F49);
  // A subfield is closed under both operations, so every element sits in one
  // dyadic level and the refinement is the whole set.
  ScalarSet rsub = dyadic_refinement(sub);
  CHECK(rsub.size() == sub.size());

  FieldCtx F = FieldCtx::make(1009, 1);
  ScalarSet gp = ScalarSet::geometric_progression(F, 11, 20);
  ScalarSet rgp = dyadic_refinement(gp);
  CHECK(rgp.size() >= 1);
  CHECK(rgp.size() <= gp.size());
  for (felem v : rgp.vals) CHECK(gp.contains(v));

  // Image growth is measured on the full set and the refinement alike; the
  // refinement never has a larger image.
  ExprTree psi = ExprTree::parse("(1 + x1*x2)/x3", 3);
  RationalImage full = rational_image(gp, psi);
  RationalImage refined = rational_image(rgp, psi);
  CHECK(refined.image_size <= full.image_size);
  CHECK(full.image_size == 568);
}

TEST_CASE("expression parse errors") {
  CHECK_THROWS_AS(ExprTree::parse("x4", 3), UsageError);
  CHECK_THROWS_AS(ExprTree::parse("x1 +", 1), UsageError);
  CHECK_THROWS_AS(ExprTree::parse("(x1", 1), UsageError);
}

TEST_CASE("SL_2 lift") {
  GroupCtx ctx = GroupCtx::make(FieldCtx::make(101, 1), 2);
  FieldCtx F = ctx.field();

  ScalarSet one(F, {1});
  ElemSet X1 = lift_sl2(ctx, one);
  CHECK(X1.size() == 1);
  Elem only = ctx.unkey(X1.keys().front());
  CHECK(only.e[0] == 1);
  CHECK(only.e[1] == 1);
  CHECK(only.e[2] == 1);
  CHECK(only.e[3] == 2);

  ScalarSet gp = ScalarSet::geometric_progression(F, 2, 10);
  ElemSet X = lift_sl2(ctx, gp);
  CHECK(X.size() == 1000);  // the triple map is injective on the entries
  for (ElemKey k : X.keys()) CHECK(ctx.det(ctx.unkey(k)) == 1);

  GroupCtx c7 = GroupCtx::make(FieldCtx::make(7, 1), 2);
  std::vector<felem> nz;
  for (felem x = 1; x < 7; ++x) nz.push_back(x);
  ElemSet Xall = lift_sl2(c7, ScalarSet(c7.field(), std::move(nz)));
  CHECK(Xall.size() == 216);  // (p-1)^3

  ScalarSet zero(F, {0, 1});
  CHECK_THROWS_AS(lift_sl2(ctx, zero), PreconditionError);
}

TEST_CASE("dickson generation test, exact branch") {
  GroupCtx ctx = GroupCtx::make(FieldCtx::make(7, 1), 2);
  ElemSet S = ElemSet::from_elems(ctx, ctx.elementary_generators());
  DicksonResult gen = dickson_gen_test(ctx, S);
  CHECK(gen.verdict == DicksonVerdict::generates_sl2);
  CHECK(gen.closure_size == 336);

  // Upper triangular generators span a solvable proper subgroup; at p = 11
  // the full Borel has order p(p-1) = 110 > 60.
  GroupCtx c11 = GroupCtx::make(FieldCtx::make(11, 1), 2);
  const FieldCtx& F11 = c11.field();
  std::array<std::uint32_t, 9> u{};
  u[0] = 1; u[1] = 1; u[3] = 1;
  std::array<std::uint32_t, 9> d{};
  d[0] = 2; d[3] = static_cast<std::uint32_t>(F11.inv(2));
  ElemSet Tri = ElemSet::from_elems(
      c11, {c11.identity(), c11.elem_from_entries(u), c11.elem_from_entries(d)}).symmetrized();
  DicksonResult tri = dickson_gen_test(c11, Tri);
  CHECK(tri.closure_size == 110);
  CHECK(tri.verdict == DicksonVerdict::proper_solvable_witness);

  // {±I} is the small branch.
  std::array<std::uint32_t, 9> mi{};
  mi[0] = 6; mi[3] = 6;
  ElemSet pm = ElemSet::from_elems(ctx, {ctx.identity(), ctx.elem_from_entries(mi)});
  DicksonResult small = dickson_gen_test(ctx, pm);
  CHECK(small.verdict == DicksonVerdict::proper_small);
}

TEST_CASE("dickson word-search branch agrees with the exact branch") {
  GroupCtx ctx = GroupCtx::make(FieldCtx::make(11, 1), 2);
  ElemSet S = ElemSet::from_elems(ctx, ctx.elementary_generators());
  DicksonResult ws = dickson_gen_test(ctx, S, true);
  CHECK(ws.verdict == DicksonVerdict::generates_sl2);
  CHECK(ws.witness_found);
}

TEST_CASE("grid vanishing") {
  FieldCtx F = FieldCtx::make(7, 1);
  ScalarSet S(F, {1, 2, 3});

  Poly zero = Poly::zero(2);
  CHECK(grid_vanishing_check(F, zero, S));

  // x1 x2 - x2 x1 normalizes to the zero polynomial.
  Poly disguise = Poly::zero(2);
  disguise.add_term(F, {1, 1, 0, 0}, 1);
  disguise.add_term(F, {1, 1, 0, 0}, F.neg(1));
  CHECK(disguise.coeffs_all_zero());
  CHECK(grid_vanishing_check(F, disguise, S));

  // x1(x1-1)(x1-2) vanishes on S = {0,1,2} but has degree 3 = |S|: the
  // hypothesis d < |S| fails, so the check is inconclusive by contract.
  Poly cubic = Poly::zero(1);
  cubic.add_term(F, {3, 0, 0, 0}, 1);                // x^3
  cubic.add_term(F, {2, 0, 0, 0}, F.from_int(-3));   // -3x^2
  cubic.add_term(F, {1, 0, 0, 0}, F.from_int(2));    // 2x
  ScalarSet S012(F, {0, 1, 2});
  for (felem x = 0; x < 3; ++x) CHECK(cubic.eval(F, {x}) == 0);
  CHECK_THROWS_AS(grid_vanishing_check(F, cubic, S012), PreconditionError);

  // A polynomial that does vanish identically on a big enough grid.
  Poly nonzero = Poly::zero(1);
  nonzero.add_term(F, {1, 0, 0, 0}, 1);
  CHECK_FALSE(grid_vanishing_check(F, nonzero, S));
}

TEST_CASE("the commutator polynomial does not vanish identically") {
  for (std::uint64_t p : {5, 7, 11}) {
    GroupCtx ctx = GroupCtx::make(FieldCtx::make(p, 1), 2);
    std::vector<felem> nz;
    for (felem x = 1; x < p; ++x) nz.push_back(x);
    ScalarSet A(ctx.field(), std::move(nz));
    auto witness = double_commutator_witness(ctx, A);
    REQUIRE(witness.has_value());
    for (felem v : *witness) CHECK(v != 0);
  }
}
