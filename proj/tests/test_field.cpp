#include <set>
#include <vector>

#include "doctest.h"
#include "growthlab/errors.hpp"
#include "growthlab/field.hpp"

using namespace growthlab;

TEST_CASE("make_field basic contexts") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(f5.q() == 5);
  FieldCtx f2 = FieldCtx::make(2, 1);
  CHECK(f2.q() == 2);
  // Lex-least irreducible monic quadratic over F_3 is x^2 + 1 (no root mod 3).
  FieldCtx f9 = FieldCtx::make(3, 2);
  CHECK(f9.q() == 9);
  CHECK(f9.modulus_b() == 0);
  CHECK(f9.modulus_c() == 1);
}

TEST_CASE("make_field rejects bad input") {
  CHECK_THROWS_AS(FieldCtx::make(9, 1), UsageError);
  CHECK_THROWS_AS(FieldCtx::make(1, 1), UsageError);
  CHECK_THROWS_AS(FieldCtx::make(5, 3), UsageError);
}

TEST_CASE("inverses") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(f5.inv(2) == 3);
  FieldCtx f7 = FieldCtx::make(7, 1);
  CHECK(f7.inv(1) == 1);
  CHECK_THROWS_AS(f5.inv(0), PreconditionError);
  // Brute-force scan: x * inv(x) = 1 for every nonzero x.
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    FieldCtx F = FieldCtx::make(p, 1);
    for (felem x = 1; x < F.q(); ++x) CHECK(F.mul(x, F.inv(x)) == 1);
  }
}

TEST_CASE("is_square via Euler criterion") {
  FieldCtx f5 = FieldCtx::make(5, 1);
  CHECK(f5.is_square(4) == FieldCtx::Square::yes);
  CHECK(f5.is_square(2) == FieldCtx::Square::no);
  CHECK(f5.is_square(0) == FieldCtx::Square::zero);
  // Squares mod 5 are exactly {0, 1, 4}.
  std::set<felem> squares;
  for (felem x = 0; x < 5; ++x) squares.insert(f5.mul(x, x));
  CHECK(squares == std::set<felem>{0, 1, 4});
}

TEST_CASE("square count is (p-1)/2 for odd p") {
  for (std::uint64_t p = 3; p <= 101; p += 2) {
    if (!is_prime_u64(p)) continue;
    FieldCtx F = FieldCtx::make(p, 1);
    std::uint64_t yes = 0;
    for (felem d = 1; d < p; ++d) {
      if (F.is_square(d) == FieldCtx::Square::yes) ++yes;
    }
    CHECK(yes == (p - 1) / 2);
  }
}

TEST_CASE("field axioms by exhaustion for q <= 49") {
  std::vector<FieldCtx> fields;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    fields.push_back(FieldCtx::make(p, 1));
  }
  for (std::uint64_t p : {2, 3, 5, 7}) fields.push_back(FieldCtx::make(p, 2));

  for (const FieldCtx& F : fields) {
    const std::uint64_t q = F.q();
    if (q > 49) continue;
    bool assoc_ok = true, dist_ok = true, inv_ok = true, comm_ok = true;
    for (felem a = 0; a < q; ++a) {
      for (felem b = 0; b < q; ++b) {
        comm_ok = comm_ok && F.mul(a, b) == F.mul(b, a) && F.add(a, b) == F.add(b, a);
        for (felem c = 0; c < q; ++c) {
          assoc_ok = assoc_ok && F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c));
          dist_ok = dist_ok && F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c));
        }
      }
      if (a != 0) inv_ok = inv_ok && F.mul(a, F.inv(a)) == 1;
      inv_ok = inv_ok && F.add(a, F.neg(a)) == 0;
    }
    CHECK(assoc_ok);
    CHECK(dist_ok);
    CHECK(inv_ok);
    CHECK(comm_ok);
  }
}

TEST_CASE("Frobenius is an automorphism fixing exactly F_p") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    FieldCtx F = FieldCtx::make(p, 2);
    const std::uint64_t q = F.q();
    if (q > 49) continue;
    for (felem x = 0; x < q; ++x) {
      felem fx = F.frobenius(x);
      CHECK((fx == x) == F.in_prime_subfield(x));
      for (felem y = 0; y < q; ++y) {
        CHECK(F.frobenius(F.mul(x, y)) == F.mul(fx, F.frobenius(y)));
        CHECK(F.frobenius(F.add(x, y)) == F.add(fx, F.frobenius(y)));
      }
    }
  }
}

TEST_CASE("extension inverses use the norm") {
  FieldCtx F = FieldCtx::make(101, 2);
  // Spot checks across the extension, including elements outside F_p.
  for (felem x : std::vector<felem>{1, 100, 101, 102, 5050, 10200-1}) {
    if (x == 0 || x >= F.q()) continue;
    CHECK(F.mul(x, F.inv(x)) == 1);
  }
}
