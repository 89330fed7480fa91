#ifndef GROWTHLAB_FIELD_HPP
#define GROWTHLAB_FIELD_HPP

#include <cstdint>
#include <string>

#include "growthlab/errors.hpp"

namespace growthlab {

/// Canonical element code. For F_p the residue in [0, p); for F_{p^2} the
/// value a + b*p encoding a + b*theta, with theta a root of the modulus.
using felem = std::uint64_t;

/// Arithmetic context for F_p (p prime, p < 2^31) or F_{p^2}.
///
/// Immutable after construction; all operations are pure, so a single context
/// can be shared freely across threads. Canonical codes make downstream key
/// packing bit-exact.
class FieldCtx {
 public:
  /// Builds F_{p^k}. p must be prime (checked by trial division) and
  /// k in {1,2}. For k = 2 the modulus is the lexicographically least
  /// irreducible monic quadratic x^2 + bx + c over F_p, scanning (b, c).
  static FieldCtx make(std::uint64_t p, int k);

  std::uint64_t p() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t q() const { return q_; }
  /// Modulus coefficients (b, c) of x^2 + bx + c; only meaningful for k = 2.
  std::uint64_t modulus_b() const { return mod_b_; }
  std::uint64_t modulus_c() const { return mod_c_; }

  felem zero() const { return 0; }
  felem one() const { return 1; }

  felem add(felem x, felem y) const;
  felem sub(felem x, felem y) const;
  felem neg(felem x) const;
  felem mul(felem x, felem y) const;
  /// Multiplicative inverse; extended Euclid for k = 1, norm trick for k = 2.
  /// x = 0 raises PreconditionError.
  felem inv(felem x) const;
  felem pow(felem x, std::uint64_t e) const;

  /// Reduces a signed integer into the prime subfield.
  felem from_int(long long v) const;

  enum class Square { yes, no, zero };
  /// Euler criterion d^((p-1)/2). Requires k = 1 and odd p.
  Square is_square(felem d) const;

  /// x -> x^p, the Frobenius map (identity on F_p).
  felem frobenius(felem x) const;

  /// Whether the element lies in the prime subfield F_p.
  bool in_prime_subfield(felem x) const { return x < p_; }

  bool operator==(const FieldCtx& o) const {
    return p_ == o.p_ && k_ == o.k_ && mod_b_ == o.mod_b_ && mod_c_ == o.mod_c_;
  }

 private:
  FieldCtx(std::uint64_t p, int k, std::uint64_t b, std::uint64_t c);

  std::uint64_t p_;
  int k_;
  std::uint64_t q_;
  std::uint64_t mod_b_, mod_c_;  // theta^2 = -(b*theta + c)
};

bool is_prime_u64(std::uint64_t n);

}  // namespace growthlab

#endif
