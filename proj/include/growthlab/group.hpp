#ifndef GROWTHLAB_GROUP_HPP
#define GROWTHLAB_GROUP_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "growthlab/field.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);

/// Element of SL_n(F_q): the n*n entry codes in row-major order. Entries
/// beyond n*n are zero so equality is plain array equality.
struct Elem {
  std::array<std::uint32_t, 9> e{};

  bool operator==(const Elem&) const = default;
};

/// Packed canonical key: row-major entries, ceil(log2 q) bits each, first
/// entry most significant, zero-padded to 64 bits.
using ElemKey = std::uint64_t;

enum class VarietyKind {
  group,
  maximal_torus,
  regular_ss_conjugacy_class,
  singular_set,
  centralizer_regular_ss,
};

/// Ambient data for SL_n(F_q), n in {2,3}. Immutable and shareable.
class GroupCtx {
 public:
  static GroupCtx make(FieldCtx field, int n);

  const FieldCtx& field() const { return field_; }
  int n() const { return n_; }
  int dim_g() const { return dim_g_; }
  int rank() const { return rank_; }
  u128 order() const { return order_; }
  /// Order as u64; raises PreconditionError above 2^63.
  std::uint64_t order_u64() const;

  int entry_bits() const { return entry_bits_; }
  int key_bits() const { return key_bits_; }

  /// Dimensions of the standard subvarieties used by the experiments.
  int dim_of(VarietyKind kind) const;

  Elem identity() const;
  Elem mul(const Elem& a, const Elem& b) const;
  /// Adjugate-based inverse; valid because det = 1.
  Elem inverse(const Elem& a) const;
  Elem conjugate(const Elem& g, const Elem& a) const;  // a^-1 g a
  felem det(const Elem& a) const;
  felem trace(const Elem& a) const;
  bool is_identity(const Elem& a) const;
  bool commutes(const Elem& a, const Elem& b) const;

  ElemKey key(const Elem& a) const;
  Elem unkey(ElemKey k) const;

  /// Monic characteristic polynomial det(xI - g); coeffs[i] multiplies x^i,
  /// coeffs[n] = 1. Constant term is (-1)^n since det g = 1.
  std::array<felem, 4> char_poly(const Elem& g) const;

  /// Squarefree characteristic polynomial test (gcd(f, f') = 1); for type A
  /// this detects regular semisimple elements. Requires q > n.
  bool is_regular_ss(const Elem& g) const;

  /// Scalar matrices lambda*I with lambda^n = 1.
  std::vector<Elem> center() const;
  bool is_central(const Elem& g) const;

  /// Elementary transvection generators E_ij(b) over a basis of F_q,
  /// symmetrized, with the identity. Generates the whole group.
  std::vector<Elem> elementary_generators() const;

  /// Exactly uniform: rejection-samples an invertible matrix, then rescales
  /// the last row by det^-1.
  Elem random_element(Rng& rng) const;

  /// Smallest nontrivial complex representation dimension; the classical
  /// value (p-1)/2 for SL_2(F_p), p >= 5 prime. Raises PreconditionError
  /// elsewhere (no effective constant is configured).
  std::uint64_t quasirandom_dmin() const;

  Elem elem_from_entries(const std::array<std::uint32_t, 9>& entries) const;

 private:
  GroupCtx(FieldCtx field, int n);

  FieldCtx field_;
  int n_;
  int dim_g_;
  int rank_;
  int entry_bits_;
  int key_bits_;
  u128 order_;
};

}  // namespace growthlab

#endif
