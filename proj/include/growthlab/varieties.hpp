#ifndef GROWTHLAB_VARIETIES_HPP
#define GROWTHLAB_VARIETIES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "growthlab/approx.hpp"
#include "growthlab/elemset.hpp"

namespace growthlab {

/// Standard subvariety as a membership predicate plus its dimension from the
/// ambient dimension table. Predicates are pure and deterministic.
struct VarietySpec {
  VarietyKind kind;
  int dim;
  std::string name;
  std::function<bool(const Elem&)> member;

  static VarietySpec whole_group(const GroupCtx& ctx);
  /// The torus of a regular semisimple element, via commutation (type A:
  /// the centralizer point set is the torus's rational points).
  static VarietySpec maximal_torus(const GroupCtx& ctx, const Elem& reg_ss);
  /// Membership by equal characteristic polynomial; h must be regular ss.
  static VarietySpec conjugacy_class(const GroupCtx& ctx, const Elem& reg_ss);
  static VarietySpec singular_set(const GroupCtx& ctx);
  static VarietySpec subgroup(const GroupCtx& ctx, ElemSet pts, int dim);
  static VarietySpec centralizer(const GroupCtx& ctx, const Elem& reg_ss);
};

struct LPReport {
  std::uint64_t set_size = 0;
  int m = 1;
  std::uint64_t intersection_size = 0;
  double predicted_exponent = 0.0;  // dim V / dim G
  double observed_exponent = 0.0;   // log|A^m ∩ V| / log|A|
  bool degenerate = false;          // |A| <= 1 or empty intersection
};

/// Intersection exponent measurement: exact |A^m ∩ V| by predicate scan.
LPReport lp_exponent(const ElemSet& A, const VarietySpec& V, int m);

struct TorusStat {
  std::uint64_t a2_count = 0;        // |A^2 ∩ T|
  std::uint64_t a2_regss_count = 0;  // regular semisimple members of A^2 ∩ T
  std::uint64_t torus_size = 0;      // |T(F_q)|
};

struct TorusCensus {
  std::map<ElemKey, TorusStat> tori;  // TorusId -> counts
  std::uint64_t involved_count = 0;
  std::uint64_t a_size = 0;
  std::uint64_t a2_size = 0;
  std::uint64_t a2_regss = 0;
  std::uint64_t a2_central = 0;
  std::uint64_t a2_nonreg_noncentral = 0;
  double exponent_observed = 0.0;  // log(involved_count)/log|A|
  double predicted = 0.0;          // 1 - rank/dim_G
};

/// Census of tori involved with A: computes A^2, partitions its regular
/// semisimple elements by torus, and counts |A^2 ∩ T| per torus. The
/// partition identity regss + central + other = |A^2| is exact.
TorusCensus involved_tori(const ElemSet& A, const ElemSet& whole_group);

/// Fraction of (involved torus, a in A) pairs whose conjugate torus is again
/// involved. Exactly 1 when A is a subgroup or normalizes every torus.
double conjugation_invariance(const ElemSet& A, const TorusCensus& census,
                              const ElemSet& whole_group);

struct ConjProductSizes {
  std::uint64_t product_size = 0;  // |T1^a * T2|
  std::uint64_t t1_size = 0;
  std::uint64_t t2_size = 0;
};

/// Finite shadow of the product-conjugation phenomenon: |a^-1 T1 a * T2|.
ConjProductSizes conjugate_product_growth(const GroupCtx& ctx, const ElemSet& T1,
                                          const Elem& a, const ElemSet& T2);

/// Least-squares slope of log(count) against log(p); approximates dim V.
/// Requires at least 3 sample points.
double empirical_dimension(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& prime_counts);

/// Least-squares slope of y against x (helper shared with the fit commands).
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace growthlab

#endif
