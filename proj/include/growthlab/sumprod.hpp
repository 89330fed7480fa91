#ifndef GROWTHLAB_SUMPROD_HPP
#define GROWTHLAB_SUMPROD_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/elemset.hpp"
#include "growthlab/field.hpp"
#include "growthlab/rng.hpp"

namespace growthlab {

/// Deduplicated set of field elements, held sorted ascending by code.
struct ScalarSet {
  const FieldCtx* F;
  std::vector<felem> vals;

  ScalarSet(const FieldCtx& field, std::vector<felem> v);
  std::size_t size() const { return vals.size(); }
  bool contains(felem x) const;

  static ScalarSet arithmetic_progression(const FieldCtx& F, felem start, felem step,
                                          std::uint64_t len);
  static ScalarSet geometric_progression(const FieldCtx& F, felem gen, std::uint64_t len);
  static ScalarSet random_subset(const FieldCtx& F, std::uint64_t size, Rng& rng);
  /// F_p inside F_{p^2}; requires degree 2.
  static ScalarSet prime_subfield(const FieldCtx& F);
};

std::uint64_t smallest_primitive_root(std::uint64_t p);

struct SumProdSizes {
  std::uint64_t sum_size = 0;
  std::uint64_t prod_size = 0;
};

/// Exact |A+A| and |A*A|; pair budget 10^9.
SumProdSizes sum_prod_sizes(const ScalarSet& A);

struct DichotomyRow {
  std::string family;
  std::uint64_t set_size = 0;
  std::uint64_t sum_size = 0;
  std::uint64_t prod_size = 0;
  double k_obs = 0.0;  // max(|A+A|,|A*A|)/|A|
  bool flagged = false;
};

/// Scans families for sets that are neither tiny nor near-full yet have
/// small doubling in both operations. Over a prime field no such set should
/// appear below the threshold; the subfield family inside F_{p^2} shows the
/// shape that must be excluded. The thresholds are configuration knobs.
std::vector<DichotomyRow> dichotomy_scan(const std::vector<std::pair<std::string, ScalarSet>>& families,
                                         double k_thresh);

/// Rational expression in variables x1..xm with +, -, *, / and constants.
class ExprTree {
 public:
  struct Node;

  static ExprTree parse(const std::string& text, int arity);

  int arity() const { return arity_; }
  /// Evaluates at the given point; nullopt lands in the infinity bucket
  /// (zero denominator).
  std::optional<felem> eval(const FieldCtx& F, const std::vector<felem>& args) const;

 private:
  std::shared_ptr<const Node> root_;
  int arity_ = 0;
};

struct RationalImage {
  std::uint64_t image_size = 0;     // |psi(A,...,A)|, infinity excluded
  std::uint64_t infinity_count = 0; // tuples hitting a zero denominator
};

/// Exact image size of psi over A^m; tuple budget 10^9, m <= 3.
RationalImage rational_image(const ScalarSet& A, const ExprTree& psi);

/// Heuristic stand-in for the non-constructive refined subset: keeps the
/// most populated dyadic bucket of elements graded by closure degree, the
/// number of sums and products with both operands in A landing back in A.
/// Image growth is measured on both A and the refinement.
ScalarSet dyadic_refinement(const ScalarSet& A);

/// The SL_2 lift {(a1, a2; a3, (1+a2a3)/a1)} over triples of A. Requires a
/// prime field with 0 not in A.
ElemSet lift_sl2(const GroupCtx& ctx, const ScalarSet& A);

enum class DicksonVerdict { generates_sl2, proper_solvable_witness, proper_small, undecided };

struct DicksonResult {
  DicksonVerdict verdict = DicksonVerdict::undecided;
  std::uint64_t closure_size = 0;   // exact branch only
  std::uint64_t sample_size = 0;    // word-search branch: ball size reached
  bool witness_found = false;       // nontrivial double commutator found
};

/// Generation test for subsets of SL_2(F_p), p >= 5. With group order
/// <= 10^6 the verdict is exact by closure. Otherwise searches bounded-length
/// words for a double-commutator witness: a witness plus a closure sample
/// larger than 60 certifies generation (proper subgroups of order > 60 are
/// 2-step solvable). `force_word_search` exercises the heuristic branch
/// regardless of order, for cross-validation.
DicksonResult dickson_gen_test(const GroupCtx& ctx, const ElemSet& S,
                               bool force_word_search = false);

/// Sparse multivariate polynomial over F_p, m <= 4 variables.
struct Poly {
  int nvars = 1;
  // exponent tuple -> coefficient; kept normalized (no zero coeffs).
  std::vector<std::pair<std::array<std::uint8_t, 4>, felem>> terms;

  static Poly zero(int nvars);
  void add_term(const FieldCtx& F, std::array<std::uint8_t, 4> exps, felem coeff);
  int degree_in(int var) const;
  felem eval(const FieldCtx& F, const std::vector<felem>& args) const;
  bool coeffs_all_zero() const { return terms.empty(); }
};

/// True iff poly vanishes on all of S^m. With per-variable degree < |S| this
/// certifies identical vanishing; otherwise raises PreconditionError
/// (inconclusive).
bool grid_vanishing_check(const FieldCtx& F, const Poly& poly, const ScalarSet& S);

/// Searches A^12 (lexicographic, capped) for a tuple whose lifted quadruple
/// has a nontrivial double commutator, witnessing that the cleared-denominator
/// commutator polynomial is not identically zero.
std::optional<std::array<felem, 12>> double_commutator_witness(const GroupCtx& ctx,
                                                               const ScalarSet& A,
                                                               std::uint64_t cap = 100000);

}  // namespace growthlab

#endif
