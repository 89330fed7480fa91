#ifndef GROWTHLAB_APPROX_HPP
#define GROWTHLAB_APPROX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/elemset.hpp"

namespace growthlab {

inline constexpr std::uint64_t kPairBudget = 1000000000;  // 10^9 pairs

/// Exact deduplicated A*B. Raises BudgetError when |A||B| exceeds the pair
/// budget (exactness over sampling is deliberate).
ElemSet product_set(const ElemSet& A, const ElemSet& B);

/// Exact A^m by repeated products; A^1 = A. Symmetric sets containing the
/// identity take the radius-m ball fast path.
ElemSet power_set(const ElemSet& A, int m);

struct TriplingReport {
  std::uint64_t size1 = 0;
  std::uint64_t size3 = 0;
  double ratio = 0.0;     // |A^3| / |A|
  double exponent = 0.0;  // log|A^3| / log|A|
};

TriplingReport tripling(const ElemSet& A);

struct ApproxCertificate {
  std::uint64_t k_certified = 0;  // |X|, an upper bound on the minimal K
  std::vector<ElemKey> cover;     // X, symmetric
  std::string method = "greedy-cover";
};

/// Greedy covering certificate for Definition-style K-approximacy: finds a
/// symmetric X with A*A ⊆ X*A. The cover is seeded with the identity, then
/// each uncovered element of A*A (ascending key) joins X together with its
/// inverse. Sound but not minimal (minimal K is set-cover-hard).
/// A must be symmetric with id.
ApproxCertificate approx_certify(const ElemSet& A);

/// Post-hoc soundness scan: A*A ⊆ X*A with X from the certificate.
bool verify_cover(const ElemSet& A, const ApproxCertificate& cert);

struct ControlCertificate {
  bool ok = false;
  std::uint64_t K = 0;
  std::vector<ElemKey> X;
};

/// Control certificate: K = max(|X|, ceil(|B|/|A|)) with A ⊆ (X*B) ∩ (B*X)
/// verified by scan. Fails only for empty inputs.
ControlCertificate control_certify(const ElemSet& A, const ElemSet& B);

enum class GrowthVerdict { reached_near_full, stalled_proper_subgroup, growing };

struct GrowthReport {
  std::vector<int> radii;             // exponents i of 3^i
  std::vector<std::uint64_t> sizes;   // |S^{3^i}|
  std::vector<double> tripling_ratios;
  GrowthVerdict verdict = GrowthVerdict::growing;
  bool partial = false;  // budget hit before classification
};

/// Examines |S^{3^i}|, i = 0,1,2,..., until the size reaches |G|^{1-delta}
/// or two consecutive powers coincide (stall: S^m = S^{m+1} with id in S
/// means closure). S must be symmetric with id.
GrowthReport growth_iterate(const ElemSet& S, double delta);

struct GowersCheck {
  bool precondition_met = false;  // |A|^3 * d_min > |G|^3
  bool a3_equals_group = false;
  std::uint64_t a_size = 0;
  std::uint64_t group_order = 0;
};

/// Quasirandom generation test: whether A^3 = G, with the |A| > |G|/d_min^(1/3)
/// threshold evaluated exactly in integers. Below the threshold the result is
/// report-only (no theorem applies).
GowersCheck gowers_check(const GroupCtx& ctx, const ElemSet& A, std::uint64_t d_min);

/// Random symmetric subset containing id, grown to at least `target` elements.
ElemSet random_symmetric_set(const GroupCtx& ctx, std::uint64_t target, Rng& rng);

}  // namespace growthlab

#endif
