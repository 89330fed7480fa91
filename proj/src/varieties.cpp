#include "growthlab/varieties.hpp"

#include <algorithm>
#include <cmath>

#include "growthlab/errors.hpp"

namespace growthlab {

VarietySpec VarietySpec::whole_group(const GroupCtx& ctx) {
  return VarietySpec{VarietyKind::group, ctx.dim_of(VarietyKind::group), "group",
                     [](const Elem&) { return true; }};
}

VarietySpec VarietySpec::maximal_torus(const GroupCtx& ctx, const Elem& reg_ss) {
  if (!ctx.is_regular_ss(reg_ss)) {
    throw PreconditionError("maximal_torus needs a regular semisimple element");
  }
  // Type A: T(F_q) = Z(g), so membership is a commutation test.
  return VarietySpec{VarietyKind::maximal_torus, ctx.dim_of(VarietyKind::maximal_torus),
                     "maximal_torus",
                     [&ctx, reg_ss](const Elem& h) { return ctx.commutes(h, reg_ss); }};
}

VarietySpec VarietySpec::conjugacy_class(const GroupCtx& ctx, const Elem& reg_ss) {
  if (!ctx.is_regular_ss(reg_ss)) {
    throw PreconditionError("conjugacy_class variety needs a regular semisimple element");
  }
  auto cp = ctx.char_poly(reg_ss);
  // For regular semisimple elements over a finite field, equal characteristic
  // polynomial is equivalent to SL_n-conjugacy.
  return VarietySpec{VarietyKind::regular_ss_conjugacy_class,
                     ctx.dim_of(VarietyKind::regular_ss_conjugacy_class), "conjugacy_class",
                     [&ctx, cp](const Elem& h) {
                       return ctx.is_regular_ss(h) && ctx.char_poly(h) == cp;
                     }};
}

VarietySpec VarietySpec::singular_set(const GroupCtx& ctx) {
  return VarietySpec{VarietyKind::singular_set, ctx.dim_of(VarietyKind::singular_set),
                     "singular_set",
                     [&ctx](const Elem& h) { return !ctx.is_regular_ss(h); }};
}

VarietySpec VarietySpec::subgroup(const GroupCtx& ctx, ElemSet pts, int dim) {
  auto shared = std::make_shared<ElemSet>(std::move(pts));
  return VarietySpec{VarietyKind::group, dim, "subgroup",
                     [&ctx, shared](const Elem& h) { return shared->contains(ctx.key(h)); }};
}

VarietySpec VarietySpec::centralizer(const GroupCtx& ctx, const Elem& reg_ss) {
  if (!ctx.is_regular_ss(reg_ss)) {
    throw PreconditionError("centralizer variety needs a regular semisimple element");
  }
  return VarietySpec{VarietyKind::centralizer_regular_ss,
                     ctx.dim_of(VarietyKind::centralizer_regular_ss), "centralizer",
                     [&ctx, reg_ss](const Elem& h) { return ctx.commutes(h, reg_ss); }};
}

LPReport lp_exponent(const ElemSet& A, const VarietySpec& V, int m) {
  const GroupCtx& ctx = A.ctx();
  LPReport rep;
  rep.set_size = A.size();
  rep.m = m;
  rep.predicted_exponent =
      static_cast<double>(V.dim) / static_cast<double>(ctx.dim_g());
  ElemSet Am = power_set(A, m);
  std::uint64_t cnt = 0;
  for (ElemKey k : Am.keys()) {
    if (V.member(ctx.unkey(k))) ++cnt;
  }
  rep.intersection_size = cnt;
  if (A.size() <= 1 || cnt == 0) {
    rep.degenerate = true;
    return rep;
  }
  rep.observed_exponent = std::log(static_cast<double>(cnt)) /
                          std::log(static_cast<double>(A.size()));
  return rep;
}

TorusCensus involved_tori(const ElemSet& A, const ElemSet& whole_group) {
  const GroupCtx& ctx = A.ctx();
  TorusCensus census;
  census.a_size = A.size();
  census.predicted = 1.0 - static_cast<double>(ctx.rank()) / ctx.dim_g();

  ElemSet A2 = power_set(A, 2);
  census.a2_size = A2.size();

  // Partition A^2 into regular semisimple / central / other, and the regular
  // elements by their unique torus. All regular members of one centralizer
  // share the torus, so each torus costs one centralizer scan.
  std::vector<ElemKey> regss;
  for (ElemKey k : A2.keys()) {
    Elem g = ctx.unkey(k);
    if (ctx.is_regular_ss(g)) {
      regss.push_back(k);
    } else if (ctx.is_central(g)) {
      ++census.a2_central;
    } else {
      ++census.a2_nonreg_noncentral;
    }
  }
  census.a2_regss = regss.size();

  std::unordered_set<ElemKey> assigned;
  for (ElemKey k : regss) {
    if (assigned.count(k)) continue;
    Elem g = ctx.unkey(k);
    ElemSet T = centralizer_set(ctx, g, whole_group);
    ElemKey tid = 0;
    bool found = false;
    TorusStat stat;
    stat.torus_size = T.size();
    for (ElemKey tk : T.keys()) {
      Elem t = ctx.unkey(tk);
      bool reg = ctx.is_regular_ss(t);
      if (reg && !found) {
        tid = tk;
        found = true;
      }
      if (A2.contains(tk)) {
        ++stat.a2_count;
        if (reg) ++stat.a2_regss_count;
      }
      if (reg && A2.contains(tk)) assigned.insert(tk);
    }
    census.tori.emplace(tid, stat);
  }
  census.involved_count = census.tori.size();
  if (census.a_size > 1 && census.involved_count > 0) {
    census.exponent_observed = std::log(static_cast<double>(census.involved_count)) /
                                std::log(static_cast<double>(census.a_size));
  }
  return census;
}

double conjugation_invariance(const ElemSet& A, const TorusCensus& census,
                              const ElemSet& whole_group) {
  const GroupCtx& ctx = A.ctx();
  if (census.tori.empty() || A.empty()) return 1.0;

  // Regular semisimple point lists per involved torus; the conjugate torus id
  // is the min key of the pointwise conjugate list.
  std::vector<std::vector<Elem>> torus_regss;
  for (const auto& [tid, stat] : census.tori) {
    Elem rep = ctx.unkey(tid);
    ElemSet T = centralizer_set(ctx, rep, whole_group);
    std::vector<Elem> pts;
    for (ElemKey tk : T.keys()) {
      Elem t = ctx.unkey(tk);
      if (ctx.is_regular_ss(t)) pts.push_back(t);
    }
    torus_regss.push_back(std::move(pts));
  }

  std::uint64_t hits = 0, total = 0;
  for (const auto& pts : torus_regss) {
    for (ElemKey ak : A.keys()) {
      Elem a = ctx.unkey(ak);
      Elem ai = ctx.inverse(a);
      ElemKey conj_tid = ~ElemKey{0};
      for (const Elem& t : pts) {
        conj_tid = std::min(conj_tid, ctx.key(ctx.mul(ctx.mul(ai, t), a)));
      }
      ++total;
      if (census.tori.count(conj_tid)) ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

ConjProductSizes conjugate_product_growth(const GroupCtx& ctx, const ElemSet& T1,
                                          const Elem& a, const ElemSet& T2) {
  ConjProductSizes out;
  out.t1_size = T1.size();
  out.t2_size = T2.size();
  VisitedSet seen(ctx, T1.size() * T2.size());
  for (ElemKey k1 : T1.keys()) {
    Elem c = ctx.conjugate(ctx.unkey(k1), a);
    for (ElemKey k2 : T2.keys()) {
      seen.insert(ctx.key(ctx.mul(c, ctx.unkey(k2))));
    }
  }
  out.product_size = seen.size();
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double xb = 0, yb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xb += x[i];
    yb += y[i];
  }
  xb /= static_cast<double>(n);
  yb /= static_cast<double>(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (x[i] - xb) * (y[i] - yb);
    den += (x[i] - xb) * (x[i] - xb);
  }
  if (den == 0) throw PreconditionError("degenerate spread in least squares fit");
  return num / den;
}

double empirical_dimension(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& prime_counts) {
  if (prime_counts.size() < 3) {
    throw PreconditionError("empirical dimension needs at least 3 primes");
  }
  std::vector<double> xs, ys;
  for (auto [p, cnt] : prime_counts) {
    if (cnt == 0) continue;  // degenerate fibers are excluded from the fit
    xs.push_back(std::log(static_cast<double>(p)));
    ys.push_back(std::log(static_cast<double>(cnt)));
  }
  if (xs.size() < 3) throw PreconditionError("fewer than 3 nondegenerate counts");
  return least_squares_slope(xs, ys);
}

}  // namespace growthlab
