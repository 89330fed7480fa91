// growthlab: experiment runner for growth and structure experiments in
// SL_n(F_q). Every subcommand writes one CSV (header row, then one
// observation per row) with the full configuration echoed in '#' comments,
// so runs are self-describing and reproducible.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "growthlab/approx.hpp"
#include "growthlab/cayley.hpp"
#include "growthlab/csv.hpp"
#include "growthlab/elemset.hpp"
#include "growthlab/errors.hpp"
#include "growthlab/field.hpp"
#include "growthlab/group.hpp"
#include "growthlab/parallel.hpp"
#include "growthlab/rng.hpp"
#include "growthlab/sumprod.hpp"
#include "growthlab/varieties.hpp"

namespace gl = growthlab;

namespace {

struct CommonOpts {
  int n = 2;
  std::uint64_t p = 5;
  int k = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool deterministic = false;
};

std::string matrix_to_string(const gl::GroupCtx& ctx, const gl::Elem& g) {
  std::string s;
  for (int i = 0; i < ctx.n() * ctx.n(); ++i) {
    if (i) s += ':';
    s += std::to_string(g.e[i]);
  }
  return s;
}

std::vector<gl::Elem> parse_explicit_gens(const gl::GroupCtx& ctx, const std::string& text) {
  std::vector<gl::Elem> out;
  std::stringstream ss(text);
  std::string mat;
  while (std::getline(ss, mat, ';')) {
    std::array<std::uint32_t, 9> entries{};
    std::stringstream ms(mat);
    std::string cell;
    int i = 0;
    while (std::getline(ms, cell, ',')) {
      if (i >= ctx.n() * ctx.n()) throw gl::UsageError("too many matrix entries in --gens");
      try {
        long long v = std::stoll(cell);
        entries[static_cast<std::size_t>(i)] =
            static_cast<std::uint32_t>(ctx.field().from_int(v));
      } catch (const std::invalid_argument&) {
        throw gl::UsageError("generator entry '" + cell + "' is not an integer");
      }
      ++i;
    }
    if (i != ctx.n() * ctx.n()) throw gl::UsageError("matrix needs n*n entries in --gens");
    out.push_back(ctx.elem_from_entries(entries));
  }
  if (out.empty()) throw gl::UsageError("no generators parsed from --gens");
  return out;
}

std::vector<gl::Elem> make_generators(const gl::GroupCtx& ctx, const std::string& spec,
                                      std::uint64_t seed) {
  if (spec == "elementary") return ctx.elementary_generators();
  if (spec == "random") {
    gl::Rng rng(seed, "generator-pair");
    return {ctx.random_element(rng), ctx.random_element(rng)};
  }
  return parse_explicit_gens(ctx, spec);
}

gl::ElemSet make_set(const gl::GroupCtx& ctx, const std::string& spec,
                     const std::string& gens_spec, std::uint64_t seed) {
  if (spec == "full-group") return gl::enumerate_group(ctx);
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "ball") {
    int r = std::stoi(arg);
    if (r < 1) throw gl::UsageError("ball radius must be >= 1");
    auto gens = make_generators(ctx, gens_spec, seed);
    gl::ElemSet S = gl::ElemSet::from_elems(ctx, gens).symmetrized();
    return gl::power_set(S, r);
  }
  if (kind == "random-sym") {
    std::uint64_t size = std::stoull(arg);
    gl::Rng rng(seed, "random-sym-set");
    return gl::random_symmetric_set(ctx, size, rng);
  }
  if (kind == "cyclic") {
    std::uint64_t N = std::stoull(arg);
    auto gens = make_generators(ctx, gens_spec, seed);
    gl::Elem g = gens.front();
    if (ctx.is_identity(g) && gens.size() > 1) g = gens[1];
    std::vector<gl::Elem> elems{ctx.identity()};
    gl::Elem fwd = ctx.identity(), bwd = ctx.identity();
    gl::Elem gi = ctx.inverse(g);
    for (std::uint64_t i = 0; i < N; ++i) {
      fwd = ctx.mul(fwd, g);
      bwd = ctx.mul(bwd, gi);
      elems.push_back(fwd);
      elems.push_back(bwd);
    }
    return gl::ElemSet::from_elems(ctx, elems);
  }
  throw gl::UsageError("unknown set spec '" + spec + "'");
}

// First regular semisimple diagonal element in lexicographic entry order.
gl::Elem canonical_split_regss(const gl::GroupCtx& ctx) {
  const gl::FieldCtx& F = ctx.field();
  if (ctx.n() == 2) {
    for (gl::felem t = 2; t < F.q(); ++t) {
      gl::Elem g;
      g.e[0] = static_cast<std::uint32_t>(t);
      g.e[3] = static_cast<std::uint32_t>(F.inv(t));
      if (ctx.det(g) == 1 && ctx.is_regular_ss(g)) return g;
    }
  } else {
    for (gl::felem a = 1; a < F.q(); ++a) {
      for (gl::felem b = 1; b < F.q(); ++b) {
        gl::Elem g;
        g.e[0] = static_cast<std::uint32_t>(a);
        g.e[4] = static_cast<std::uint32_t>(b);
        g.e[8] = static_cast<std::uint32_t>(F.inv(F.mul(a, b)));
        if (ctx.is_regular_ss(g)) return g;
      }
    }
  }
  throw gl::PreconditionError("no split regular semisimple element exists at this q");
}

// Companion-form element with irreducible characteristic polynomial (n = 2).
gl::Elem canonical_nonsplit_regss(const gl::GroupCtx& ctx) {
  if (ctx.n() != 2) throw gl::PreconditionError("nonsplit canonical torus requires n = 2");
  const gl::FieldCtx& F = ctx.field();
  if (F.degree() != 1) throw gl::PreconditionError("nonsplit canonical torus requires k = 1");
  for (gl::felem t = 0; t < F.q(); ++t) {
    gl::felem disc = F.sub(F.mul(t, t), F.from_int(4));
    if (F.is_square(disc) == gl::FieldCtx::Square::no) {
      gl::Elem g;
      g.e[0] = 0;
      g.e[1] = 1;
      g.e[2] = static_cast<std::uint32_t>(F.neg(1));
      g.e[3] = static_cast<std::uint32_t>(t);
      return g;
    }
  }
  throw gl::PreconditionError("no nonsplit torus exists at this q");
}

gl::VarietySpec make_variety(const gl::GroupCtx& ctx, const std::string& spec) {
  if (spec == "split-torus") return gl::VarietySpec::maximal_torus(ctx, canonical_split_regss(ctx));
  if (spec == "nonsplit-torus") {
    return gl::VarietySpec::maximal_torus(ctx, canonical_nonsplit_regss(ctx));
  }
  if (spec == "singular") return gl::VarietySpec::singular_set(ctx);
  if (spec == "group") return gl::VarietySpec::whole_group(ctx);
  throw gl::UsageError("unknown variety '" + spec + "'");
}

gl::ScalarSet make_scalar_family(const gl::FieldCtx& F, const std::string& spec,
                                 std::uint64_t seed) {
  auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto len_of = [&]() -> std::uint64_t {
    if (arg.empty()) throw gl::UsageError("family '" + kind + "' needs a length, e.g. " + kind + ":50");
    return std::stoull(arg);
  };
  if (kind == "ap") return gl::ScalarSet::arithmetic_progression(F, 1, 1, len_of());
  if (kind == "gp") {
    if (F.degree() != 1) throw gl::UsageError("gp family needs a prime field");
    gl::felem g = gl::smallest_primitive_root(F.p());
    return gl::ScalarSet::geometric_progression(F, g, len_of());
  }
  if (kind == "random") {
    gl::Rng rng(seed, "scalar-random");
    return gl::ScalarSet::random_subset(F, len_of(), rng);
  }
  if (kind == "ap+gp") {
    auto ap = gl::ScalarSet::arithmetic_progression(F, 1, 1, len_of());
    gl::felem g = gl::smallest_primitive_root(F.p());
    auto gp = gl::ScalarSet::geometric_progression(F, g, len_of());
    std::vector<gl::felem> v = ap.vals;
    v.insert(v.end(), gp.vals.begin(), gp.vals.end());
    return gl::ScalarSet(F, std::move(v));
  }
  if (kind == "subfield") return gl::ScalarSet::prime_subfield(F);
  if (kind == "nonzero") {
    std::vector<gl::felem> v;
    for (gl::felem x = 1; x < F.q(); ++x) v.push_back(x);
    return gl::ScalarSet(F, std::move(v));
  }
  throw gl::UsageError("unknown scalar family '" + spec + "'");
}

struct Output {
  std::ostringstream buf;
  gl::CsvWriter csv{buf};

  void flush(const CommonOpts& common) {
    if (!common.out.empty()) {
      std::ofstream f(common.out, std::ios::binary);
      if (!f) throw gl::UsageError("cannot open output file " + common.out);
      f << buf.str();
    } else {
      std::cout << buf.str();
    }
  }
};

void emit_preamble(Output& out, const CommonOpts& common, const std::string& config) {
  if (!common.deterministic) {
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out.csv.comment(std::string("timestamp ") + stamp);
  }
  out.csv.comment("config " + config);
}

std::string b2s(bool b) { return b ? "1" : "0"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"growthlab: product-set, torus, Cayley-graph and sum-product experiments in SL_n(F_q)"};
  app.require_subcommand(1);

  CommonOpts common;
  std::string gens_spec = "elementary";
  std::string set_spec = "full-group";
  std::string setb_spec = "full-group";
  std::string variety_spec = "split-torus";
  std::string family_spec = "ap:50";
  std::string t1_spec = "split";
  std::string t2_spec = "split";
  std::string a_spec = "random";
  std::string psi_spec;
  std::string dmin_spec = "auto";
  std::string primes_csv = "11,13,17,19,23,29,31,37,41,43,47,53,59,61";
  std::string fit_family = "group";
  int m_power = 1;
  std::uint64_t trials = 20;
  double delta = 0.1;
  double k_thresh = 4.0;
  std::uint64_t set_size = 0;
  int girth_budget = 0;
  bool force_word_search = false;
  std::string a_mat, b_mat;

  auto add_common = [&](CLI::App* sub, bool with_k = true) {
    sub->add_option("--n", common.n, "matrix size n (2 or 3)");
    sub->add_option("--p", common.p, "field characteristic (prime)");
    if (with_k) sub->add_option("--k", common.k, "extension degree (1 or 2)");
    sub->add_option("--seed", common.seed, "RNG seed");
    sub->add_option("--out", common.out, "output CSV path (default stdout)");
    sub->add_flag("--deterministic", common.deterministic,
                  "suppress the timestamp comment for byte-identical reruns");
  };

  CLI::App* c_order = app.add_subcommand("order", "exact |SL_n(F_q)|");
  add_common(c_order);

  CLI::App* c_growth = app.add_subcommand("growth", "sizes of S^(3^i) until near-full or stall");
  add_common(c_growth);
  c_growth->add_option("--gens", gens_spec, "elementary | random | explicit matrices");
  c_growth->add_option("--delta", delta, "stop at |G|^(1-delta)");

  CLI::App* c_cert = app.add_subcommand("approx-cert", "greedy covering certificate for A*A");
  add_common(c_cert);
  c_cert->add_option("--set", set_spec, "full-group | ball:r | random-sym:size | cyclic:N");
  c_cert->add_option("--gens", gens_spec, "generator spec for ball/cyclic sets");

  CLI::App* c_control = app.add_subcommand("control", "control certificate for A by B");
  add_common(c_control);
  c_control->add_option("--set-a", set_spec, "set A");
  c_control->add_option("--set-b", setb_spec, "set B");
  c_control->add_option("--gens", gens_spec, "generator spec for derived sets");

  CLI::App* c_diam = app.add_subcommand("diameter", "exact Cayley diameter over S ∪ S^-1 ∪ {id}");
  add_common(c_diam);
  c_diam->add_option("--gens", gens_spec, "elementary | random | explicit matrices");

  CLI::App* c_girth = app.add_subcommand("girth", "shortest relation among a generator pair");
  add_common(c_girth);
  c_girth->add_option("--a", a_mat, "matrix a (row-major, comma separated)");
  c_girth->add_option("--b", b_mat, "matrix b");
  c_girth->add_option("--budget", girth_budget, "radius budget (0 = default)");

  CLI::App* c_rand = app.add_subcommand("random-stats", "diameter/girth stats over random pairs");
  add_common(c_rand);
  c_rand->add_option("--trials", trials, "number of random pairs");

  CLI::App* c_lp = app.add_subcommand("lp", "intersection exponent |A^m ∩ V|");
  add_common(c_lp);
  c_lp->add_option("--variety", variety_spec, "split-torus | nonsplit-torus | singular | group");
  c_lp->add_option("--set", set_spec, "set A");
  c_lp->add_option("--gens", gens_spec, "generator spec for derived sets");
  c_lp->add_option("--m", m_power, "power of A to intersect");

  CLI::App* c_tori = app.add_subcommand("tori", "involved-tori census of A");
  add_common(c_tori);
  c_tori->add_option("--set", set_spec, "set A");
  c_tori->add_option("--gens", gens_spec, "generator spec for derived sets");

  CLI::App* c_inv = app.add_subcommand("invariance", "conjugation invariance of the census");
  add_common(c_inv);
  c_inv->add_option("--set", set_spec, "set A");
  c_inv->add_option("--gens", gens_spec, "generator spec for derived sets");

  CLI::App* c_conj = app.add_subcommand("conj-product", "|T1^a * T2| growth probe");
  add_common(c_conj);
  c_conj->add_option("--t1", t1_spec, "split | nonsplit");
  c_conj->add_option("--t2", t2_spec, "split | nonsplit");
  c_conj->add_option("--a", a_spec, "random | normalizing | explicit matrix");

  CLI::App* c_dim = app.add_subcommand("dim-fit", "empirical dimension of a variety family");
  add_common(c_dim, false);
  c_dim->add_option("--family", fit_family, "group | split-torus | singular");
  c_dim->add_option("--primes", primes_csv, "comma-separated primes");

  CLI::App* c_sp = app.add_subcommand("sumprod", "sumset/productset sizes for scalar families");
  add_common(c_sp);
  c_sp->add_option("--family", family_spec, "ap:N | gp:N | random:N | ap+gp:N | subfield | all:N");
  c_sp->add_option("--k-thresh", k_thresh, "doubling threshold for the dichotomy flag");

  CLI::App* c_lift = app.add_subcommand("lift", "SL_2 lift of a scalar set and its tripling");
  add_common(c_lift);
  c_lift->add_option("--family", family_spec, "ap:N | gp:N | random:N | nonzero");

  CLI::App* c_gen = app.add_subcommand("gen-test", "Dickson generation test in SL_2(F_p)");
  add_common(c_gen);
  c_gen->add_option("--set", set_spec, "set S");
  c_gen->add_option("--gens", gens_spec, "generator spec for derived sets");
  c_gen->add_flag("--force-word-search", force_word_search, "skip the exact-closure branch");

  CLI::App* c_gowers = app.add_subcommand("gowers", "A^3 = G above the quasirandomness threshold");
  add_common(c_gowers);
  c_gowers->add_option("--dmin", dmin_spec, "auto | integer");
  c_gowers->add_option("--size", set_size, "target |A| (0 = just above threshold)");
  c_gowers->add_option("--trials", trials, "number of seeded sets");

  CLI::App* c_fit = app.add_subcommand("fit", "diameter scaling fit over a prime family");
  add_common(c_fit, false);
  c_fit->add_option("--gens", gens_spec, "generator spec (fixed across primes)");
  c_fit->add_option("--primes", primes_csv, "comma-separated primes");

  std::string subgroup_spec = "center";
  std::uint64_t index_d = 1;
  CLI::App* c_findex = app.add_subcommand("findex",
                                          "does S^(2d-1) generate a finite-index subgroup");
  add_common(c_findex);
  c_findex->add_option("--gens", gens_spec, "generator spec for S");
  c_findex->add_option("--subgroup", subgroup_spec, "center | order-divides:<m>");
  c_findex->add_option("--d", index_d, "index of the subgroup");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Output out;

    auto field = [&]() { return gl::FieldCtx::make(common.p, common.k); };
    auto group = [&]() { return gl::GroupCtx::make(field(), common.n); };
    auto base_config = [&](const std::string& cmd, const std::string& extra) {
      std::string s = "cmd=" + cmd + " n=" + std::to_string(common.n) +
                      " p=" + std::to_string(common.p) + " k=" + std::to_string(common.k) +
                      " seed=" + std::to_string(common.seed);
      if (!extra.empty()) s += " " + extra;
      return s;
    };

    if (*c_order) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common, base_config("order", ""));
      out.csv.header({"n", "q", "order"});
      out.csv.row({std::to_string(ctx.n()), std::to_string(ctx.field().q()),
                   gl::u128_to_string(ctx.order())});
    } else if (*c_growth) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("growth", "gens=" + gens_spec + " delta=" + gl::fmt_ratio(delta)));
      auto gens = make_generators(ctx, gens_spec, common.seed);
      gl::ElemSet S = gl::ElemSet::from_elems(ctx, gens).symmetrized();
      gl::GrowthReport rep = gl::growth_iterate(S, delta);
      const char* verdict = rep.verdict == gl::GrowthVerdict::reached_near_full
                                ? "reached-near-full"
                                : rep.verdict == gl::GrowthVerdict::stalled_proper_subgroup
                                      ? "stalled-proper-subgroup"
                                      : "growing";
      out.csv.header({"i", "radius", "size", "tripling_ratio", "verdict"});
      std::uint64_t r = 1;
      for (std::size_t i = 0; i < rep.sizes.size(); ++i) {
        out.csv.row({std::to_string(i), std::to_string(r), std::to_string(rep.sizes[i]),
                     i ? gl::fmt_ratio(rep.tripling_ratios[i - 1]) : "",
                     verdict});
        r *= 3;
      }
    } else if (*c_cert) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("approx-cert", "set=" + set_spec + " gens=" + gens_spec));
      gl::ElemSet A = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::ApproxCertificate cert = gl::approx_certify(A);
      out.csv.header({"set_size", "k_certified", "sound", "method"});
      out.csv.row({std::to_string(A.size()), std::to_string(cert.k_certified),
                   b2s(gl::verify_cover(A, cert)), cert.method});
    } else if (*c_control) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("control", "set-a=" + set_spec + " set-b=" + setb_spec +
                                               " gens=" + gens_spec));
      gl::ElemSet A = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::ElemSet B = make_set(ctx, setb_spec, gens_spec, common.seed);
      gl::ControlCertificate cert = gl::control_certify(A, B);
      out.csv.header({"a_size", "b_size", "ok", "K", "x_size"});
      out.csv.row({std::to_string(A.size()), std::to_string(B.size()), b2s(cert.ok),
                   std::to_string(cert.K), std::to_string(cert.X.size())});
    } else if (*c_diam) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common, base_config("diameter", "gens=" + gens_spec));
      auto gens = make_generators(ctx, gens_spec, common.seed);
      gl::DiameterResult res = gl::diameter(ctx, gens);
      out.csv.header({"r", "ball_size", "diameter"});
      for (std::size_t r = 0; r < res.profile.size(); ++r) {
        out.csv.row({std::to_string(r), std::to_string(res.profile[r]),
                     std::to_string(res.diameter)});
      }
    } else if (*c_girth) {
      gl::GroupCtx ctx = group();
      gl::Elem a, b;
      if (!a_mat.empty() && !b_mat.empty()) {
        a = parse_explicit_gens(ctx, a_mat).front();
        b = parse_explicit_gens(ctx, b_mat).front();
      } else {
        gl::Rng rng(common.seed, "generator-pair");
        a = ctx.random_element(rng);
        b = ctx.random_element(rng);
      }
      emit_preamble(out, common,
                    base_config("girth", "a=" + matrix_to_string(ctx, a) +
                                             " b=" + matrix_to_string(ctx, b)));
      int budget = girth_budget > 0 ? girth_budget : gl::default_girth_budget(ctx);
      auto g = gl::girth(ctx, a, b, budget);
      out.csv.header({"found", "girth", "budget"});
      out.csv.row({b2s(g.has_value()), g ? std::to_string(*g) : "", std::to_string(budget)});
    } else if (*c_rand) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("random-stats", "trials=" + std::to_string(trials)));
      gl::RandomGenStats stats = gl::random_generator_stats(ctx, trials, common.seed);
      out.csv.header({"row_kind", "trial", "generates", "closure_size", "diameter",
                      "girth_found", "girth", "frac_generating", "diam_median", "diam_max",
                      "girth_median"});
      for (const auto& t : stats.trials) {
        out.csv.row({"trial", std::to_string(t.trial), b2s(t.generates),
                     std::to_string(t.closure_size), t.diam ? std::to_string(*t.diam) : "",
                     b2s(t.girth_len.has_value()),
                     t.girth_len ? std::to_string(*t.girth_len) : "", "", "", ""});
      }
      out.csv.row({"summary", "", "", "", "", "", "", gl::fmt_ratio(stats.generating_fraction),
                   stats.diameters_computed ? std::to_string(stats.diam_median) : "",
                   stats.diameters_computed ? std::to_string(stats.diam_max) : "",
                   std::to_string(stats.girth_median)});
    } else if (*c_lp) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("lp", "variety=" + variety_spec + " set=" + set_spec +
                                          " gens=" + gens_spec + " m=" + std::to_string(m_power)));
      gl::ElemSet A = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::VarietySpec V = make_variety(ctx, variety_spec);
      gl::LPReport rep = gl::lp_exponent(A, V, m_power);
      out.csv.header({"variety", "dim_v", "dim_g", "set_size", "m", "intersection",
                      "predicted_exponent", "observed_exponent", "degenerate"});
      out.csv.row({V.name, std::to_string(V.dim), std::to_string(ctx.dim_g()),
                   std::to_string(rep.set_size), std::to_string(rep.m),
                   std::to_string(rep.intersection_size), gl::fmt_ratio(rep.predicted_exponent),
                   rep.degenerate ? "" : gl::fmt_ratio(rep.observed_exponent),
                   b2s(rep.degenerate)});
    } else if (*c_tori) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common, base_config("tori", "set=" + set_spec + " gens=" + gens_spec));
      gl::ElemSet whole = gl::enumerate_group(ctx);
      gl::ElemSet A = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::TorusCensus census = gl::involved_tori(A, whole);
      out.csv.header({"row_kind", "torus_id", "torus_size", "a2_count", "a2_regss",
                      "involved_count", "a2_size", "exponent_observed", "predicted"});
      for (const auto& [tid, stat] : census.tori) {
        out.csv.row({"torus", std::to_string(tid), std::to_string(stat.torus_size),
                     std::to_string(stat.a2_count), std::to_string(stat.a2_regss_count), "", "",
                     "", ""});
      }
      out.csv.row({"summary", "", "", "", "", std::to_string(census.involved_count),
                   std::to_string(census.a2_size), gl::fmt_ratio(census.exponent_observed),
                   gl::fmt_ratio(census.predicted)});
    } else if (*c_inv) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("invariance", "set=" + set_spec + " gens=" + gens_spec));
      gl::ElemSet whole = gl::enumerate_group(ctx);
      gl::ElemSet A = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::TorusCensus census = gl::involved_tori(A, whole);
      double frac = gl::conjugation_invariance(A, census, whole);
      out.csv.header({"involved_count", "a_size", "fraction"});
      out.csv.row({std::to_string(census.involved_count), std::to_string(A.size()),
                   gl::fmt_ratio(frac)});
    } else if (*c_conj) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("conj-product", "t1=" + t1_spec + " t2=" + t2_spec +
                                                    " a=" + a_spec));
      gl::ElemSet whole = gl::enumerate_group(ctx);
      auto torus_points = [&](const std::string& which) {
        gl::Elem g = which == "nonsplit" ? canonical_nonsplit_regss(ctx)
                                         : canonical_split_regss(ctx);
        return gl::centralizer_set(ctx, g, whole);
      };
      gl::ElemSet T1 = torus_points(t1_spec);
      gl::ElemSet T2 = torus_points(t2_spec);
      gl::Elem a;
      if (a_spec == "random") {
        gl::Rng rng(common.seed, "conj-element");
        a = ctx.random_element(rng);
      } else if (a_spec == "normalizing") {
        gl::ElemSet N = gl::normalizer_of_set(ctx, T1, whole);
        // First normalizer element outside the torus, else the identity.
        a = ctx.identity();
        for (gl::ElemKey k : N.keys()) {
          if (!T1.contains(k)) {
            a = ctx.unkey(k);
            break;
          }
        }
      } else {
        a = parse_explicit_gens(ctx, a_spec).front();
      }
      gl::ConjProductSizes sizes = gl::conjugate_product_growth(ctx, T1, a, T2);
      out.csv.header({"t1_size", "t2_size", "a", "product_size"});
      out.csv.row({std::to_string(sizes.t1_size), std::to_string(sizes.t2_size),
                   matrix_to_string(ctx, a), std::to_string(sizes.product_size)});
    } else if (*c_dim) {
      emit_preamble(out, common,
                    base_config("dim-fit", "family=" + fit_family + " primes=" + primes_csv));
      std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
      std::stringstream ss(primes_csv);
      std::string tok;
      out.csv.header({"row_kind", "p", "count", "slope"});
      while (std::getline(ss, tok, ',')) {
        std::uint64_t p = std::stoull(tok);
        gl::GroupCtx ctx = gl::GroupCtx::make(gl::FieldCtx::make(p, 1), common.n);
        std::uint64_t count = 0;
        if (fit_family == "group") {
          count = ctx.order_u64();
        } else {
          gl::ElemSet whole = gl::enumerate_group(ctx);
          gl::VarietySpec V = make_variety(ctx, fit_family == "split-torus" ? "split-torus"
                                                                            : "singular");
          for (gl::ElemKey k : whole.keys()) {
            if (V.member(ctx.unkey(k))) ++count;
          }
        }
        counts.push_back({p, count});
        out.csv.row({"count", std::to_string(p), std::to_string(count), ""});
      }
      double slope = gl::empirical_dimension(counts);
      out.csv.row({"fit", "", "", gl::fmt_ratio(slope)});
    } else if (*c_sp) {
      gl::FieldCtx F = field();
      emit_preamble(out, common,
                    base_config("sumprod", "family=" + family_spec +
                                               " k-thresh=" + gl::fmt_ratio(k_thresh)));
      std::vector<std::pair<std::string, gl::ScalarSet>> families;
      if (family_spec.rfind("all", 0) == 0) {
        auto colon = family_spec.find(':');
        std::string len = colon == std::string::npos ? "50" : family_spec.substr(colon + 1);
        families.push_back({"ap:" + len, make_scalar_family(F, "ap:" + len, common.seed)});
        families.push_back({"gp:" + len, make_scalar_family(F, "gp:" + len, common.seed)});
        families.push_back({"random:" + len, make_scalar_family(F, "random:" + len, common.seed)});
        families.push_back({"ap+gp:" + len, make_scalar_family(F, "ap+gp:" + len, common.seed)});
        if (F.degree() == 2) {
          families.push_back({"subfield", make_scalar_family(F, "subfield", common.seed)});
        }
      } else {
        families.push_back({family_spec, make_scalar_family(F, family_spec, common.seed)});
      }
      auto rows = gl::dichotomy_scan(families, k_thresh);
      out.csv.header({"family", "size", "sum_size", "prod_size", "k_obs", "flagged"});
      for (const auto& r : rows) {
        out.csv.row({r.family, std::to_string(r.set_size), std::to_string(r.sum_size),
                     std::to_string(r.prod_size), gl::fmt_ratio(r.k_obs), b2s(r.flagged)});
      }
    } else if (*c_lift) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common, base_config("lift", "family=" + family_spec));
      gl::ScalarSet A = make_scalar_family(ctx.field(), family_spec, common.seed);
      gl::ElemSet X = gl::lift_sl2(ctx, A);
      out.csv.header({"a_size", "x_size", "tripling_computed", "x3_size", "ratio", "exponent"});
      const std::uint64_t pairs = static_cast<std::uint64_t>(X.size()) * X.size();
      if (pairs <= gl::kPairBudget / 4) {
        gl::TriplingReport t = gl::tripling(X);
        out.csv.row({std::to_string(A.size()), std::to_string(X.size()), "1",
                     std::to_string(t.size3), gl::fmt_ratio(t.ratio), gl::fmt_ratio(t.exponent)});
      } else {
        out.csv.row({std::to_string(A.size()), std::to_string(X.size()), "0", "", "", ""});
      }
    } else if (*c_gen) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("gen-test", "set=" + set_spec + " gens=" + gens_spec +
                                                " force-word-search=" + b2s(force_word_search)));
      gl::ElemSet S = make_set(ctx, set_spec, gens_spec, common.seed);
      gl::DicksonResult res = gl::dickson_gen_test(ctx, S, force_word_search);
      const char* verdict = res.verdict == gl::DicksonVerdict::generates_sl2
                                ? "generates-sl2"
                                : res.verdict == gl::DicksonVerdict::proper_solvable_witness
                                      ? "proper-solvable-witness"
                                      : res.verdict == gl::DicksonVerdict::proper_small
                                            ? "proper-small"
                                            : "undecided";
      out.csv.header({"verdict", "closure_size", "sample_size", "witness_found"});
      out.csv.row({verdict, std::to_string(res.closure_size), std::to_string(res.sample_size),
                   b2s(res.witness_found)});
    } else if (*c_gowers) {
      gl::GroupCtx ctx = group();
      std::uint64_t d_min = dmin_spec == "auto" ? ctx.quasirandom_dmin() : std::stoull(dmin_spec);
      std::uint64_t target = set_size;
      if (target == 0) {
        // Smallest size with |A|^3 d_min > |G|^3.
        const std::uint64_t order = ctx.order_u64();
        gl::u128 g3 = gl::u128{order} * order * order;
        std::uint64_t lo = 1;
        while (gl::u128{lo} * lo * lo * d_min <= g3) ++lo;
        target = lo;
      }
      emit_preamble(out, common,
                    base_config("gowers", "dmin=" + std::to_string(d_min) +
                                              " size=" + std::to_string(target) +
                                              " trials=" + std::to_string(trials)));
      out.csv.header({"trial", "a_size", "threshold_met", "a3_equals_group"});
      std::vector<gl::GowersCheck> results(trials);
      std::vector<std::uint64_t> sizes(trials);
      gl::parallel_for_index(trials, [&](std::size_t t) {
        gl::Rng rng(common.seed, "gowers-set-" + std::to_string(t));
        gl::ElemSet A = gl::random_symmetric_set(ctx, target, rng);
        sizes[t] = A.size();
        results[t] = gl::gowers_check(ctx, A, d_min);
      });
      for (std::uint64_t t = 0; t < trials; ++t) {
        out.csv.row({std::to_string(t), std::to_string(sizes[t]),
                     b2s(results[t].precondition_met), b2s(results[t].a3_equals_group)});
      }
    } else if (*c_fit) {
      emit_preamble(out, common,
                    base_config("fit", "gens=" + gens_spec + " primes=" + primes_csv));
      std::vector<std::pair<std::uint64_t, std::uint64_t>> order_diam;
      std::stringstream ss(primes_csv);
      std::string tok;
      out.csv.header({"row_kind", "p", "order", "diameter", "c1", "c2"});
      std::vector<std::uint64_t> primes;
      while (std::getline(ss, tok, ',')) primes.push_back(std::stoull(tok));
      std::vector<gl::DiameterResult> res(primes.size());
      std::vector<std::uint64_t> orders(primes.size());
      gl::parallel_for_index(primes.size(), [&](std::size_t i) {
        gl::GroupCtx ctx = gl::GroupCtx::make(gl::FieldCtx::make(primes[i], 1), common.n);
        orders[i] = ctx.order_u64();
        res[i] = gl::diameter(ctx, make_generators(ctx, gens_spec, common.seed));
      });
      for (std::size_t i = 0; i < primes.size(); ++i) {
        order_diam.push_back({orders[i], res[i].diameter});
        out.csv.row({"diam", std::to_string(primes[i]), std::to_string(orders[i]),
                     std::to_string(res[i].diameter), "", ""});
      }
      gl::ScalingFit fit = gl::scaling_fit(order_diam);
      out.csv.row({"fit", "", "", "", gl::fmt_ratio(fit.c1), gl::fmt_ratio(fit.c2)});
    } else if (*c_findex) {
      gl::GroupCtx ctx = group();
      emit_preamble(out, common,
                    base_config("findex", "gens=" + gens_spec + " subgroup=" + subgroup_spec +
                                              " d=" + std::to_string(index_d)));
      std::function<bool(const gl::Elem&)> member;
      if (subgroup_spec == "center") {
        member = [&ctx](const gl::Elem& g) { return ctx.is_central(g); };
      } else if (subgroup_spec.rfind("order-divides:", 0) == 0) {
        std::uint64_t m = std::stoull(subgroup_spec.substr(14));
        if (m == 0) throw gl::UsageError("order-divides needs a positive exponent");
        member = [&ctx, m](const gl::Elem& g) {
          gl::Elem acc = ctx.identity();
          for (std::uint64_t i = 0; i < m; ++i) acc = ctx.mul(acc, g);
          return ctx.is_identity(acc);
        };
      } else {
        throw gl::UsageError("unknown subgroup predicate '" + subgroup_spec + "'");
      }
      auto gens = make_generators(ctx, gens_spec, common.seed);
      gl::ElemSet S = gl::ElemSet::from_elems(ctx, gens).symmetrized();
      gl::FiniteIndexCheck res = gl::finite_index_generation_check(ctx, S, member, index_d);
      out.csv.header({"holds", "gamma", "gamma0", "index", "ball_intersection"});
      out.csv.row({b2s(res.holds), std::to_string(res.gamma_size),
                   std::to_string(res.gamma0_size), std::to_string(res.observed_index),
                   std::to_string(res.intersection_size)});
    }

    out.flush(common);
    return 0;
  } catch (const gl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const gl::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const gl::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
