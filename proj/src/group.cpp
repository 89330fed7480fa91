#include "growthlab/group.hpp"

#include <algorithm>
#include <bit>

#include "growthlab/errors.hpp"

namespace growthlab {

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

namespace {

u128 checked_mul_u128(u128 a, u128 b) {
  if (a != 0 && b > ~u128{0} / a) {
    throw PreconditionError("group order exceeds 128-bit range");
  }
  return a * b;
}

}  // namespace

GroupCtx::GroupCtx(FieldCtx field, int n) : field_(field), n_(n) {
  dim_g_ = n * n - 1;
  rank_ = n - 1;
  const std::uint64_t q = field_.q();
  entry_bits_ = std::max(1, static_cast<int>(std::bit_width(q - 1)));
  key_bits_ = n * n * entry_bits_;
  if (key_bits_ > 63) {
    throw UsageError("key packing needs " + std::to_string(key_bits_) +
                     " bits; 64-bit keys require n^2*ceil(log2 q) <= 63");
  }
  // |SL_n(F_q)| = (q^n - 1)(q^n - q)...(q^n - q^{n-1}) / (q - 1); the first
  // factor divided by q - 1 is 1 + q + ... + q^{n-1}, kept exact throughout.
  u128 qn = 1;
  for (int i = 0; i < n; ++i) qn = checked_mul_u128(qn, q);
  u128 acc = 0, qp = 1;
  for (int i = 0; i < n; ++i) {
    acc += qp;
    qp = checked_mul_u128(qp, q);
  }
  u128 qi = q;
  for (int i = 1; i < n; ++i) {
    acc = checked_mul_u128(acc, qn - qi);
    qi = checked_mul_u128(qi, q);
  }
  order_ = acc;
}

GroupCtx GroupCtx::make(FieldCtx field, int n) {
  if (n != 2 && n != 3) throw UsageError("n must be 2 or 3");
  return GroupCtx(field, n);
}

std::uint64_t GroupCtx::order_u64() const {
  if (order_ > u128{~std::uint64_t{0} >> 1}) {
    throw PreconditionError("group order does not fit in 63 bits");
  }
  return static_cast<std::uint64_t>(order_);
}

int GroupCtx::dim_of(VarietyKind kind) const {
  switch (kind) {
    case VarietyKind::group: return n_ * n_ - 1;
    case VarietyKind::maximal_torus: return n_ - 1;
    case VarietyKind::regular_ss_conjugacy_class: return n_ * n_ - n_;
    case VarietyKind::singular_set: return n_ * n_ - 2;
    case VarietyKind::centralizer_regular_ss: return n_ - 1;
  }
  throw PreconditionError("unknown variety kind");
}

Elem GroupCtx::identity() const {
  Elem r;
  for (int i = 0; i < n_; ++i) r.e[i * n_ + i] = 1;
  return r;
}

Elem GroupCtx::mul(const Elem& a, const Elem& b) const {
  const FieldCtx& F = field_;
  Elem r;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      felem acc = 0;
      for (int k = 0; k < n_; ++k) {
        acc = F.add(acc, F.mul(a.e[i * n_ + k], b.e[k * n_ + j]));
      }
      r.e[i * n_ + j] = static_cast<std::uint32_t>(acc);
    }
  }
  return r;
}

Elem GroupCtx::inverse(const Elem& a) const {
  const FieldCtx& F = field_;
  Elem r;
  if (n_ == 2) {
    r.e[0] = a.e[3];
    r.e[1] = static_cast<std::uint32_t>(F.neg(a.e[1]));
    r.e[2] = static_cast<std::uint32_t>(F.neg(a.e[2]));
    r.e[3] = a.e[0];
    return r;
  }
  // Adjugate of a 3x3 matrix with det = 1.
  auto at = [&](int i, int j) -> felem { return a.e[i * 3 + j]; };
  auto cof = [&](int i, int j) -> felem {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return F.sub(F.mul(at(r0, c0), at(r1, c1)), F.mul(at(r0, c1), at(r1, c0)));
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r.e[i * 3 + j] = static_cast<std::uint32_t>(cof(j, i));
    }
  }
  return r;
}

Elem GroupCtx::conjugate(const Elem& g, const Elem& a) const {
  return mul(mul(inverse(a), g), a);
}

felem GroupCtx::det(const Elem& a) const {
  const FieldCtx& F = field_;
  if (n_ == 2) {
    return F.sub(F.mul(a.e[0], a.e[3]), F.mul(a.e[1], a.e[2]));
  }
  felem d = 0;
  d = F.mul(a.e[0], F.sub(F.mul(a.e[4], a.e[8]), F.mul(a.e[5], a.e[7])));
  d = F.sub(d, F.mul(a.e[1], F.sub(F.mul(a.e[3], a.e[8]), F.mul(a.e[5], a.e[6]))));
  d = F.add(d, F.mul(a.e[2], F.sub(F.mul(a.e[3], a.e[7]), F.mul(a.e[4], a.e[6]))));
  return d;
}

felem GroupCtx::trace(const Elem& a) const {
  felem t = 0;
  for (int i = 0; i < n_; ++i) t = field_.add(t, a.e[i * n_ + i]);
  return t;
}

bool GroupCtx::is_identity(const Elem& a) const { return a == identity(); }

bool GroupCtx::commutes(const Elem& a, const Elem& b) const {
  return mul(a, b) == mul(b, a);
}

ElemKey GroupCtx::key(const Elem& a) const {
  ElemKey k = 0;
  const int nn = n_ * n_;
  for (int i = 0; i < nn; ++i) k = (k << entry_bits_) | a.e[i];
  return k;
}

Elem GroupCtx::unkey(ElemKey k) const {
  Elem r;
  const int nn = n_ * n_;
  const ElemKey mask = (ElemKey{1} << entry_bits_) - 1;
  for (int i = nn - 1; i >= 0; --i) {
    r.e[i] = static_cast<std::uint32_t>(k & mask);
    k >>= entry_bits_;
  }
  return r;
}

std::array<felem, 4> GroupCtx::char_poly(const Elem& g) const {
  const FieldCtx& F = field_;
  std::array<felem, 4> c{0, 0, 0, 0};
  if (n_ == 2) {
    // x^2 - t x + 1
    c[2] = 1;
    c[1] = F.neg(trace(g));
    c[0] = 1;
  } else {
    // x^3 - t x^2 + s x - 1 with s the sum of principal 2x2 minors.
    auto at = [&](int i, int j) -> felem { return g.e[i * 3 + j]; };
    felem s = 0;
    s = F.add(s, F.sub(F.mul(at(0, 0), at(1, 1)), F.mul(at(0, 1), at(1, 0))));
    s = F.add(s, F.sub(F.mul(at(0, 0), at(2, 2)), F.mul(at(0, 2), at(2, 0))));
    s = F.add(s, F.sub(F.mul(at(1, 1), at(2, 2)), F.mul(at(1, 2), at(2, 1))));
    c[3] = 1;
    c[2] = F.neg(trace(g));
    c[1] = s;
    c[0] = F.neg(1);
  }
  return c;
}

namespace {

// Degree of a coefficient vector, -1 for the zero polynomial.
int poly_deg(const std::array<felem, 4>& f) {
  for (int i = 3; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

// Remainder of f mod g over F_q (g nonzero).
std::array<felem, 4> poly_rem(const FieldCtx& F, std::array<felem, 4> f,
                              const std::array<felem, 4>& g) {
  int dg = poly_deg(g);
  felem lead_inv = F.inv(g[dg]);
  for (int df = poly_deg(f); df >= dg; df = poly_deg(f)) {
    felem coef = F.mul(f[df], lead_inv);
    for (int i = 0; i <= dg; ++i) {
      f[df - dg + i] = F.sub(f[df - dg + i], F.mul(coef, g[i]));
    }
  }
  return f;
}

}  // namespace

bool GroupCtx::is_regular_ss(const Elem& g) const {
  if (field_.q() <= static_cast<std::uint64_t>(n_)) {
    throw PreconditionError("regular semisimple test requires q > n");
  }
  const FieldCtx& F = field_;
  std::array<felem, 4> f = char_poly(g);
  // Derivative; coefficients i * c_i reduce through the prime subfield.
  std::array<felem, 4> df{0, 0, 0, 0};
  for (int i = 1; i <= n_; ++i) {
    df[i - 1] = F.mul(f[i], F.from_int(i));
  }
  // gcd(f, f') = 1 iff f is squarefree over the closure.
  std::array<felem, 4> a = f, b = df;
  while (poly_deg(b) >= 0) {
    auto r = poly_rem(F, a, b);
    a = b;
    b = r;
  }
  return poly_deg(a) == 0;
}

std::vector<Elem> GroupCtx::center() const {
  // Scalars lambda*I with lambda^n = 1. The n-th roots of unity in F_q form
  // the cyclic subgroup of order gcd(n, q-1), found from any generator of
  // the group of units of a small search window; n <= 3 keeps this direct.
  std::vector<felem> roots{1};
  const std::uint64_t q = field_.q();
  if (n_ == 2) {
    if (q % 2 == 1) roots.push_back(field_.neg(1));
  } else {
    // Roots of x^2 + x + 1, present exactly when 3 divides q - 1.
    if ((q - 1) % 3 == 0) {
      for (felem w = 2; w < q; ++w) {
        if (field_.add(field_.add(field_.mul(w, w), w), 1) == 0) {
          roots.push_back(w);
          roots.push_back(field_.mul(w, w));
          break;
        }
      }
    }
  }
  std::vector<Elem> out;
  for (felem lam : roots) {
    Elem z;
    for (int i = 0; i < n_; ++i) z.e[i * n_ + i] = static_cast<std::uint32_t>(lam);
    out.push_back(z);
  }
  return out;
}

bool GroupCtx::is_central(const Elem& g) const {
  felem lam = g.e[0];
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      felem want = (i == j) ? lam : 0;
      if (g.e[i * n_ + j] != want) return false;
    }
  }
  return field_.pow(lam, static_cast<std::uint64_t>(n_)) == 1;
}

std::vector<Elem> GroupCtx::elementary_generators() const {
  // E_ij(b) for i != j over the basis {1} (k = 1) or {1, theta} (k = 2),
  // plus inverses and the identity.
  std::vector<felem> basis{1};
  if (field_.degree() == 2) basis.push_back(field_.p());  // code of theta
  std::vector<Elem> gens{identity()};
  auto push_unique = [&](const Elem& g) {
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  };
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      for (felem b : basis) {
        Elem t = identity();
        t.e[i * n_ + j] = static_cast<std::uint32_t>(b);
        push_unique(t);
        push_unique(inverse(t));
      }
    }
  }
  return gens;
}

Elem GroupCtx::random_element(Rng& rng) const {
  const std::uint64_t q = field_.q();
  const FieldCtx& F = field_;
  for (;;) {
    Elem m;
    for (int i = 0; i < n_ * n_; ++i) {
      m.e[i] = static_cast<std::uint32_t>(rng.below(q));
    }
    felem d = det(m);
    if (d == 0) continue;
    // Scale the last row by det^-1; fibers of this map are the q-1 scalings,
    // so uniform on GL_n pushes to uniform on SL_n.
    felem di = F.inv(d);
    for (int j = 0; j < n_; ++j) {
      int idx = (n_ - 1) * n_ + j;
      m.e[idx] = static_cast<std::uint32_t>(F.mul(m.e[idx], di));
    }
    return m;
  }
}

std::uint64_t GroupCtx::quasirandom_dmin() const {
  if (n_ == 2 && field_.degree() == 1 && field_.p() >= 5) {
    return (field_.p() - 1) / 2;
  }
  throw PreconditionError("d_min configured only for SL_2(F_p), p >= 5");
}

Elem GroupCtx::elem_from_entries(const std::array<std::uint32_t, 9>& entries) const {
  Elem g;
  const std::uint64_t q = field_.q();
  for (int i = 0; i < n_ * n_; ++i) {
    if (entries[i] >= q) throw UsageError("matrix entry out of field range");
    g.e[i] = entries[i];
  }
  if (det(g) != 1) throw UsageError("matrix determinant is not 1");
  return g;
}

}  // namespace growthlab
