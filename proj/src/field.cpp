#include "growthlab/field.hpp"

#include <cstdint>

namespace growthlab {

namespace {

constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

// Extended Euclid inverse of a mod p, a in [1, p).
std::uint64_t euclid_inv(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t qq = r / new_r;
    std::int64_t tmp = t - qq * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - qq * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint64_t p, int k, std::uint64_t b, std::uint64_t c)
    : p_(p), k_(k), q_(k == 1 ? p : p * p), mod_b_(b), mod_c_(c) {}

FieldCtx FieldCtx::make(std::uint64_t p, int k) {
  if (p > kMaxPrime) throw UsageError("p must be below 2^31");
  if (!is_prime_u64(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
  if (k != 1 && k != 2) throw UsageError("extension degree must be 1 or 2");
  if (k == 1) return FieldCtx(p, 1, 0, 0);

  // Lexicographically least irreducible monic quadratic x^2 + bx + c.
  // For odd p, x^2 + bx + c is irreducible iff b^2 - 4c is a non-residue.
  if (p == 2) return FieldCtx(2, 2, 1, 1);  // x^2 + x + 1
  FieldCtx base(p, 1, 0, 0);
  for (std::uint64_t b = 0; b < p; ++b) {
    for (std::uint64_t c = 0; c < p; ++c) {
      felem disc = base.sub(base.mul(b, b), base.mul(4 % p, c));
      if (base.is_square(disc) == Square::no) return FieldCtx(p, 2, b, c);
    }
  }
  throw PreconditionError("no irreducible quadratic found");  // unreachable
}

felem FieldCtx::add(felem x, felem y) const {
  if (k_ == 1) {
    felem s = x + y;
    return s >= p_ ? s - p_ : s;
  }
  felem xa = x % p_, xb = x / p_, ya = y % p_, yb = y / p_;
  felem a = xa + ya;
  if (a >= p_) a -= p_;
  felem b = xb + yb;
  if (b >= p_) b -= p_;
  return a + b * p_;
}

felem FieldCtx::sub(felem x, felem y) const { return add(x, neg(y)); }

felem FieldCtx::neg(felem x) const {
  if (k_ == 1) return x == 0 ? 0 : p_ - x;
  felem a = x % p_, b = x / p_;
  felem na = a == 0 ? 0 : p_ - a;
  felem nb = b == 0 ? 0 : p_ - b;
  return na + nb * p_;
}

felem FieldCtx::mul(felem x, felem y) const {
  if (k_ == 1) return (x * y) % p_;
  // (xa + xb t)(ya + yb t) with t^2 = -(B t + C).
  felem xa = x % p_, xb = x / p_, ya = y % p_, yb = y / p_;
  felem t0 = (xa * ya) % p_;
  felem t1 = (xa * yb + xb * ya) % p_;
  felem t2 = (xb * yb) % p_;
  felem a = (t0 + p_ - (t2 * mod_c_) % p_) % p_;
  felem b = (t1 + p_ - (t2 * mod_b_) % p_) % p_;
  return a + b * p_;
}

felem FieldCtx::inv(felem x) const {
  if (x == 0) throw PreconditionError("division by zero in F_q");
  if (k_ == 1) return euclid_inv(x, p_);
  felem a = x % p_, b = x / p_;
  if (b == 0) return euclid_inv(a, p_);
  // Conjugate (a - bB) - b t; norm a^2 - abB + b^2 C lies in F_p.
  felem ca = (a + p_ - (b * mod_b_) % p_) % p_;
  felem cb = p_ - b;
  felem norm = ((a * a) % p_ + (b * b % p_) * mod_c_ % p_ + p_ * 2 - (a * b % p_) * mod_b_ % p_) % p_;
  felem ninv = euclid_inv(norm, p_);
  felem ra = (ca * ninv) % p_;
  felem rb = (cb % p_) * ninv % p_;
  return ra + rb * p_;
}

felem FieldCtx::pow(felem x, std::uint64_t e) const {
  felem acc = 1, base = x;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

felem FieldCtx::from_int(long long v) const {
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += static_cast<long long>(p_);
  return static_cast<felem>(m);
}

FieldCtx::Square FieldCtx::is_square(felem d) const {
  if (k_ != 1) throw PreconditionError("is_square requires a prime field");
  if (p_ == 2) return d == 0 ? Square::zero : Square::yes;
  if (d == 0) return Square::zero;
  felem e = pow(d, (p_ - 1) / 2);
  return e == 1 ? Square::yes : Square::no;
}

felem FieldCtx::frobenius(felem x) const { return pow(x, p_); }

}  // namespace growthlab
