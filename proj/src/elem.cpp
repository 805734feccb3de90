#include "wittlab/elem.hpp"

#include <algorithm>
#include <climits>
#include <random>
#include <sstream>

namespace wittlab {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// p-adic valuation of c, capped at `cap`.
int vp_of(const BigInt& c, long p, int cap) {
  if (c == 0) return cap;
  BigInt t = c;
  int v = 0;
  while (v < cap && t % p == 0) {
    t /= p;
    ++v;
  }
  return v;
}

}  // namespace

BigInt FieldImpl::pow_p(int n) const {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= p;
  return r;
}

Elem normalized(const Field& F, ElemData d) {
  const int e = F->e;
  if (d.known <= 0) fail(Err::PrecisionExhausted, "no significant digits remain");
  // Never claim more than the coefficients justify.
  d.known = std::min(d.known, e * (d.digits + d.pshift));
  if (d.known <= 0) fail(Err::PrecisionExhausted, "no significant digits remain");

  d.c.resize((size_t)F->f * e, BigInt(0));
  for (;;) {
    // Clamp stored digits to what `known` needs.
    int need = ceil_div(d.known, e) - d.pshift;
    if (need < 1) need = 1;
    if (need < d.digits) d.digits = need;
    BigInt mod = F->pow_p(d.digits);
    int content = d.digits;
    for (auto& c : d.c) {
      c %= mod;
      if (c < 0) c += mod;
      content = std::min(content, vp_of(c, F->p, d.digits));
    }
    if (content == d.digits) {
      // Zero at precision.
      ElemData z;
      z.pshift = 0;
      z.digits = std::max(1, ceil_div(d.known, e));
      z.known = d.known;
      z.c.assign((size_t)F->f * e, BigInt(0));
      Elem r;
      r.fd_ = F;
      r.d_ = std::move(z);
      r.val_ = std::nullopt;
      return r;
    }
    if (content == 0 && d.digits <= need) break;
    if (content > 0) {
      BigInt div = F->pow_p(content);
      for (auto& c : d.c) c /= div;
      d.pshift += content;
      d.digits -= content;
    }
    // Loop: clamping may expose new content and vice versa.
    if (content == 0) break;
  }

  long val = LONG_MAX;
  for (int i = 0; i < F->f; ++i)
    for (int j = 0; j < e; ++j) {
      const BigInt& c = d.c[(size_t)i * e + j];
      if (c == 0) continue;
      int v = vp_of(c, F->p, d.digits);
      val = std::min(val, (long)e * (v + d.pshift) + j);
    }
  Elem r;
  r.fd_ = F;
  if (val >= d.known) {
    ElemData z;
    z.pshift = 0;
    z.digits = std::max(1, ceil_div(d.known, e));
    z.known = d.known;
    z.c.assign((size_t)F->f * e, BigInt(0));
    r.d_ = std::move(z);
    r.val_ = std::nullopt;
  } else {
    r.d_ = std::move(d);
    r.val_ = val;
  }
  return r;
}

Elem Elem::from_data(const Field& F, ElemData d) { return normalized(F, std::move(d)); }

Elem Elem::from_bigint(const Field& F, const BigInt& n) {
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  d.c[0] = n;
  return normalized(F, std::move(d));
}

Elem Elem::from_int(const Field& F, long n) { return from_bigint(F, BigInt(n)); }

Elem Elem::zero(const Field& F) { return zero_known(F, F->e * F->coeff_digits); }

Elem Elem::zero_known(const Field& F, int known) {
  ElemData d;
  d.pshift = 0;
  d.digits = std::max(1, ceil_div(known, F->e));
  d.known = known;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  Elem r;
  r.fd_ = F;
  r.d_ = std::move(d);
  r.val_ = std::nullopt;
  return r;
}

Elem Elem::uniformizer(const Field& F) {
  if (F->e == 1) return from_int(F, F->p).shift_uniformizer(0);
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  d.c[1] = 1;
  return normalized(F, std::move(d));
}

Elem Elem::unram_gen(const Field& F) {
  if (F->f == 1) return one(F);
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  d.c[(size_t)1 * F->e] = 1;
  return normalized(F, std::move(d));
}

Elem Elem::tower_gen(const Field& F, int step_index) {
  if (step_index < 0) return from_data(F, F->base_gen);
  if (step_index >= (int)F->step_gens.size())
    fail(Err::InvalidArgument, "tower step index out of range");
  return from_data(F, F->step_gens[step_index]);
}

Elem Elem::nonsquare_unit(const Field& F) {
  auto ns = F->k->smallest_nonsquare();
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  for (int i = 0; i < F->f; ++i) d.c[(size_t)i * F->e] = ns[i];
  return normalized(F, std::move(d));
}

long Elem::valuation() const {
  if (!val_) fail(Err::PrecisionExhausted, "valuation of zero-at-precision element");
  return *val_;
}

Elem Elem::operator+(const Elem& o) const {
  if (!same_field(fd_, o.fd_)) fail(Err::CaseMismatch, "elements of different fields");
  const int e = fd_->e, f = fd_->f;
  int s = std::min(d_.pshift, o.d_.pshift);
  int da = d_.digits + (d_.pshift - s);
  int db = o.d_.digits + (o.d_.pshift - s);
  ElemData r;
  r.pshift = s;
  r.digits = std::max(da, db);
  r.known = std::min(d_.known, o.d_.known);
  r.c.assign((size_t)f * e, BigInt(0));
  BigInt pa = fd_->pow_p(d_.pshift - s);
  BigInt pb = fd_->pow_p(o.d_.pshift - s);
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = d_.c[i] * pa + o.d_.c[i] * pb;
  return normalized(fd_, std::move(r));
}

Elem Elem::operator-() const {
  ElemData r = d_;
  BigInt mod = fd_->pow_p(d_.digits);
  for (auto& c : r.c) c = (mod - c) % mod;
  return normalized(fd_, std::move(r));
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const {
  if (!same_field(fd_, o.fd_)) fail(Err::CaseMismatch, "elements of different fields");
  const int e = fd_->e, f = fd_->f;
  const long p = fd_->p;

  // Precision of the product.
  long Aa = d_.known, Ab = o.d_.known;
  long va = val_ ? *val_ : Aa;
  long vb = o.val_ ? *o.val_ : Ab;
  long known_r = std::min(Aa + vb, Ab + va);
  if (!val_ || !o.val_) return zero_known(fd_, (int)known_r);

  int W = d_.digits + o.d_.digits + 2;
  BigInt mod = fd_->pow_p(W);

  // Raw convolution in y and x.
  int yext = 3 * f;  // room for U-reduction products
  std::vector<BigInt> acc((size_t)yext * (2 * e), BigInt(0));
  auto at = [&](int i, int j) -> BigInt& { return acc[(size_t)i * (2 * e) + j]; };
  for (int i1 = 0; i1 < f; ++i1)
    for (int j1 = 0; j1 < e; ++j1) {
      const BigInt& c1 = d_.c[(size_t)i1 * e + j1];
      if (c1 == 0) continue;
      for (int i2 = 0; i2 < f; ++i2)
        for (int j2 = 0; j2 < e; ++j2) {
          const BigInt& c2 = o.d_.c[(size_t)i2 * e + j2];
          if (c2 == 0) continue;
          BigInt& slot = at(i1 + i2, j1 + j2);
          slot = (slot + c1 * c2) % mod;
        }
    }
  // x^j with j >= e: multiply by U(y) * p and drop e from j.
  for (int j = 2 * e - 2; j >= e; --j)
    for (int i = 2 * f - 2; i >= 0; --i) {
      BigInt t = at(i, j);
      if (t == 0) continue;
      at(i, j) = 0;
      t = (t * p) % mod;
      for (int u = 0; u < (int)fd_->U.size(); ++u) {
        if (fd_->U[u] == 0) continue;
        BigInt& slot = at(i + u, j - e);
        slot = (slot + t * fd_->U[u]) % mod;
      }
    }
  // y^D with D >= f: reduce by the defining polynomial.
  for (int D = yext - 1; D >= f; --D)
    for (int j = 0; j < e; ++j) {
      BigInt t = at(D, j);
      if (t == 0) continue;
      at(D, j) = 0;
      for (int i = 0; i < f; ++i) {
        if (fd_->h[i] == 0) continue;
        BigInt& slot = at(D - f + i, j);
        slot = (slot - t * fd_->h[i]) % mod;
        if (slot < 0) slot += mod;
      }
    }

  ElemData r;
  r.pshift = d_.pshift + o.d_.pshift;
  r.digits = W;
  r.known = (int)known_r;
  r.c.assign((size_t)f * e, BigInt(0));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < e; ++j) r.c[(size_t)i * e + j] = at(i, j);
  return normalized(fd_, std::move(r));
}

Elem Elem::shift_uniformizer(long k) const {
  const int e = fd_->e;
  if (k == 0) return *this;
  if (e == 1) {
    ElemData r = d_;
    r.pshift += (int)k;
    r.known += (int)k;
    if (!val_) return zero_known(fd_, r.known);
    return normalized(fd_, std::move(r));
  }
  long q = floor_div(k, e);
  long rpow = k - q * e;
  Elem out = *this;
  if (rpow > 0) out = out * Elem::uniformizer(fd_).pow(rpow);
  if (q != 0) {
    // x^(q*e) = (U * p)^q; fold p^q into the shift so no precision is lost.
    Elem upow = unit_poly_value(fd_).pow(std::llabs(q));
    if (q < 0) upow = upow.inv();
    out = out * upow;
    ElemData r = out.d_;
    r.pshift += (int)q;
    r.known += (int)(e * q);
    if (out.is_zero_at_precision()) return zero_known(fd_, r.known);
    out = normalized(fd_, std::move(r));
  }
  return out;
}

Elem Elem::shift_p(long k) const {
  if (k == 0) return *this;
  ElemData r = d_;
  r.pshift += (int)k;
  r.known += (int)(fd_->e * k);
  if (!val_) return zero_known(fd_, r.known);
  return normalized(fd_, std::move(r));
}

Elem unit_poly_value(const Field& F) {
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits + 2;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  for (int i = 0; i < (int)F->U.size(); ++i) d.c[(size_t)i * F->e] = F->U[i];
  return normalized(F, std::move(d));
}

Elem Elem::unit_part() const {
  if (!val_) fail(Err::PrecisionExhausted, "unit part of zero-at-precision element");
  return shift_uniformizer(-*val_);
}

ResidueField::El Elem::residue() const {
  if (!val_ || *val_ != 0)
    fail(Err::InvalidArgument, "residue requires a valuation-zero element");
  ResidueField::El r(fd_->f, 0);
  for (int i = 0; i < fd_->f; ++i)
    r[i] = (long)(d_.c[(size_t)i * fd_->e] % fd_->p);
  return r;
}

Elem Elem::inv() const {
  if (!val_) fail(Err::DivisionByZeroAtPrecision, "inverse of zero-at-precision element");
  long v = *val_;
  Elem u = unit_part();
  // Newton iteration from the residue inverse.
  auto res = u.residue();
  auto resinv = fd_->k->inv(res);
  ElemData z0;
  z0.pshift = 0;
  z0.digits = u.d_.digits;
  z0.known = u.d_.known;
  z0.c.assign((size_t)fd_->f * fd_->e, BigInt(0));
  for (int i = 0; i < fd_->f; ++i) z0.c[(size_t)i * fd_->e] = resinv[i];
  Elem z = normalized(fd_, std::move(z0));
  Elem two = Elem::from_int(fd_, 2);
  int iters = 1;
  while ((1 << iters) < u.d_.known + 1 && iters < 30) ++iters;
  for (int i = 0; i <= iters; ++i) z = z * (two - u * z);
  return z.shift_uniformizer(-v);
}

Elem Elem::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  Elem r = Elem::one(fd_);
  Elem b = *this;
  unsigned long m = (unsigned long)n;
  while (m > 0) {
    if (m & 1) r = r * b;
    b = b * b;
    m >>= 1;
  }
  return r;
}

Elem Elem::truncated(int known) const {
  if (known <= 0) fail(Err::PrecisionExhausted, "truncation to nonpositive precision");
  ElemData r = d_;
  r.known = std::min(r.known, known);
  if (!val_) return zero_known(fd_, r.known);
  return normalized(fd_, std::move(r));
}

bool Elem::same_value(const Elem& o) const {
  Elem d = *this - o;
  return d.is_zero_at_precision();
}

bool Elem::is_one() const { return same_value(Elem::one(fd_)); }

std::string Elem::str() const {
  std::ostringstream os;
  if (!val_) {
    os << "O(pi^" << d_.known << ")";
    return os.str();
  }
  bool first = true;
  for (int i = 0; i < fd_->f; ++i)
    for (int j = 0; j < fd_->e; ++j) {
      const BigInt& c = d_.c[(size_t)i * fd_->e + j];
      if (c == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c;
      if (i > 0) os << "*y^" << i;
      if (j > 0) os << "*x^" << j;
    }
  if (d_.pshift != 0) os << " (* p^" << d_.pshift << ")";
  os << " [known " << d_.known << "]";
  return os.str();
}

Elem substitute_generators(const Field& E, const Field& F, const ElemData& g,
                           const Elem& ey, const Elem& ex) {
  Elem acc = Elem::zero(E);
  for (int i = 0; i < F->f; ++i)
    for (int j = 0; j < F->e; ++j) {
      const BigInt& c = g.c[(size_t)i * F->e + j];
      if (c == 0) continue;
      acc = acc + Elem::from_bigint(E, c) * ey.pow(i) * ex.pow(j);
    }
  if (g.pshift != 0) {
    if (acc.is_zero_at_precision())
      return Elem::zero_known(E, acc.known() + E->e * g.pshift);
    ElemData sd = acc.data();
    sd.pshift += g.pshift;
    sd.known += E->e * g.pshift;
    acc = Elem::from_data(E, std::move(sd));
  }
  return acc;
}

Elem random_elem(const Field& F, unsigned long long seed, long vmin, long vmax) {
  std::mt19937_64 rng(seed);
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  BigInt mod = F->pow_p(d.digits);
  for (auto& c : d.c) {
    BigInt v = 0;
    for (int limb = 0; limb < d.digits; ++limb) v = v * F->p + (long)(rng() % F->p);
    c = v % mod;
  }
  // Force a unit so the valuation is exactly the requested shift.
  d.c[0] = d.c[0] - (d.c[0] % F->p) + 1 + (long)(rng() % (F->p - 1));
  Elem x = normalized(F, std::move(d));
  long v = vmin + (long)(rng() % (unsigned long long)(vmax - vmin + 1));
  return x.shift_uniformizer(v);
}

}  // namespace wittlab
