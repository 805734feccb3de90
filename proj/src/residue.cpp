#include "wittlab/residue.hpp"

#include <algorithm>
#include <cmath>

namespace wittlab {

namespace {

long mod_pos(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long pow_long(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ResidueField::ResidueField(long p, int f, std::vector<long> g)
    : p_(p), f_(f), g_(std::move(g)) {
  if (p < 3 || f < 1) fail(Err::InvalidArgument, "residue field needs odd p and f >= 1");
  if ((long)g_.size() != f_ + 1 || g_[f_] != 1)
    fail(Err::InvalidArgument, "residue modulus must be monic of degree f");
  for (auto& c : g_) c = mod_pos(c, p_);
  q_ = pow_long(p_, f_);
}

ResidueField::El ResidueField::zero() const { return El(f_, 0); }

ResidueField::El ResidueField::one() const {
  El e(f_, 0);
  e[0] = 1;
  return e;
}

ResidueField::El ResidueField::gen() const {
  El e(f_, 0);
  if (f_ == 1) {
    // F_p: the generator of the field over itself is 1.
    e[0] = 1;
  } else {
    e[1] = 1;
  }
  return e;
}

ResidueField::El ResidueField::from_int(long n) const {
  El e(f_, 0);
  e[0] = mod_pos(n, p_);
  return e;
}

ResidueField::El ResidueField::element(long index) const {
  El e(f_, 0);
  for (int i = 0; i < f_; ++i) {
    e[i] = index % p_;
    index /= p_;
  }
  return e;
}

long ResidueField::index_of(const El& a) const {
  long idx = 0;
  for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a[i];
  return idx;
}

bool ResidueField::is_zero(const El& a) const {
  return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

bool ResidueField::eq(const El& a, const El& b) const { return a == b; }

ResidueField::El ResidueField::reduce(std::vector<long> a) const {
  for (int d = (int)a.size() - 1; d >= f_; --d) {
    long c = mod_pos(a[d], p_);
    if (c != 0) {
      for (int i = 0; i < f_; ++i) a[d - f_ + i] = mod_pos(a[d - f_ + i] - c * g_[i], p_);
    }
    a.pop_back();
  }
  a.resize(f_, 0);
  for (auto& c : a) c = mod_pos(c, p_);
  return a;
}

ResidueField::El ResidueField::add(const El& a, const El& b) const {
  El r(f_);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(a[i] + b[i], p_);
  return r;
}

ResidueField::El ResidueField::sub(const El& a, const El& b) const {
  El r(f_);
  for (int i = 0; i < f_; ++i) r[i] = mod_pos(a[i] - b[i], p_);
  return r;
}

ResidueField::El ResidueField::neg(const El& a) const { return sub(zero(), a); }

ResidueField::El ResidueField::mul(const El& a, const El& b) const {
  std::vector<long> prod(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] = mod_pos(prod[i + j] + a[i] * b[j], p_);
  }
  return reduce(std::move(prod));
}

ResidueField::El ResidueField::pow(const El& a, long long e) const {
  if (e < 0) return pow(inv(a), -e);
  El r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

ResidueField::El ResidueField::inv(const El& a) const {
  if (is_zero(a)) fail(Err::DivisionByZeroAtPrecision, "residue inverse of zero");
  return pow(a, q_ - 2);
}

ResidueField::El ResidueField::frobenius(const El& a, int iterations) const {
  El r = a;
  for (int i = 0; i < iterations; ++i) r = pow(r, p_);
  return r;
}

bool ResidueField::is_square(const El& a) const {
  if (is_zero(a)) fail(Err::InvalidArgument, "square test of zero residue");
  return eq(pow(a, (q_ - 1) / 2), one());
}

std::optional<ResidueField::El> ResidueField::sqrt(const El& a) const {
  if (is_zero(a)) return zero();
  if (!is_square(a)) return std::nullopt;
  for (long i = 1; i < q_; ++i) {
    El w = element(i);
    if (eq(mul(w, w), a)) return w;  // first in index order
  }
  return std::nullopt;
}

ResidueField::El ResidueField::smallest_nonsquare() const {
  for (long i = 1; i < q_; ++i) {
    El c = element(i);
    if (!is_square(c)) return c;
  }
  fail(Err::InvalidArgument, "no nonsquare in residue field (p = 2?)");
}

ResidueField::El ResidueField::eval(const Poly& f, const El& x) const {
  El r = zero();
  for (int i = (int)f.size() - 1; i >= 0; --i) r = add(mul(r, x), f[i]);
  return r;
}

std::vector<ResidueField::El> ResidueField::roots(const Poly& f) const {
  std::vector<El> out;
  for (long i = 0; i < q_; ++i) {
    El x = element(i);
    if (is_zero(eval(f, x))) out.push_back(x);
  }
  return out;
}

int ResidueField::orbit_size(const El& a, int d) const {
  El b = a;
  for (int n = 1;; ++n) {
    b = frobenius(b, d);
    if (eq(b, a)) return n;
    if (n > f_) fail(Err::InvalidArgument, "orbit did not close");
  }
}

bool ResidueField::in_subfield(const El& a, int d) const {
  return eq(frobenius(a, d), a);
}

ResidueField::Poly ResidueField::min_poly_over(const El& a, int d) const {
  if (f_ % d != 0) fail(Err::InvalidArgument, "subfield degree must divide f");
  std::vector<El> orbit{a};
  El b = frobenius(a, d);
  while (!eq(b, a)) {
    orbit.push_back(b);
    b = frobenius(b, d);
  }
  // prod (X - c), c over the orbit
  Poly poly{one()};
  for (const El& c : orbit) {
    Poly next(poly.size() + 1, zero());
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = add(next[i + 1], poly[i]);
      next[i] = sub(next[i], mul(c, poly[i]));
    }
    poly = next;
  }
  for (const El& c : poly)
    if (!in_subfield(c, d)) fail(Err::InvalidArgument, "minimal polynomial coefficients escaped subfield");
  return poly;
}

bool ResidueField::poly_irreducible_over_fp(long p, const std::vector<long>& g) {
  int f = (int)g.size() - 1;
  if (f < 1 || g[f] != 1) return false;
  if (f == 1) return true;
  // Work in the canonical field of degree f and count roots with full orbits.
  ResidueField big(p, f, canonical_irreducible(p, f));
  Poly gp;
  for (long c : g) gp.push_back(big.from_int(c));
  auto rs = big.roots(gp);
  if ((int)rs.size() != f) return false;
  for (const auto& r : rs)
    if (big.orbit_size(r, 1) != f) return false;
  return true;
}

std::vector<long> ResidueField::canonical_irreducible(long p, int f) {
  if (f == 1) return {0, 1};  // the polynomial t
  // First monic irreducible in base-p counting order of (c_0, ..., c_{f-1}).
  long count = pow_long(p, f);
  for (long k = 0; k < count; ++k) {
    std::vector<long> g(f + 1, 0);
    long t = k;
    for (int i = 0; i < f; ++i) {
      g[i] = t % p;
      t /= p;
    }
    g[f] = 1;
    if (g[0] == 0) continue;  // divisible by t
    // Irreducibility by trial: no roots in any proper subextension reached
    // via the naive criterion below (degree <= 4 in practice).
    bool irreducible = true;
    // Check for irreducible factors of degree d < f by scanning F_{p^d}.
    for (int d = 1; irreducible && 2 * d <= f; ++d) {
      if (d == 1) {
        for (long x = 0; x < p && irreducible; ++x) {
          long v = 0;
          for (int i = f; i >= 0; --i) v = mod_pos(v * x + g[i], p);
          if (v == 0) irreducible = false;
        }
      } else {
        ResidueField sub(p, d, canonical_irreducible(p, d));
        Poly gp;
        for (long c : g) gp.push_back(sub.from_int(c));
        for (long i = 0; i < sub.q() && irreducible; ++i) {
          El x = sub.element(i);
          if (sub.orbit_size(x, 1) != d) continue;
          if (sub.is_zero(sub.eval(gp, x))) irreducible = false;
        }
      }
    }
    if (irreducible) return g;
  }
  fail(Err::NotIrreducible, "no irreducible polynomial found");
}

}  // namespace wittlab
