#include "wittlab/elem.hpp"

namespace wittlab {

Elem eval_poly(const EPoly& f, const Elem& x) {
  const Field& F = x.parent();
  Elem r = Elem::zero(F);
  for (int i = (int)f.size() - 1; i >= 0; --i) r = r * x + f[i];
  return r;
}

EPoly poly_derivative(const EPoly& f) {
  EPoly d;
  for (size_t i = 1; i < f.size(); ++i) {
    Elem c = f[i];
    d.push_back(c * Elem::from_int(c.parent(), (long)i));
  }
  return d;
}

Elem hensel_lift_root(const EPoly& f, const Elem& approx, int target_digits) {
  if (f.size() < 2) fail(Err::InvalidArgument, "polynomial must be nonconstant");
  const Field& F = approx.parent();
  for (const Elem& c : f) {
    if (c.is_zero_at_precision()) continue;
    if (c.valuation() < 0) fail(Err::InvalidArgument, "polynomial must be integral");
  }
  if (!approx.is_zero_at_precision() && approx.valuation() < 0)
    fail(Err::InvalidArgument, "approximate root must be integral");

  // Only the residue of the starting point matters; re-lift it exactly so the
  // iteration is not limited by the precision of `approx`.
  int workd = std::max(F->coeff_digits, (target_digits + F->e - 1) / F->e + 1);
  ElemData r0;
  r0.pshift = 0;
  r0.digits = workd;
  r0.known = F->e * workd;
  r0.c.assign((size_t)F->f * F->e, BigInt(0));
  if (!approx.is_zero_at_precision() && approx.valuation() == 0) {
    auto res = approx.residue();
    for (int i = 0; i < F->f; ++i) r0.c[(size_t)i * F->e] = res[i];
  }
  Elem r = Elem::from_data(F, std::move(r0));

  Elem fr = eval_poly(f, r);
  if (!fr.is_zero_at_precision() && fr.valuation() < 1)
    fail(Err::NotARoot, "f(r0) does not vanish in the residue field");
  EPoly fp = poly_derivative(f);
  Elem fpr = eval_poly(fp, r);
  if (fpr.is_zero_at_precision() || fpr.valuation() > 0)
    fail(Err::NoSimpleRoot, "derivative vanishes at the approximate root");

  int iters = 1;
  while ((1 << iters) < target_digits + 1 && iters < 30) ++iters;
  for (int i = 0; i <= iters; ++i) {
    fr = eval_poly(f, r);
    if (fr.is_zero_at_precision()) break;
    fpr = eval_poly(fp, r);
    r = r - fr * fpr.inv();
  }
  fr = eval_poly(f, r);
  if (!fr.is_zero_at_precision() && fr.valuation() < target_digits)
    fail(Err::PrecisionExhausted, "lift did not reach the target precision");
  return r.truncated(std::min(r.known(), std::max(target_digits, 1)));
}

Elem unit_nth_root(const Elem& u, long n, const ResidueField::El& residue_root) {
  const Field& F = u.parent();
  if (u.is_zero_at_precision() || u.valuation() != 0)
    fail(Err::InvalidArgument, "nth root expects a unit");
  if (F->p % n == 0 || n % F->p == 0)
    fail(Err::WildExtension, "root degree divisible by p");
  EPoly f;
  f.push_back(-u);
  for (long i = 1; i < n; ++i) f.push_back(Elem::zero(F));
  f.push_back(Elem::one(F));
  ElemData a;
  a.pshift = 0;
  a.digits = F->coeff_digits;
  a.known = F->e * a.digits;
  a.c.assign((size_t)F->f * F->e, BigInt(0));
  for (int i = 0; i < F->f; ++i) a.c[(size_t)i * F->e] = residue_root[i];
  return hensel_lift_root(f, Elem::from_data(F, std::move(a)), u.known());
}

SquareTest is_square(const Elem& x) {
  if (x.is_zero_at_precision())
    fail(Err::PrecisionExhausted, "square test of zero-at-precision element");
  long v = x.valuation();
  if (((v % 2) + 2) % 2 == 1) return {false, std::nullopt};
  Elem u = x.unit_part();
  auto res = u.residue();
  const ResidueField& k = *x.parent()->k;
  if (!k.is_square(res)) return {false, std::nullopt};
  auto rt = k.sqrt(res);
  Elem w = unit_nth_root(u, 2, *rt).shift_uniformizer(v / 2);
  return {true, w};
}

Elem sigma_apply(const Involution& s, const Elem& x) {
  const Field& F = x.parent();
  if (!same_field(F, s.E)) fail(Err::CaseMismatch, "involution of a different field");
  switch (s.kind) {
    case Involution::Kind::Trivial:
      return x;
    case Involution::Kind::RamFlip: {
      if (x.is_zero_at_precision()) return x;
      ElemData d = x.data();
      BigInt mod = F->pow_p(d.digits);
      for (int i = 0; i < F->f; ++i)
        for (int j = 1; j < F->e; j += 2) {
          BigInt& c = d.c[(size_t)i * F->e + j];
          c = (mod - c) % mod;
        }
      return Elem::from_data(F, std::move(d));
    }
    case Involution::Kind::UnramFrob: {
      if (x.is_zero_at_precision()) return x;
      const ElemData& d = x.data();
      Elem acc;
      for (int i = 0; i < F->f; ++i) {
        ElemData row;
        row.pshift = d.pshift;
        row.digits = d.digits;
        row.known = d.known;
        row.c.assign((size_t)F->f * F->e, BigInt(0));
        bool any = false;
        for (int j = 0; j < F->e; ++j) {
          row.c[j] = d.c[(size_t)i * F->e + j];
          if (row.c[j] != 0) any = true;
        }
        if (!any) continue;
        Elem term = Elem::from_data(F, std::move(row));
        if (i > 0) term = term * Elem::from_data(F, s.frob_pows[i]);
        acc = acc.valid() ? acc + term : term;
      }
      if (!acc.valid()) return x;  // all retained digits vanished
      return acc;
    }
  }
  fail(Err::InvalidArgument, "unreachable");
}

bool is_sigma_fixed(const Involution& s, const Elem& x) {
  return sigma_apply(s, x).same_value(x);
}

bool is_sigma_skew(const Involution& s, const Elem& x) {
  return sigma_apply(s, x).same_value(-x);
}

Elem quadratic_norm(const Elem& x, const Involution& s) {
  if (s.trivial()) fail(Err::NotQuadratic, "norm needs a nontrivial involution");
  return x * sigma_apply(s, x);
}

}  // namespace wittlab
