#include "wittlab/classgroups.hpp"

namespace wittlab {

SquareClass square_class(const Elem& x) {
  if (x.is_zero_at_precision())
    fail(Err::PrecisionExhausted, "square class of zero-at-precision element");
  SquareClass c;
  c.F = x.parent();
  long v = x.valuation();
  c.val_parity = (int)(((v % 2) + 2) % 2);
  Elem u = x.unit_part();
  c.unit_bit = c.F->k->is_square(u.residue()) ? 0 : 1;
  return c;
}

SquareClass sc_one(const Field& F) { return {F, 0, 0}; }

SquareClass sc_of(const Field& F, int val_parity, int unit_bit) {
  return {F, val_parity & 1, unit_bit & 1};
}

SquareClass sc_mul(const SquareClass& a, const SquareClass& b) {
  if (!same_field(a.F, b.F)) fail(Err::CaseMismatch, "square classes of different fields");
  return {a.F, (a.val_parity + b.val_parity) & 1, a.unit_bit ^ b.unit_bit};
}

SquareClass sc_neg(const SquareClass& a) {
  return sc_mul(a, square_class(Elem::from_int(a.F, -1)));
}

Elem sc_representative(const SquareClass& c) {
  Elem r = Elem::one(c.F);
  if (c.unit_bit) r = Elem::nonsquare_unit(c.F);
  if (c.val_parity) r = r * Elem::uniformizer(c.F);
  return r;
}

int hilbert_symbol(const SquareClass& a, const SquareClass& b) {
  if (!same_field(a.F, b.F)) fail(Err::CaseMismatch, "square classes of different fields");
  // (pi,pi) contributes (-1)^((q-1)/2); unit parts pair against valuations.
  long q = a.F->q();
  int s = 1;
  if (a.val_parity && b.val_parity && ((q - 1) / 2) % 2 == 1) s = -s;
  if (a.unit_bit && b.val_parity) s = -s;
  if (b.unit_bit && a.val_parity) s = -s;
  return s;
}

int hilbert_symbol(const Elem& a, const Elem& b) {
  return hilbert_symbol(square_class(a), square_class(b));
}

long QuadExt::val0(const Elem& x) const {
  long v = x.valuation();
  if (ramified) {
    if (((v % 2) + 2) % 2 != 0)
      fail(Err::NotInFixedField, "odd valuation in a ramified quadratic extension");
    return v / 2;
  }
  return v;
}

QuadExt make_quad_ext(const Field& E, const Involution& sigma) {
  if (sigma.trivial()) fail(Err::NotQuadratic, "context needs a nontrivial involution");
  QuadExt ctx;
  ctx.E = E;
  ctx.sigma = sigma;
  ctx.ramified = sigma.kind == Involution::Kind::RamFlip;

  Elem half = Elem::from_int(E, 2).inv();
  if (ctx.ramified) {
    // E0 has the same residue field; x^2 is its uniformizer.
    Elem x = Elem::uniformizer(E);
    ctx.pi0 = x * x;
    ctx.nonsq0 = Elem::nonsquare_unit(E);
    ctx.skew_unit = x;
  } else {
    // E0 is the half-inertia subfield; symmetrize lifts to stay sigma-fixed.
    ctx.pi0 = Elem::uniformizer(E);
    const ResidueField& k = *E->k;
    int half_f = E->f / 2;
    ResidueField::El pick;
    for (long i = 1; i < k.q(); ++i) {
      auto cnd = k.element(i);
      if (!k.in_subfield(cnd, half_f)) continue;
      // nonsquare in the subfield k_{E0}
      long q0 = 1;
      for (int t = 0; t < half_f; ++t) q0 *= k.p();
      if (!k.eq(k.pow(cnd, (q0 - 1) / 2), k.one())) {
        pick = cnd;
        break;
      }
    }
    if (pick.empty()) fail(Err::InvalidArgument, "no nonsquare residue in fixed field");
    ElemData zd;
    zd.pshift = 0;
    zd.digits = E->coeff_digits;
    zd.known = E->e * zd.digits;
    zd.c.assign((size_t)E->f * E->e, BigInt(0));
    for (int i = 0; i < E->f; ++i) zd.c[(size_t)i * E->e] = pick[i];
    Elem z = Elem::from_data(E, std::move(zd));
    ctx.nonsq0 = (z + sigma_apply(sigma, z)) * half;
    Elem y = Elem::unram_gen(E);
    ctx.skew_unit = (y - sigma_apply(sigma, y)) * half;
  }

  // -1 square in E0: in the ramified case this agrees with E; otherwise test
  // the residue cardinality of the fixed field.
  if (ctx.ramified) {
    ctx.minus_one_square_E0 = is_square(Elem::from_int(E, -1)).square;
  } else {
    // Units of E0 are squares iff their residue is; -1 reduces to -1.
    long q0 = 1;
    for (int t = 0; t < E->f / 2; ++t) q0 *= E->p;
    ctx.minus_one_square_E0 = ((q0 - 1) / 2) % 2 == 0;
  }

  // Canonical non-norm and the -1 test; the delta choice is deterministic.
  ctx.minus_one_norm = is_norm(Elem::from_int(E, -1), ctx);
  ctx.delta = ctx.ramified ? ctx.nonsq0 : ctx.pi0;
  if (is_norm(ctx.delta, ctx)) fail(Err::InvalidArgument, "internal: delta is a norm");
  return ctx;
}

bool is_norm(const Elem& x, const QuadExt& ctx) {
  if (x.is_zero_at_precision())
    fail(Err::PrecisionExhausted, "norm test of zero-at-precision element");
  if (!is_sigma_fixed(ctx.sigma, x))
    fail(Err::NotInFixedField, "element is not fixed by the involution");
  long v0 = ctx.val0(x);
  if (!ctx.ramified) return ((v0 % 2) + 2) % 2 == 0;
  bool sq = is_square(x).square;
  bool m1sq = ctx.minus_one_square_E0;
  if (m1sq) return sq;
  return (((v0 % 2) + 2) % 2 == 0) == sq;
}

}  // namespace wittlab
