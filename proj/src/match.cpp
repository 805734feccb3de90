#include "wittlab/match.hpp"

#include <algorithm>
#include <numeric>

namespace wittlab {

WittClass MatchingMap::apply(const WittClass& c) const {
  for (size_t i = 0; i < domain.size(); ++i)
    if (witt_eq(domain[i], c)) return image[i];
  fail(Err::UnknownClass, "class is not in the matching domain");
}

WittClass beta_tower_class(const SelfDualContext& ctx, int epsilon) {
  if (ctx.zero) fail(Err::ZeroBeta, "tower class needs a nonzero generator");
  if (epsilon == -1)
    return witt_class(make_unitary_form(ctx.quad, -1, {ctx.beta}));
  return witt_class(make_unitary_form(ctx.quad, 1, {ctx.beta * ctx.beta}));
}

bool w11_equals_wsquares(const SelfDualContext& a, const SelfDualContext& b) {
  if (a.zero || b.zero) fail(Err::ZeroBeta, "both generators must be nonzero");
  bool sa = is_square(Elem::from_int(a.E, -1)).square;
  bool sb = is_square(Elem::from_int(b.E, -1)).square;
  return sa == sb;
}

MatchingMap matching_map(const SelfDualContext& a, const SelfDualContext& b,
                         int epsilon) {
  if (a.zero != b.zero)
    fail(Err::CaseMismatch, "generators must be simultaneously zero or nonzero");
  if (!same_field(a.F, b.F)) fail(Err::CaseMismatch, "contexts have different bases");

  MatchingMap m;
  m.from = a;
  m.to = b;
  m.epsilon = epsilon;

  if (a.zero) {
    // Identity on the Witt group of the base.
    FormCase kind = epsilon == 1 ? FormCase::Orthogonal : FormCase::Symplectic;
    m.domain = enumerate_witt_group(kind, a.F);
    m.image = m.domain;
    return m;
  }

  // "Similar descriptions": both groups cyclic of order 4, or both Klein
  // with generators of equal normalized valuation.
  bool klein_a = a.quad->minus_one_norm;
  bool klein_b = b.quad->minus_one_norm;
  if (klein_a != klein_b)
    fail(Err::DissimilarGroups, "one group is cyclic, the other Klein");
  if (klein_a) {
    long ea = a.E->e / a.F->e, eb = b.E->e / b.F->e;
    if (a.beta.valuation() * eb != b.beta.valuation() * ea)
      fail(Err::DissimilarGroups, "Klein generators have incompatible valuations");
  }

  std::vector<WittClass> Wa = enumerate_witt_group(FormCase::Unitary, a.E, a.quad, epsilon);
  std::vector<WittClass> Wb = enumerate_witt_group(FormCase::Unitary, b.E, b.quad, epsilon);
  if (Wa.size() != Wb.size()) fail(Err::DissimilarGroups, "group orders differ");
  WittClass Ta = beta_tower_class(a, epsilon);
  WittClass Tb = beta_tower_class(b, epsilon);

  // Exhaustive search over bijections constrained by the two defining
  // properties; the map must be unique.
  std::vector<int> perm(Wb.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> found;
  do {
    bool ok = true;
    for (size_t i = 0; i < Wa.size() && ok; ++i) {
      if (Wa[i].diman != Wb[perm[i]].diman) ok = false;
      if (ok && witt_eq(Wa[i], Ta) && !witt_eq(Wb[perm[i]], Tb)) ok = false;
    }
    if (ok) {
      if (!found.empty()) fail(Err::DissimilarGroups, "matching bijection is not unique");
      found = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (found.empty()) fail(Err::DissimilarGroups, "no matching bijection exists");

  m.domain = Wa;
  for (size_t i = 0; i < Wa.size(); ++i) m.image.push_back(Wb[found[i]]);
  return m;
}

WittType make_witt_type(const SelfDualContext& ctx, const WittClass& cls) {
  WittType t;
  t.ctx = ctx;
  t.cls = cls;
  t.diman = cls.diman;
  if (ctx.zero) {
    if (!same_field(cls.F, ctx.F) || cls.kind == FormCase::Unitary)
      fail(Err::CaseMismatch, "zero datum takes a base Witt class");
    t.wtF = cls;
    t.beta_aligned = false;
    return t;
  }
  if (cls.kind != FormCase::Unitary || !same_field(cls.F, ctx.E))
    fail(Err::CaseMismatch, "class must live over the extension");
  t.wtF = transfer_class(cls, standard_linear_form(ctx));
  t.beta_aligned = cls.diman == 1 && witt_eq(cls, beta_tower_class(ctx, cls.epsilon));
  return t;
}

std::vector<WittType> witt_types_of(const SelfDualContext& ctx, int epsilon) {
  std::vector<WittType> out;
  if (ctx.zero) {
    FormCase kind = epsilon == 1 ? FormCase::Orthogonal : FormCase::Symplectic;
    for (const WittClass& c : enumerate_witt_group(kind, ctx.F))
      out.push_back(make_witt_type(ctx, c));
    return out;
  }
  for (const WittClass& c :
       enumerate_witt_group(FormCase::Unitary, ctx.E, ctx.quad, epsilon))
    out.push_back(make_witt_type(ctx, c));
  return out;
}

std::array<int, 8> WittType::canonical_key() const {
  if (diman == 0) return {1, 0, 0, 0, 0, 0, 0, 0};
  std::array<int, 8> k{};
  k[0] = 0;
  k[1] = ctx.zero ? 0 : 1;
  k[2] = diman;
  k[3] = (!ctx.zero && diman == 1 && beta_aligned) ? 1 : 0;
  for (int i = 0; i < 4; ++i) k[4 + i] = wtF.key[i];
  return k;
}

bool witt_type_equiv(const WittType& a, const WittType& b) {
  if (!same_field(a.ctx.F, b.ctx.F)) fail(Err::CaseMismatch, "types over different bases");
  bool hyp_a = a.cls.is_hyperbolic(), hyp_b = b.cls.is_hyperbolic();
  if (hyp_a && hyp_b) return true;
  if (hyp_a != hyp_b) return false;
  if (a.ctx.zero && b.ctx.zero) return witt_eq(a.cls, b.cls);
  if (a.ctx.zero != b.ctx.zero) return false;
  // Nonzero generators: equal transfers and matching towers. Matching
  // preserves the anisotropic dimension and sends the beta-tower to the
  // beta-tower, which pins it on these order-4 groups.
  if (!witt_eq(a.wtF, b.wtF)) return false;
  if (a.diman != b.diman) return false;
  if (a.diman == 1 && a.beta_aligned != b.beta_aligned) return false;
  return true;
}

WittClass wt_f(const WittType& T) { return T.wtF; }

}  // namespace wittlab
