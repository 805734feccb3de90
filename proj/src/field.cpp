#include "wittlab/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wittlab/elem.hpp"

namespace wittlab {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Exact product of integer polynomials reduced mod h (monic, integer
// coefficients). Used for the flat Eisenstein units, which must stay exact.
std::vector<BigInt> poly_mul_mod_h(const std::vector<BigInt>& a,
                                   const std::vector<BigInt>& b,
                                   const std::vector<long>& h) {
  int f = (int)h.size() - 1;
  std::vector<BigInt> prod(a.size() + b.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  for (int D = (int)prod.size() - 1; D >= f; --D) {
    BigInt t = prod[D];
    if (t == 0) continue;
    prod[D] = 0;
    for (int i = 0; i < f; ++i) prod[D - f + i] -= t * h[i];
  }
  prod.resize(std::max<size_t>(f, 1), BigInt(0));
  return prod;
}

std::vector<BigInt> poly_pow_mod_h(std::vector<BigInt> base, int n,
                                   const std::vector<long>& h) {
  std::vector<BigInt> r{BigInt(1)};
  while (n > 0) {
    if (n & 1) r = poly_mul_mod_h(r, base, h);
    base = poly_mul_mod_h(base, base, h);
    n >>= 1;
  }
  return r;
}

ElemData exact_unit_data(const Field& F, const std::vector<BigInt>& upoly,
                         int extra_digits = 2) {
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits + extra_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  BigInt mod = F->pow_p(d.digits);
  for (size_t i = 0; i < upoly.size() && (int)i < F->f; ++i) {
    BigInt c = upoly[i] % mod;
    if (c < 0) c += mod;
    d.c[i * F->e] = c;
  }
  return d;
}

// Lift a residue element to an exact ElemData at working precision.
ElemData lift_residue(const Field& F, const ResidueField::El& r) {
  ElemData d;
  d.pshift = 0;
  d.digits = F->coeff_digits;
  d.known = F->e * d.digits;
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  for (int i = 0; i < F->f && i < (int)r.size(); ++i) d.c[(size_t)i * F->e] = r[i];
  return d;
}

// Hensel root of the integer polynomial g (monic irreducible mod p) in F,
// starting from the given residue root.
Elem lift_integer_poly_root(const Field& F, const std::vector<long>& g,
                            const ResidueField::El& residue_root) {
  EPoly poly;
  for (long c : g) poly.push_back(Elem::from_int(F, c));
  Elem start = Elem::from_data(F, lift_residue(F, residue_root));
  return hensel_lift_root(poly, start, F->e * F->coeff_digits);
}

}  // namespace

std::string FieldImpl::describe() const {
  std::ostringstream os;
  os << "Q_" << p;
  if (f0 > 1) os << "(f0=" << f0 << ")";
  for (const auto& s : steps) {
    if (s.kind == TowerStep::Kind::Unramified)
      os << " +ur(" << s.param << ")";
    else
      os << " +eis(" << s.param << ")";
  }
  os << " [e=" << e << ",f=" << f << "]";
  return os.str();
}

Field make_field(long p, int f0, int digits, const std::vector<long>& residue_poly) {
  if (p == 2) fail(Err::EvenResidueChar, "residual characteristic must be odd");
  if (!is_prime(p)) fail(Err::InvalidArgument, "p must be an odd prime");
  if (f0 < 1) fail(Err::InvalidArgument, "residue degree must be positive");
  if (digits < 8) fail(Err::InvalidArgument, "working precision must be >= 8");

  auto impl = std::make_shared<FieldImpl>();
  impl->p = p;
  impl->f0 = f0;
  impl->f = f0;
  impl->e = 1;
  impl->digits = digits;
  impl->coeff_digits = digits;
  if (residue_poly.empty()) {
    impl->base_poly = ResidueField::canonical_irreducible(p, f0);
  } else {
    if ((int)residue_poly.size() != f0 + 1 || residue_poly[f0] != 1)
      fail(Err::InvalidArgument, "residue polynomial must be monic of degree f0");
    if (!ResidueField::poly_irreducible_over_fp(p, residue_poly))
      fail(Err::NotIrreducible, "supplied residue polynomial factors");
    impl->base_poly = residue_poly;
  }
  impl->h = impl->base_poly;
  impl->U = {BigInt(1)};
  impl->k = std::make_unique<ResidueField>(p, f0, impl->h);

  Field F = impl;
  impl->base_gen = (f0 > 1 ? Elem::unram_gen(F) : Elem::one(F)).data();
  return F;
}

Field extend_unramified(const Field& F, int fstep, const std::vector<long>& poly) {
  TowerStep s;
  s.kind = TowerStep::Kind::Unramified;
  s.param = fstep;
  s.poly = poly;
  return extend(F, s);
}

Field extend_eisenstein(const Field& F, int estep, const std::vector<long>& unit) {
  TowerStep s;
  s.kind = TowerStep::Kind::Eisenstein;
  s.param = estep;
  s.unit = unit;
  return extend(F, s);
}

Field extend(const Field& F, const TowerStep& step) {
  if (step.param < 1) fail(Err::InvalidArgument, "step degree must be positive");

  auto impl = std::make_shared<FieldImpl>();
  impl->p = F->p;
  impl->f0 = F->f0;
  impl->base_poly = F->base_poly;
  impl->steps = F->steps;
  impl->steps.push_back(step);
  impl->digits = F->digits;
  impl->parent = F;

  if (step.kind == TowerStep::Kind::Eisenstein) {
    if (std::gcd((long)step.param, F->p) != 1)
      fail(Err::WildExtension, "ramification degree divisible by p");
    impl->f = F->f;
    impl->e = F->e * step.param;
    impl->h = F->h;
    impl->coeff_digits = std::max(1, ceil_div(F->digits, impl->e));

    // Unit of the step: polynomial in the current unramified generator.
    std::vector<long> uraw = step.unit.empty() ? std::vector<long>{1} : step.unit;
    if ((int)uraw.size() > F->f)
      fail(Err::InvalidArgument, "unit polynomial degree exceeds inertia degree");
    ResidueField::El ru(F->f, 0);
    for (size_t i = 0; i < uraw.size(); ++i) ru[i] = ((uraw[i] % F->p) + F->p) % F->p;
    if (F->k->is_zero(ru)) fail(Err::InvalidArgument, "Eisenstein constant must be a unit");

    // x_new^(e_new) = u^(e_old) * U_old * p, all exact.
    std::vector<BigInt> ub;
    for (long c : uraw) ub.push_back(BigInt(c));
    impl->U = poly_mul_mod_h(poly_pow_mod_h(ub, F->e, F->h), F->U, F->h);
    impl->k = std::make_unique<ResidueField>(F->p, impl->f, impl->h);

    Field E = impl;
    // Old generators: y is unchanged; old x = x_new^(e_step) / u.
    impl->emb_y = Elem::unram_gen(E).data();
    Elem unit_elem = Elem::from_data(E, exact_unit_data(E, ub));
    Elem xnew = Elem::uniformizer(E);
    impl->emb_x = (xnew.pow(step.param) * unit_elem.inv()).data();
    {
      Elem ey = Elem::from_data(E, impl->emb_y);
      Elem ex = F->e > 1 ? Elem::from_data(E, impl->emb_x) : Elem::one(E);
      impl->base_gen = substitute_generators(E, F, F->base_gen, ey, ex).data();
      for (const auto& g : F->step_gens)
        impl->step_gens.push_back(substitute_generators(E, F, g, ey, ex).data());
    }
    impl->step_gens.push_back(Elem::uniformizer(E).data());
    return E;
  }

  // Unramified step.
  impl->f = F->f * step.param;
  impl->e = F->e;
  impl->h = ResidueField::canonical_irreducible(F->p, impl->f);
  impl->k = std::make_unique<ResidueField>(F->p, impl->f, impl->h);
  impl->coeff_digits = std::max(1, ceil_div(F->digits, impl->e));

  // Residue-level embedding of the old residue field.
  ResidueField::Poly oldmod;
  for (long c : F->h) oldmod.push_back(impl->k->from_int(c));
  auto roots = impl->k->roots(oldmod);
  if (roots.empty()) fail(Err::InvalidArgument, "internal: no residue embedding");
  std::sort(roots.begin(), roots.end(),
            [&](const auto& a, const auto& b) { return impl->k->index_of(a) < impl->k->index_of(b); });
  ResidueField::El rbar = roots[0];
  auto embed_res = [&](const ResidueField::El& a) {
    ResidueField::Poly ap;
    for (long c : a) ap.push_back(impl->k->from_int(c));
    return impl->k->eval(ap, rbar);
  };

  // New exact unit: the canonical lift of the embedded residue of U_old.
  ResidueField::El ures(F->f, 0);
  {
    // U_old has exact integer coefficients; only its residue matters here.
    for (int i = 0; i < F->f; ++i) {
      BigInt c = F->U[i] % F->p;
      if (c < 0) c += F->p;
      ures[i] = (long)c;
    }
  }
  auto ures_new = embed_res(ures);
  impl->U.assign(impl->f, BigInt(0));
  for (int i = 0; i < impl->f; ++i) impl->U[i] = ures_new[i];
  if (F->e == 1) impl->U = {BigInt(1)};

  Field E = impl;
  // y_old lifts to the Hensel root of the old defining polynomial over rbar.
  impl->emb_y = (F->f > 1 ? lift_integer_poly_root(E, F->h, rbar) : Elem::one(E)).data();

  if (F->e > 1) {
    // x_old = x_new * w with w^e = U_old(emb_y) / U_new, w = 1 mod pi.
    Elem uold = Elem::zero(E);
    Elem ey = Elem::from_data(E, impl->emb_y);
    for (int i = 0; i < F->f; ++i) {
      BigInt c = F->U[i];
      if (c == 0) continue;
      uold = uold + Elem::from_bigint(E, c) * ey.pow(i);
    }
    std::vector<BigInt> unew_poly = impl->U;
    Elem unew = Elem::from_data(E, exact_unit_data(E, unew_poly));
    Elem ratio = uold * unew.inv();
    Elem w = unit_nth_root(ratio, F->e, impl->k->one());
    impl->emb_x = (Elem::uniformizer(E) * w).data();
  }

  // Map the old tower generators through the embedding.
  {
    Elem ey = Elem::from_data(E, impl->emb_y);
    Elem ex = F->e > 1 ? Elem::from_data(E, impl->emb_x) : Elem::one(E);
    impl->base_gen = substitute_generators(E, F, F->base_gen, ey, ex).data();
    for (const auto& g : F->step_gens)
      impl->step_gens.push_back(substitute_generators(E, F, g, ey, ex).data());
  }

  // Generator of this step.
  if (step.poly.empty()) {
    impl->step_gens.push_back(Elem::unram_gen(E).data());
  } else {
    // Coefficients are element indices over the previous residue field.
    if ((int)step.poly.size() != step.param + 1 || step.poly[step.param] != 1)
      fail(Err::InvalidArgument, "step polynomial must be monic of its degree");
    ResidueField::Poly mapped;
    for (long idx : step.poly) {
      if (idx < 0 || idx >= F->q()) fail(Err::InvalidArgument, "coefficient index out of range");
      mapped.push_back(embed_res(F->k->element(idx)));
    }
    auto rs = impl->k->roots(mapped);
    int want = step.param;
    int full_orbits = 0;
    for (const auto& r : rs)
      if (impl->k->orbit_size(r, F->f) == want) ++full_orbits;
    if ((int)rs.size() != want || full_orbits != want)
      fail(Err::NotIrreducible, "step polynomial is not irreducible over the residue field");
    std::sort(rs.begin(), rs.end(), [&](const auto& a, const auto& b) {
      return impl->k->index_of(a) < impl->k->index_of(b);
    });
    // Hensel-lift the chosen root of the lifted polynomial.
    EPoly lifted;
    for (const auto& c : mapped) lifted.push_back(Elem::from_data(E, lift_residue(E, c)));
    Elem gen = hensel_lift_root(lifted, Elem::from_data(E, lift_residue(E, rs[0])),
                                E->e * E->coeff_digits);
    impl->step_gens.push_back(gen.data());
  }
  return E;
}

bool same_field(const Field& a, const Field& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->p != b->p || a->f0 != b->f0 || a->base_poly != b->base_poly) return false;
  if (a->steps.size() != b->steps.size()) return false;
  for (size_t i = 0; i < a->steps.size(); ++i) {
    const auto& s = a->steps[i];
    const auto& t = b->steps[i];
    if (s.kind != t.kind || s.param != t.param || s.poly != t.poly || s.unit != t.unit)
      return false;
  }
  return true;
}

bool is_ancestor(const Field& anc, const Field& desc) {
  Field cur = desc;
  while (cur) {
    if (same_field(anc, cur)) return true;
    cur = cur->parent;
  }
  return false;
}

Involution make_involution(const Field& E, Involution::Kind kind) {
  Involution s;
  s.kind = kind;
  s.E = E;
  if (kind == Involution::Kind::Trivial) return s;
  if (kind == Involution::Kind::RamFlip) {
    if (E->e % 2 != 0)
      fail(Err::UnsupportedInvolution, "ramified involution needs even ramification");
    return s;
  }
  if (E->f % 2 != 0)
    fail(Err::UnsupportedInvolution, "Frobenius involution needs even inertia degree");
  // sigma(y): the Hensel root of h over the conjugate residue.
  ResidueField::El conj = E->k->frobenius(E->k->gen(), E->f / 2);
  Elem R = lift_integer_poly_root(E, E->h, conj);
  s.frob_pows.resize(E->f);
  Elem pw = Elem::one(E);
  for (int i = 0; i < E->f; ++i) {
    s.frob_pows[i] = pw.data();
    pw = pw * R;
  }
  // The flat unit must be fixed, otherwise sigma is not a homomorphism on
  // the flat presentation.
  Elem uval = unit_poly_value(E);
  Elem uimg = Elem::zero(E);
  for (int i = 0; i < (int)E->U.size(); ++i) {
    if (E->U[i] == 0) continue;
    uimg = uimg + Elem::from_bigint(E, E->U[i]) * Elem::from_data(E, s.frob_pows[i]);
  }
  if (!uimg.same_value(uval))
    fail(Err::UnsupportedInvolution, "Eisenstein unit is not fixed by the involution");
  return s;
}

Involution canonical_involution(const Field& E) {
  if (E->steps.empty()) fail(Err::UnsupportedInvolution, "base field has no quadratic step");
  const TowerStep& top = E->steps.back();
  if (top.kind == TowerStep::Kind::Eisenstein) {
    if (top.param % 2 != 0)
      fail(Err::UnsupportedInvolution, "top step is not quadratic");
    return make_involution(E, Involution::Kind::RamFlip);
  }
  if (top.param % 2 != 0)
    fail(Err::UnsupportedInvolution, "top step is not quadratic");
  return make_involution(E, Involution::Kind::UnramFrob);
}

}  // namespace wittlab
