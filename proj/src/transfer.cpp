#include "wittlab/transfer.hpp"

namespace wittlab {

std::vector<Elem> SelfDualContext::power_basis() const {
  if (zero) return {Elem::one(E)};
  std::vector<Elem> b{Elem::one(E)};
  for (int i = 1; i < degree; ++i) b.push_back(b.back() * beta);
  return b;
}

SelfDualContext zero_context(const Field& F) {
  SelfDualContext c;
  c.E = F;
  c.F = F;
  c.sigma = make_involution(F, Involution::Kind::Trivial);
  c.zero = true;
  c.degree = 1;
  return c;
}

SelfDualContext make_context(const Field& E, const Field& F, const Involution& sigma,
                             const Elem& beta) {
  if (!is_ancestor(F, E)) fail(Err::BasisMismatch, "base is not an ancestor of E");
  if (sigma.trivial()) fail(Err::NotQuadratic, "self-dual datum needs an involution");
  if (beta.is_zero_at_precision()) fail(Err::ZeroBeta, "skew generator vanishes at precision");
  if (!is_sigma_skew(sigma, beta)) fail(Err::NotSkew, "generator is not skew");
  int n = relative_degree(E, F);
  EPoly m = min_poly_over(beta, F);
  if ((int)m.size() - 1 != n) fail(Err::NotAGenerator, "beta does not generate E over F");
  SelfDualContext c;
  c.E = E;
  c.F = F;
  c.sigma = sigma;
  c.beta = beta;
  c.zero = false;
  c.quad = std::make_shared<const QuadExt>(make_quad_ext(E, sigma));
  c.degree = n;
  return c;
}

Elem canonical_skew_generator(const Field& E, const Field& F, const Involution& sigma) {
  int n = relative_degree(E, F);
  const ResidueField& k = *E->k;
  auto unit_lift = [&](const ResidueField::El& r) {
    ElemData d;
    d.pshift = 0;
    d.digits = E->coeff_digits;
    d.known = E->e * d.digits;
    d.c.assign((size_t)E->f * E->e, BigInt(0));
    for (int i = 0; i < E->f; ++i) d.c[(size_t)i * E->e] = r[i];
    return Elem::from_data(E, std::move(d));
  };

  if (sigma.kind == Involution::Kind::RamFlip) {
    Elem x = Elem::uniformizer(E);
    for (long idx = 1; idx < k.q(); ++idx) {
      Elem cand = x * unit_lift(k.element(idx));
      EPoly m = min_poly_over(cand, F);
      if ((int)m.size() - 1 == n) return cand;
    }
    fail(Err::NotAGenerator, "no skew generator found for the ramified step");
  }
  if (sigma.kind == Involution::Kind::UnramFrob) {
    QuadExt q = make_quad_ext(E, sigma);
    Elem half = Elem::from_int(E, 2).inv();
    int half_f = E->f / 2;
    long q0 = 1;
    for (int t = 0; t < half_f; ++t) q0 *= E->p;
    for (long idx = 1; idx < k.q(); ++idx) {
      auto r = k.element(idx);
      if (!k.in_subfield(r, half_f)) continue;
      if (k.eq(k.pow(r, (q0 - 1) / 2), k.one())) continue;  // want a nonsquare of k_E0
      Elem z = unit_lift(r);
      Elem u = (z + sigma_apply(sigma, z)) * half;
      Elem v = u * (Elem::one(E) + q.pi0);
      auto sq = is_square(v);
      if (!sq.square) continue;
      Elem cand = *sq.witness;
      if (!is_sigma_skew(sigma, cand)) continue;
      EPoly m = min_poly_over(cand, F);
      if ((int)m.size() - 1 == n) return cand;
    }
    fail(Err::NotAGenerator, "no skew generator found for the unramified step");
  }
  fail(Err::NotQuadratic, "trivial involution has no skew generator");
}

SelfDualContext canonical_context(const Field& E, const Field& F) {
  if (same_field(E, F)) return zero_context(F);
  Involution s = canonical_involution(E);
  return make_context(E, F, s, canonical_skew_generator(E, F, s));
}

LinearForm standard_linear_form(const SelfDualContext& ctx) {
  LinearForm l;
  l.ctx = ctx;
  l.values.push_back(Elem::one(ctx.F));
  for (int i = 1; i < ctx.degree; ++i) l.values.push_back(Elem::zero(ctx.F));
  return l;
}

LinearForm make_linear_form(const SelfDualContext& ctx, std::vector<Elem> values) {
  if ((int)values.size() != ctx.degree)
    fail(Err::InvalidArgument, "one value per power-basis element required");
  bool nonzero = false;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_zero_at_precision()) nonzero = true;
    // (sigma_E, id)-equivariance forces the odd-power values to vanish.
    if (i % 2 == 1 && !values[i].is_zero_at_precision())
      fail(Err::InvalidArgument, "form is not equivariant: odd-power value is nonzero");
  }
  if (!nonzero) fail(Err::InvalidArgument, "linear form must be nonzero");
  LinearForm l;
  l.ctx = ctx;
  l.values = std::move(values);
  return l;
}

namespace {

// Evaluation of an equivariant linear form via one precomputed inverse of
// the power-basis coordinate matrix.
struct LinearEvaluator {
  const LinearForm& form;
  Field Qp;
  int dimE, dimF, n;
  std::vector<Elem> fmons;  // F-monomials as F-elements
  EMat basis_inv;

  explicit LinearEvaluator(const LinearForm& l)
      : form(l), Qp(rational_base(l.ctx.E)) {
    const Field& E = l.ctx.E;
    const Field& F = l.ctx.F;
    dimE = E->f * E->e;
    dimF = F->f * F->e;
    n = l.ctx.degree;
    if (n * dimF != dimE) fail(Err::NotAGenerator, "context degree mismatch");
    auto basis = l.ctx.power_basis();
    std::vector<Elem> fmons_in_E;
    for (int i = 0; i < F->f; ++i)
      for (int j = 0; j < F->e; ++j) {
        ElemData d;
        d.pshift = 0;
        d.digits = F->coeff_digits;
        d.known = F->e * d.digits;
        d.c.assign((size_t)F->f * F->e, BigInt(0));
        d.c[(size_t)i * F->e + j] = 1;
        Elem mono = Elem::from_data(F, std::move(d));
        fmons.push_back(mono);
        fmons_in_E.push_back(embed_into(E, mono));
      }
    EMat M = emat_zero(Qp, dimE, dimE);
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < dimF; ++t) {
        auto col = qp_coordinates(Qp, basis[i] * fmons_in_E[t]);
        for (int r = 0; r < dimE; ++r) M.at(r, i * dimF + t) = col[r];
      }
    basis_inv = invert_matrix(M, Err::NotAGenerator);
  }

  // F-coefficients of x on the power basis.
  std::vector<Elem> coefficients(const Elem& x) const {
    auto xc = qp_coordinates(Qp, x);
    std::vector<Elem> out;
    for (int i = 0; i < n; ++i) {
      Elem ci = Elem::zero(form.ctx.F);
      for (int t = 0; t < dimF; ++t) {
        Elem s = Elem::zero_known(Qp, 1);
        bool any = false;
        for (int r = 0; r < dimE; ++r) {
          const Elem& m = basis_inv.at(i * dimF + t, r);
          if (m.is_zero_at_precision() || xc[r].is_zero_at_precision()) continue;
          s = any ? s + m * xc[r] : m * xc[r];
          any = true;
        }
        if (!any || s.is_zero_at_precision()) continue;
        ElemData d;
        d.pshift = s.data().pshift;
        d.digits = s.data().digits;
        d.known = form.ctx.F->e * (d.digits + d.pshift);
        d.c.assign((size_t)form.ctx.F->f * form.ctx.F->e, BigInt(0));
        d.c[(size_t)t] = s.data().c[0];
        ci = ci + Elem::from_data(form.ctx.F, std::move(d));
      }
      out.push_back(ci);
    }
    return out;
  }

  Elem operator()(const Elem& x) const {
    auto cs = coefficients(x);
    Elem acc = Elem::zero(form.ctx.F);
    for (int i = 0; i < n; ++i) acc = acc + cs[i] * form.values[i];
    return acc;
  }
};

}  // namespace

Elem eval_linear(const LinearForm& l, const Elem& x) {
  Elem xe = same_field(x.parent(), l.ctx.E) ? x : embed_into(l.ctx.E, x);
  return LinearEvaluator(l)(xe);
}

LinearForm scaled_linear_form(const LinearForm& l, const Elem& gamma) {
  const SelfDualContext& c = l.ctx;
  if (!c.zero && !is_sigma_fixed(c.sigma, gamma))
    fail(Err::NotInFixedField, "scaling element must lie in the fixed field");
  LinearEvaluator ev(l);
  LinearForm out;
  out.ctx = c;
  for (const Elem& b : c.power_basis()) out.values.push_back(ev(b * gamma));
  return out;
}

EMat transfer_gram(const FormDescriptor& h, const LinearForm& l) {
  const SelfDualContext& c = l.ctx;
  if (!same_field(h.F, c.E)) fail(Err::CaseMismatch, "form is not over the context field");
  if (h.kind == FormCase::Symplectic)
    fail(Err::CaseMismatch, "symplectic forms do not transfer through this map");
  const int m = (int)h.diag.size();
  for (const Elem& d : h.diag)
    if (d.is_zero_at_precision())
      fail(Err::DegenerateAtPrecision, "form entry vanishes at precision");
  if (c.zero) {
    EMat g = emat_zero(c.F, m, m);
    Elem scale = l.values[0];
    for (int i = 0; i < m; ++i)
      g.at(i, i) = Elem::from_data(c.F, h.diag[i].data()) * scale;
    return g;
  }
  const int n = c.degree;
  auto basis = c.power_basis();
  LinearEvaluator ev(l);
  EMat g = emat_zero(c.F, n * m, n * m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Elem v = sigma_apply(c.sigma, basis[i]) * basis[j] * h.diag[k];
        g.at(k * n + i, k * n + j) = ev(v);
      }
  return g;
}

FormDescriptor transfer_form(const FormDescriptor& h, const LinearForm& l) {
  EMat g = transfer_gram(h, l);
  FormCase target = h.epsilon == 1 ? FormCase::Orthogonal : FormCase::Symplectic;
  if (g.rows == 0)
    return target == FormCase::Orthogonal ? make_orthogonal_form(l.ctx.F, {})
                                          : make_symplectic_form(l.ctx.F, 0);
  return diagonalize(g, target, l.ctx.F, nullptr, h.epsilon);
}

WittClass transfer_class(const WittClass& c, const LinearForm& l) {
  if (!same_field(c.F, l.ctx.E)) fail(Err::CaseMismatch, "class is not over the context field");
  if (c.kind == FormCase::Symplectic) fail(Err::CaseMismatch, "symplectic classes do not transfer");
  FormCase target = c.epsilon == 1 ? FormCase::Orthogonal : FormCase::Symplectic;
  if (c.is_hyperbolic()) return witt_zero(target, l.ctx.F);
  return witt_class(transfer_form(c.rep_form(), l));
}

WittClass transfer_unit_closed_form(const SelfDualContext& ctx) {
  const Field& F = ctx.F;
  if (ctx.zero) return witt_class(make_orthogonal_form(F, {Elem::one(F)}));
  int n = ctx.degree;
  if (n % 2 == 1) return witt_class(make_orthogonal_form(F, {Elem::one(F)}));
  Elem nb = field_norm(ctx.beta, F);
  Elem second = ((n / 2 + 1) % 2 == 0) ? nb : -nb;
  return witt_class(make_orthogonal_form(F, {Elem::one(F), second}));
}

Elem gamma_between_forms(const LinearForm& l, const LinearForm& lp) {
  const SelfDualContext& c = l.ctx;
  if (!same_field(c.E, lp.ctx.E)) fail(Err::CaseMismatch, "forms live on different fields");
  const Field& E = c.E;
  Field Qp = rational_base(E);
  const int dimE = E->f * E->e;
  const int dimF = c.F->f * c.F->e;
  const int n = c.degree;
  if (n * dimF != dimE) fail(Err::SingularSystem, "dimension bookkeeping is broken");

  auto basis = c.power_basis();
  LinearEvaluator ev(l);

  std::vector<Elem> emons;
  for (int i = 0; i < E->f; ++i)
    for (int j = 0; j < E->e; ++j) {
      ElemData d;
      d.pshift = 0;
      d.digits = E->coeff_digits;
      d.known = E->e * d.digits;
      d.c.assign((size_t)E->f * E->e, BigInt(0));
      d.c[(size_t)i * E->e + j] = 1;
      emons.push_back(Elem::from_data(E, std::move(d)));
    }

  // Equations lambda(beta^i * gamma) = lambda'(beta^i), expanded over the
  // flat coordinates of gamma and the F-coordinates of both sides.
  EMat A = emat_zero(Qp, dimE, dimE);
  std::vector<Elem> rhs(dimE, Elem::zero(Qp));
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < dimE; ++t) {
      Elem lv = ev(basis[i] * emons[t]);
      auto fco = qp_coordinates(Qp, lv);
      for (int r = 0; r < dimF; ++r) A.at(i * dimF + r, t) = fco[r];
    }
    auto fv = qp_coordinates(Qp, lp.values[i]);
    for (int r = 0; r < dimF; ++r) rhs[i * dimF + r] = fv[r];
  }
  auto sol = solve_linear(A, rhs, Err::SingularSystem);

  Elem gamma = Elem::zero(E);
  for (int t = 0; t < dimE; ++t) {
    const Elem& s = sol[t];
    if (s.is_zero_at_precision()) continue;
    ElemData d;
    d.pshift = s.data().pshift;
    d.digits = s.data().digits;
    d.known = E->e * (d.digits + d.pshift);
    d.c.assign((size_t)E->f * E->e, BigInt(0));
    d.c[(size_t)t] = s.data().c[0];
    gamma = gamma + Elem::from_data(E, std::move(d));
  }
  if (!c.zero && !is_sigma_fixed(c.sigma, gamma))
    fail(Err::SingularSystem, "computed gamma escaped the fixed field");
  return gamma;
}

}  // namespace wittlab
