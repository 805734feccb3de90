#include "wittlab/forms.hpp"

#include <algorithm>
#include <map>

namespace wittlab {

const char* form_case_name(FormCase c) {
  switch (c) {
    case FormCase::Orthogonal: return "orthogonal";
    case FormCase::Unitary: return "unitary";
    case FormCase::Symplectic: return "symplectic";
  }
  return "?";
}

namespace {

void check_entry(const Elem& a) {
  if (a.is_zero_at_precision())
    fail(Err::DegenerateAtPrecision, "diagonal entry vanishes at precision");
}

// Hermitian model of a form: for epsilon = -1 unitary entries are divided by
// the canonical skew unit; everything else passes through.
std::vector<Elem> hermitian_model(const FormDescriptor& h) {
  if (h.kind == FormCase::Unitary && h.epsilon == -1) {
    Elem s_inv = h.ctx->skew_unit.inv();
    std::vector<Elem> out;
    for (const Elem& a : h.diag) out.push_back(a * s_inv);
    return out;
  }
  return h.diag;
}

struct OrthKey {
  int n;
  SquareClass d;
  int s;
};

OrthKey orth_key_of(const Field& F, const std::vector<Elem>& entries) {
  OrthKey k{(int)entries.size(), sc_one(F), 1};
  std::vector<SquareClass> cs;
  for (const Elem& a : entries) cs.push_back(square_class(a));
  for (const auto& c : cs) k.d = sc_mul(k.d, c);
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = i + 1; j < cs.size(); ++j) k.s *= hilbert_symbol(cs[i], cs[j]);
  return k;
}

bool orth_isotropic(const Field& F, int n, const SquareClass& d, int s) {
  if (n <= 1) return false;
  SquareClass m1 = square_class(Elem::from_int(F, -1));
  if (n == 2) return d == m1;
  if (n == 3) return s == hilbert_symbol(m1, sc_mul(m1, d));
  if (n == 4) return !(d == sc_one(F) && s == -hilbert_symbol(m1, m1));
  return true;
}

// Witt-peel the orthogonal invariants down to the anisotropic kernel.
OrthKey orth_peel(const Field& F, OrthKey k) {
  SquareClass m1 = square_class(Elem::from_int(F, -1));
  while (k.n > 0 && orth_isotropic(F, k.n, k.d, k.s)) {
    k.d = sc_mul(k.d, m1);
    k.s *= hilbert_symbol(m1, sc_mul(m1, k.d));
    k.n -= 2;
  }
  return k;
}

// Canonical anisotropic representative entries for orthogonal invariants.
std::vector<Elem> orth_canonical_rep(const Field& F, const OrthKey& k) {
  std::vector<SquareClass> classes;
  for (int par = 0; par <= 1; ++par)
    for (int ub = 0; ub <= 1; ++ub) classes.push_back(sc_of(F, par, ub));
  std::sort(classes.begin(), classes.end(), [](const SquareClass& a, const SquareClass& b) {
    return std::pair(a.val_parity, a.unit_bit) < std::pair(b.val_parity, b.unit_bit);
  });
  std::vector<int> idx(k.n, 0);
  if (k.n == 0) return {};
  for (;;) {
    SquareClass d = sc_one(F);
    int s = 1;
    for (int i = 0; i < k.n; ++i) d = sc_mul(d, classes[idx[i]]);
    for (int i = 0; i < k.n; ++i)
      for (int j = i + 1; j < k.n; ++j) s *= hilbert_symbol(classes[idx[i]], classes[idx[j]]);
    if (d == k.d && s == k.s && !orth_isotropic(F, k.n, d, s)) {
      std::vector<Elem> rep;
      for (int i = 0; i < k.n; ++i) rep.push_back(sc_representative(classes[idx[i]]));
      return rep;
    }
    int pos = k.n - 1;
    while (pos >= 0 && idx[pos] == 3) idx[pos--] = 0;
    if (pos < 0) fail(Err::InvalidArgument, "internal: unrealizable orthogonal invariants");
    ++idx[pos];
  }
}

struct UnitaryKey {
  int n;
  int detbit;
};

UnitaryKey unitary_key_of(const QuadExt& ctx, const std::vector<Elem>& model) {
  UnitaryKey k{(int)model.size(), 0};
  for (const Elem& a : model) k.detbit ^= is_norm(a, ctx) ? 0 : 1;
  return k;
}

int minus_one_bit(const QuadExt& ctx) { return ctx.minus_one_norm ? 0 : 1; }

bool unitary_isotropic(const QuadExt& ctx, int n, int detbit) {
  if (n <= 1) return false;
  if (n == 2) return detbit == minus_one_bit(ctx);
  return true;
}

UnitaryKey unitary_peel(const QuadExt& ctx, UnitaryKey k) {
  while (k.n > 0 && unitary_isotropic(ctx, k.n, k.detbit)) {
    k.detbit ^= minus_one_bit(ctx);
    k.n -= 2;
  }
  return k;
}

std::vector<Elem> unitary_canonical_rep(const QuadExt& ctx, const UnitaryKey& k) {
  std::vector<Elem> rep;
  if (k.n == 0) return rep;
  if (k.n == 1) {
    rep.push_back(k.detbit == 0 ? Elem::one(ctx.E) : ctx.delta);
    return rep;
  }
  if (k.n == 2) {
    // det must avoid the class of -1.
    if (k.detbit == 0) {
      rep = {Elem::one(ctx.E), Elem::one(ctx.E)};
    } else {
      rep = {Elem::one(ctx.E), ctx.delta};
    }
    return rep;
  }
  fail(Err::InvalidArgument, "internal: anisotropic hermitian dimension > 2");
}

}  // namespace

FormDescriptor make_orthogonal_form(const Field& F, std::vector<Elem> entries) {
  FormDescriptor h;
  h.kind = FormCase::Orthogonal;
  h.epsilon = 1;
  h.F = F;
  for (const Elem& a : entries) check_entry(a);
  h.diag = std::move(entries);
  return h;
}

FormDescriptor make_unitary_form(std::shared_ptr<const QuadExt> ctx, int epsilon,
                                 std::vector<Elem> entries) {
  if (!ctx || ctx->sigma.trivial()) fail(Err::NotQuadratic, "unitary form needs a quadratic context");
  if (epsilon != 1 && epsilon != -1) fail(Err::InvalidArgument, "epsilon must be +-1");
  FormDescriptor h;
  h.kind = FormCase::Unitary;
  h.epsilon = epsilon;
  h.F = ctx->E;
  h.ctx = std::move(ctx);
  for (const Elem& a : entries) {
    check_entry(a);
    bool ok = epsilon == 1 ? is_sigma_fixed(h.ctx->sigma, a) : is_sigma_skew(h.ctx->sigma, a);
    if (!ok) fail(Err::NotSymmetricOrSkew, "entry has the wrong symmetry for epsilon");
  }
  h.diag = std::move(entries);
  return h;
}

FormDescriptor make_symplectic_form(const Field& F, int planes) {
  if (planes < 0) fail(Err::InvalidArgument, "negative plane count");
  FormDescriptor h;
  h.kind = FormCase::Symplectic;
  h.epsilon = -1;
  h.F = F;
  h.hyperbolic = planes;
  return h;
}

FormInvariants invariants(const FormDescriptor& h) {
  FormInvariants inv;
  inv.kind = h.kind;
  inv.dim = h.dim();
  switch (h.kind) {
    case FormCase::Symplectic:
      return inv;
    case FormCase::Orthogonal: {
      OrthKey k = orth_key_of(h.F, h.diag);
      inv.det_parity = k.d.val_parity;
      inv.det_unit = k.d.unit_bit;
      inv.hasse = k.s;
      return inv;
    }
    case FormCase::Unitary: {
      UnitaryKey k = unitary_key_of(*h.ctx, hermitian_model(h));
      inv.det_norm_bit = k.detbit;
      return inv;
    }
  }
  return inv;
}

int anisotropic_dimension(const FormDescriptor& h) {
  switch (h.kind) {
    case FormCase::Symplectic:
      return 0;
    case FormCase::Orthogonal:
      return orth_peel(h.F, orth_key_of(h.F, h.diag)).n;
    case FormCase::Unitary:
      return unitary_peel(*h.ctx, unitary_key_of(*h.ctx, hermitian_model(h))).n;
  }
  return 0;
}

std::vector<Elem> WittClass::rep_entries() const {
  if (kind == FormCase::Unitary && epsilon == -1) {
    std::vector<Elem> out;
    for (const Elem& a : model_rep) out.push_back(a * ctx->skew_unit);
    return out;
  }
  return model_rep;
}

FormDescriptor WittClass::rep_form() const {
  switch (kind) {
    case FormCase::Symplectic:
      return make_symplectic_form(F, 0);
    case FormCase::Orthogonal:
      return make_orthogonal_form(F, model_rep);
    case FormCase::Unitary:
      return make_unitary_form(ctx, epsilon, rep_entries());
  }
  fail(Err::InvalidArgument, "unreachable");
}

bool same_group(const WittClass& a, const WittClass& b) {
  return a.kind == b.kind && a.epsilon == b.epsilon && same_field(a.F, b.F);
}

bool witt_eq(const WittClass& a, const WittClass& b) {
  return same_group(a, b) && a.key == b.key;
}

namespace {

WittClass orth_class_from_key(const Field& F, const OrthKey& k0) {
  OrthKey k = orth_peel(F, k0);
  WittClass w;
  w.kind = FormCase::Orthogonal;
  w.epsilon = 1;
  w.F = F;
  w.diman = k.n;
  w.model_rep = orth_canonical_rep(F, k);
  OrthKey kk = orth_key_of(F, w.model_rep);
  w.key = {k.n, kk.d.val_parity, kk.d.unit_bit, kk.s};
  if (k.n == 0) w.key = {0, 0, 0, 1};
  return w;
}

WittClass unitary_class_from_key(std::shared_ptr<const QuadExt> ctx, int epsilon,
                                 const UnitaryKey& k0) {
  UnitaryKey k = unitary_peel(*ctx, k0);
  WittClass w;
  w.kind = FormCase::Unitary;
  w.epsilon = epsilon;
  w.F = ctx->E;
  w.ctx = std::move(ctx);
  w.diman = k.n;
  w.model_rep = unitary_canonical_rep(*w.ctx, k);
  w.key = {k.n, k.n == 0 ? 0 : k.detbit, 0, 0};
  return w;
}

}  // namespace

WittClass witt_class(const FormDescriptor& h) {
  switch (h.kind) {
    case FormCase::Symplectic: {
      WittClass w;
      w.kind = FormCase::Symplectic;
      w.epsilon = -1;
      w.F = h.F;
      w.diman = 0;
      w.key = {0, 0, 0, 0};
      return w;
    }
    case FormCase::Orthogonal:
      return orth_class_from_key(h.F, orth_key_of(h.F, h.diag));
    case FormCase::Unitary:
      return unitary_class_from_key(h.ctx, h.epsilon,
                                    unitary_key_of(*h.ctx, hermitian_model(h)));
  }
  fail(Err::InvalidArgument, "unreachable");
}

WittClass witt_zero(FormCase kind, const Field& F, std::shared_ptr<const QuadExt> ctx,
                    int epsilon) {
  switch (kind) {
    case FormCase::Symplectic:
      return witt_class(make_symplectic_form(F, 0));
    case FormCase::Orthogonal:
      return witt_class(make_orthogonal_form(F, {}));
    case FormCase::Unitary:
      return unitary_class_from_key(std::move(ctx), epsilon == 0 ? 1 : epsilon,
                                    UnitaryKey{0, 0});
  }
  fail(Err::InvalidArgument, "unreachable");
}

WittClass witt_add(const WittClass& a, const WittClass& b) {
  if (!same_group(a, b)) fail(Err::CaseMismatch, "Witt classes of different groups");
  switch (a.kind) {
    case FormCase::Symplectic:
      return a;
    case FormCase::Orthogonal: {
      std::vector<Elem> cat = a.model_rep;
      cat.insert(cat.end(), b.model_rep.begin(), b.model_rep.end());
      return orth_class_from_key(a.F, orth_key_of(a.F, cat));
    }
    case FormCase::Unitary: {
      std::vector<Elem> cat = a.model_rep;
      cat.insert(cat.end(), b.model_rep.begin(), b.model_rep.end());
      return unitary_class_from_key(a.ctx, a.epsilon, unitary_key_of(*a.ctx, cat));
    }
  }
  fail(Err::InvalidArgument, "unreachable");
}

WittClass witt_neg(const WittClass& a) {
  std::vector<Elem> neg;
  for (const Elem& x : a.model_rep) neg.push_back(-x);
  switch (a.kind) {
    case FormCase::Symplectic:
      return a;
    case FormCase::Orthogonal:
      return orth_class_from_key(a.F, orth_key_of(a.F, neg));
    case FormCase::Unitary:
      return unitary_class_from_key(a.ctx, a.epsilon, unitary_key_of(*a.ctx, neg));
  }
  fail(Err::InvalidArgument, "unreachable");
}

FormDescriptor twist(const FormDescriptor& h, const Elem& a) {
  check_entry(a);
  switch (h.kind) {
    case FormCase::Symplectic:
      // Only sigma-symmetric scalars exist here (sigma trivial).
      return h;
    case FormCase::Orthogonal: {
      std::vector<Elem> entries;
      for (const Elem& d : h.diag) entries.push_back(d * a);
      return make_orthogonal_form(h.F, std::move(entries));
    }
    case FormCase::Unitary: {
      bool fixed = is_sigma_fixed(h.ctx->sigma, a);
      bool skew = is_sigma_skew(h.ctx->sigma, a);
      if (!fixed && !skew)
        fail(Err::NotSymmetricOrSkew, "twist element is neither symmetric nor skew");
      int eps = skew ? -h.epsilon : h.epsilon;
      std::vector<Elem> entries;
      for (const Elem& d : h.diag) entries.push_back(d * a);
      return make_unitary_form(h.ctx, eps, std::move(entries));
    }
  }
  fail(Err::InvalidArgument, "unreachable");
}

std::vector<WittClass> enumerate_witt_group(FormCase kind, const Field& F,
                                            std::shared_ptr<const QuadExt> ctx,
                                            int epsilon) {
  std::vector<WittClass> gens;
  switch (kind) {
    case FormCase::Symplectic:
      return {witt_zero(kind, F)};
    case FormCase::Orthogonal: {
      for (int par = 0; par <= 1; ++par)
        for (int ub = 0; ub <= 1; ++ub) {
          Elem rep = sc_representative(sc_of(F, par, ub));
          gens.push_back(witt_class(make_orthogonal_form(F, {rep})));
        }
      break;
    }
    case FormCase::Unitary: {
      if (!ctx) fail(Err::NotQuadratic, "unitary enumeration needs a context");
      int eps = epsilon == 0 ? 1 : epsilon;
      gens.push_back(unitary_class_from_key(ctx, eps, UnitaryKey{1, 0}));
      gens.push_back(unitary_class_from_key(ctx, eps, UnitaryKey{1, 1}));
      break;
    }
  }
  std::map<std::array<int, 4>, WittClass> seen;
  WittClass zero = witt_zero(kind, F, ctx, epsilon);
  seen.emplace(zero.key, zero);
  std::vector<WittClass> frontier{zero};
  while (!frontier.empty()) {
    std::vector<WittClass> next;
    for (const WittClass& w : frontier)
      for (const WittClass& g : gens) {
        WittClass s = witt_add(w, g);
        if (seen.emplace(s.key, s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  std::vector<WittClass> out;
  for (auto& [k, w] : seen) out.push_back(w);
  return out;
}

FormDescriptor diagonalize(const EMat& gram, FormCase kind, const Field& F,
                           std::shared_ptr<const QuadExt> ctx, int epsilon) {
  if (gram.rows != gram.cols) fail(Err::InvalidArgument, "Gram matrix must be square");
  const int n = gram.rows;
  EMat g = gram;

  auto sig = [&](const Elem& x) {
    return kind == FormCase::Unitary ? sigma_apply(ctx->sigma, x) : x;
  };

  // Symmetry check.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem want = kind == FormCase::Symplectic ? -g.at(j, i) : sig(g.at(j, i));
      if (kind == FormCase::Unitary && epsilon == -1) want = -want;
      if (!g.at(i, j).same_value(want))
        fail(Err::NotSymmetricOrSkew, "Gram matrix has the wrong symmetry");
    }

  if (kind == FormCase::Symplectic) {
    // Reduce to hyperbolic planes.
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    int planes = 0;
    while (!alive.empty()) {
      int pi = -1, pj = -1;
      long best = LONG_MAX;
      for (size_t a = 0; a < alive.size(); ++a)
        for (size_t b = a + 1; b < alive.size(); ++b) {
          const Elem& x = g.at(alive[a], alive[b]);
          if (x.is_zero_at_precision()) continue;
          if (x.valuation() < best) {
            best = x.valuation();
            pi = (int)a;
            pj = (int)b;
          }
        }
      if (pi < 0) fail(Err::DegenerateAtPrecision, "alternating Gram matrix is degenerate");
      int i = alive[pi], j = alive[pj];
      Elem gij = g.at(i, j);
      for (size_t a = 0; a < alive.size(); ++a) {
        int k = alive[a];
        if (k == i || k == j) continue;
        Elem alpha = -(g.at(k, j) * gij.inv());
        Elem beta = g.at(k, i) * gij.inv();
        // v_k += alpha v_i + beta v_j
        for (size_t b = 0; b < alive.size(); ++b) {
          int l = alive[b];
          g.at(k, l) = g.at(k, l) + alpha * g.at(i, l) + beta * g.at(j, l);
        }
        for (size_t b = 0; b < alive.size(); ++b) {
          int l = alive[b];
          g.at(l, k) = g.at(l, k) + alpha * g.at(l, i) + beta * g.at(l, j);
        }
      }
      std::vector<int> rest;
      for (int k : alive)
        if (k != i && k != j) rest.push_back(k);
      alive = std::move(rest);
      ++planes;
    }
    return make_symplectic_form(F, planes);
  }

  // Orthogonal / unitary symmetric Gauss with minimal-valuation pivoting.
  std::vector<Elem> diag_out;
  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  Elem skew = kind == FormCase::Unitary ? ctx->skew_unit : Elem();
  while (!alive.empty()) {
    // Best diagonal pivot.
    int pi = -1;
    long best = LONG_MAX;
    for (size_t a = 0; a < alive.size(); ++a) {
      const Elem& x = g.at(alive[a], alive[a]);
      if (x.is_zero_at_precision()) continue;
      if (x.valuation() < best) {
        best = x.valuation();
        pi = (int)a;
      }
    }
    if (pi < 0) {
      // All diagonal entries vanish; pull a nonzero off-diagonal entry onto
      // the diagonal with v_i += a v_j.
      int bi = -1, bj = -1;
      long bv = LONG_MAX;
      for (size_t a = 0; a < alive.size(); ++a)
        for (size_t b = a + 1; b < alive.size(); ++b) {
          const Elem& x = g.at(alive[a], alive[b]);
          if (x.is_zero_at_precision()) continue;
          if (x.valuation() < bv) {
            bv = x.valuation();
            bi = alive[a];
            bj = alive[b];
          }
        }
      if (bi < 0) fail(Err::DegenerateAtPrecision, "Gram matrix is degenerate at precision");
      std::vector<Elem> cands{Elem::one(F)};
      if (skew.valid()) cands.push_back(skew);
      bool fixed_up = false;
      for (const Elem& aa : cands) {
        // h(v_i + a v_j, v_i + a v_j) = sigma(a) g_ji + g_ij a
        Elem newdiag = sig(aa) * g.at(bj, bi) + g.at(bi, bj) * aa;
        if (newdiag.is_zero_at_precision()) continue;
        for (int l : alive) {
          g.at(bi, l) = g.at(bi, l) + sig(aa) * g.at(bj, l);
        }
        for (int l : alive) {
          g.at(l, bi) = g.at(l, bi) + g.at(l, bj) * aa;
        }
        fixed_up = true;
        break;
      }
      if (!fixed_up) fail(Err::DegenerateAtPrecision, "no usable pivot at precision");
      continue;
    }
    int i = alive[pi];
    Elem piv = g.at(i, i);
    Elem piv_inv = piv.inv();
    for (size_t a = 0; a < alive.size(); ++a) {
      int k = alive[a];
      if (k == i) continue;
      // v_k -= sigma(g_ki / g_ii)^... : lambda with h(v_k - l v_i, v_i) = 0
      Elem lambda = sig(g.at(k, i) * piv_inv);
      if (lambda.is_zero_at_precision()) continue;
      for (int l : alive) g.at(k, l) = g.at(k, l) - sig(lambda) * g.at(i, l);
      for (int l : alive) g.at(l, k) = g.at(l, k) - g.at(l, i) * lambda;
    }
    diag_out.push_back(piv);
    std::vector<int> rest;
    for (int k : alive)
      if (k != i) rest.push_back(k);
    alive = std::move(rest);
  }

  if (kind == FormCase::Orthogonal) return make_orthogonal_form(F, std::move(diag_out));
  return make_unitary_form(ctx, epsilon, std::move(diag_out));
}

}  // namespace wittlab
