#include "wittlab/embed.hpp"

#include <algorithm>
#include <numeric>

namespace wittlab {

namespace {

// Solve sum_i a_i * basis_i = target over F_p. Columns are k-elements viewed
// as F_p-vectors. Returns empty when the system is inconsistent.
std::vector<long> solve_fp(long p, const std::vector<ResidueField::El>& basis,
                           const ResidueField::El& target) {
  int rows = (int)target.size();
  int cols = (int)basis.size();
  std::vector<std::vector<long>> m(rows, std::vector<long>(cols + 1, 0));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m[r][c] = basis[c][r] % p;
    m[r][cols] = target[r] % p;
  }
  std::vector<int> pivot_col(rows, -1);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pr = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[rank], m[pr]);
    long inv = 1;
    while ((m[rank][c] * inv) % p != 1) ++inv;
    for (int cc = 0; cc <= cols; ++cc) m[rank][cc] = (m[rank][cc] * inv) % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      long fct = m[r][c];
      for (int cc = 0; cc <= cols; ++cc)
        m[r][cc] = ((m[r][cc] - fct * m[rank][cc]) % p + p) % p;
    }
    pivot_col[rank] = c;
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (m[r][cols] != 0) return {};
  std::vector<long> sol(cols, 0);
  for (int r = 0; r < rank; ++r) sol[pivot_col[r]] = m[r][cols];
  return sol;
}

}  // namespace

Elem embed_into(const Field& target, const Elem& x) {
  if (same_field(target, x.parent())) {
    if (target.get() == x.parent().get()) return x;
    return Elem::from_data(target, x.data());
  }
  std::vector<Field> chain;
  Field cur = target;
  while (cur && !same_field(cur, x.parent())) {
    chain.push_back(cur);
    cur = cur->parent;
  }
  if (!cur) fail(Err::BasisMismatch, "element's field is not an ancestor of target");
  Elem v = Elem::from_data(cur, x.data());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const Field& E = *it;
    const Field& P = E->parent;
    Elem ey = Elem::from_data(E, E->emb_y);
    Elem ex = P->e > 1 ? Elem::from_data(E, E->emb_x) : Elem::one(E);
    v = substitute_generators(E, P, v.data(), ey, ex);
  }
  return v;
}

Elem FieldEmbedding::apply(const Elem& x) const {
  if (!same_field(x.parent(), src)) fail(Err::BasisMismatch, "element not in source field");
  return substitute_generators(dst, src, x.data(), y_image, x_image);
}

Elem FieldEmbedding::gen_image(int step_index) const {
  return apply(Elem::tower_gen(src, step_index));
}

FieldEmbedding embed_minimal(const Field& E1, const Elem& b1, const Field& E2,
                             const Elem& b2) {
  if (E1->p != E2->p || E1->f0 != E2->f0 || E1->base_poly != E2->base_poly)
    fail(Err::BasisMismatch, "extensions have different base fields");
  if (b1.is_zero_at_precision() || b2.is_zero_at_precision())
    fail(Err::HypothesisViolated, "minimal element vanishes at precision");

  const long e1 = E1->e, e2 = E2->e;
  const long v1 = b1.valuation(), v2 = b2.valuation();
  if (std::gcd(((v1 % e1) + e1) % e1, e1) != 1)
    fail(Err::HypothesisViolated, "valuation of b1 is not prime to e(E1/F)");
  if (v1 * e2 != v2 * e1)
    fail(Err::HypothesisViolated, "normalized valuations differ");

  // Residues of b_i^e1 * p^{-v1}.
  Elem t1 = b1.pow(e1).shift_p(-v1);
  Elem t2 = b2.pow(e1).shift_p(-v1);
  if (t1.is_zero_at_precision() || t1.valuation() != 0 || t2.is_zero_at_precision() ||
      t2.valuation() != 0)
    fail(Err::HypothesisViolated, "normalized powers are not units");
  auto r1 = t1.residue();
  auto r2 = t2.residue();

  const ResidueField& k1 = *E1->k;
  const ResidueField& k2 = *E2->k;
  const int f0 = E1->f0;
  const int frel1 = E1->f / f0;

  if (k1.orbit_size(r1, f0) != frel1)
    fail(Err::HypothesisViolated, "b1 does not generate the residue field of E1");

  // Minimal polynomials over k_F, compared in base-field coordinates. The
  // base residue generator sits inside each field as the residue of the
  // stored base generator.
  auto rho1 = Elem::tower_gen(E1, -1).residue();
  auto rho2 = Elem::tower_gen(E2, -1).residue();
  auto mp1 = k1.min_poly_over(r1, f0);
  auto mp2 = k2.min_poly_over(r2, f0);
  if (mp1.size() != mp2.size())
    fail(Err::HypothesisViolated, "residue minimal polynomials have different degrees");
  auto coords = [&](const ResidueField& k, const ResidueField::El& rho,
                    const ResidueField::El& c) {
    std::vector<ResidueField::El> basis;
    ResidueField::El pw = k.one();
    for (int t = 0; t < f0; ++t) {
      basis.push_back(pw);
      pw = k.mul(pw, rho);
    }
    return solve_fp(k.p(), basis, c);
  };
  for (size_t i = 0; i < mp1.size(); ++i) {
    auto c1 = coords(k1, rho1, mp1[i]);
    auto c2 = coords(k2, rho2, mp2[i]);
    if (c1.empty() || c2.empty() || c1 != c2)
      fail(Err::HypothesisViolated, "residue minimal polynomials differ");
  }

  FieldEmbedding phi;
  phi.src = E1;
  phi.dst = E2;

  // Image of y1: express ybar1 in the F_p-span of rho1^a * r1^t and carry the
  // coordinates over to (rho2, r2).
  if (E1->f > 1) {
    std::vector<ResidueField::El> basis1, basis2;
    for (int a = 0; a < f0; ++a)
      for (int t = 0; t < frel1; ++t) {
        basis1.push_back(k1.mul(k1.pow(rho1, a), k1.pow(r1, t)));
        basis2.push_back(k2.mul(k2.pow(rho2, a), k2.pow(r2, t)));
      }
    auto ycoords = solve_fp(E1->p, basis1, k1.gen());
    if (ycoords.empty()) fail(Err::HypothesisViolated, "residue generator escapes k_F[r1]");
    ResidueField::El ybar2 = k2.zero();
    for (size_t i = 0; i < ycoords.size(); ++i)
      if (ycoords[i] != 0)
        ybar2 = k2.add(ybar2, k2.mul(k2.from_int(ycoords[i]), basis2[i]));
    EPoly h1;
    for (long c : E1->h) h1.push_back(Elem::from_int(E2, c));
    ElemData start;
    start.pshift = 0;
    start.digits = E2->coeff_digits;
    start.known = E2->e * start.digits;
    start.c.assign((size_t)E2->f * E2->e, BigInt(0));
    for (int i = 0; i < E2->f; ++i) start.c[(size_t)i * E2->e] = ybar2[i];
    phi.y_image = hensel_lift_root(h1, Elem::from_data(E2, start), E2->e * E2->coeff_digits);
  } else {
    phi.y_image = Elem::one(E2);
  }

  // Image of x1: an e1-th root of U1(phi(y1)) * p, selected by the defining
  // inequality v(phi(b1) - b2) > v(b2).
  if (e1 > 1) {
    Elem c = Elem::zero(E2);
    for (int i = 0; i < (int)E1->U.size(); ++i) {
      if (E1->U[i] == 0) continue;
      c = c + Elem::from_bigint(E2, E1->U[i]) * phi.y_image.pow(i);
    }
    c = c.shift_p(1);
    long m = e2 / e1;
    Elem x2m = Elem::uniformizer(E2).pow(m);
    Elem unit = c * x2m.pow(e1).inv();
    if (unit.is_zero_at_precision() || unit.valuation() != 0)
      fail(Err::HypothesisViolated, "ramified part is incompatible");
    auto omega = unit.residue();
    bool found = false;
    for (long idx = 1; idx < k2.q() && !found; ++idx) {
      auto cand = k2.element(idx);
      if (!k2.eq(k2.pow(cand, e1), omega)) continue;
      Elem w = unit_nth_root(unit, e1, cand);
      phi.x_image = x2m * w;
      Elem img = phi.apply(b1);
      Elem diff = img - b2;
      if (diff.is_zero_at_precision() || diff.valuation() > v2) found = true;
    }
    if (!found)
      fail(Err::HypothesisViolated, "no embedding satisfies the valuation inequality");
  } else {
    phi.x_image = Elem::one(E2);
    Elem diff = phi.apply(b1) - b2;
    if (!diff.is_zero_at_precision() && diff.valuation() <= v2)
      fail(Err::HypothesisViolated, "no embedding satisfies the valuation inequality");
  }
  return phi;
}

}  // namespace wittlab
