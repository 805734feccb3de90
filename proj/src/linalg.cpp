#include "wittlab/linalg.hpp"

#include <algorithm>

#include "wittlab/embed.hpp"

namespace wittlab {

EMat emat_zero(const Field& F, int rows, int cols) {
  EMat m;
  m.rows = rows;
  m.cols = cols;
  m.a.assign((size_t)rows * cols, Elem::zero(F));
  return m;
}

namespace {

// Rank position of a pivot candidate: lower valuation wins, ties by row.
long pivot_val(const Elem& x) {
  return x.is_zero_at_precision() ? LONG_MAX : x.valuation();
}

// Gauss-Jordan over elements; returns pivot column per row, -1 rows unused.
// Mutates the augmented matrix in place to reduced form.
struct Reduced {
  std::vector<int> pivot_col;
  int rank = 0;
};

Reduced reduce_in_place(EMat& m, int ncols_coeff) {
  Reduced out;
  out.pivot_col.assign(m.rows, -1);
  int row = 0;
  for (int col = 0; col < ncols_coeff && row < m.rows; ++col) {
    int best = -1;
    long bestv = LONG_MAX;
    for (int r = row; r < m.rows; ++r) {
      long v = pivot_val(m.at(r, col));
      if (v < bestv) {
        bestv = v;
        best = r;
      }
    }
    if (best < 0 || bestv == LONG_MAX) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(best, c));
    Elem piv = m.at(row, col).inv();
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * piv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      Elem f = m.at(r, col);
      if (f.is_zero_at_precision()) continue;
      for (int c = 0; c < m.cols; ++c) m.at(r, c) = m.at(r, c) - f * m.at(row, c);
    }
    out.pivot_col[row] = col;
    ++row;
  }
  out.rank = row;
  return out;
}

}  // namespace

std::vector<Elem> solve_linear(EMat A, std::vector<Elem> b, Err on_singular) {
  if (A.rows != A.cols || (int)b.size() != A.rows)
    fail(Err::InvalidArgument, "solve_linear expects a square system");
  const Field& F = A.a.front().parent();
  EMat aug = emat_zero(F, A.rows, A.cols + 1);
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, A.cols) = b[r];
  }
  Reduced red = reduce_in_place(aug, A.cols);
  if (red.rank < A.cols) fail(on_singular, "matrix is singular at precision");
  std::vector<Elem> x(A.cols, Elem::zero(F));
  for (int r = 0; r < red.rank; ++r) x[red.pivot_col[r]] = aug.at(r, A.cols);
  return x;
}

EMat invert_matrix(const EMat& A, Err on_singular) {
  if (A.rows != A.cols) fail(Err::InvalidArgument, "inverse of a non-square matrix");
  const Field& F = A.a.front().parent();
  const int n = A.rows;
  EMat aug = emat_zero(F, n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) aug.at(r, c) = A.at(r, c);
    aug.at(r, n + r) = Elem::one(F);
  }
  Reduced red = reduce_in_place(aug, n);
  if (red.rank < n) fail(on_singular, "matrix is singular at precision");
  EMat inv = emat_zero(F, n, n);
  for (int r = 0; r < n; ++r) {
    int pc = red.pivot_col[r];
    for (int c = 0; c < n; ++c) inv.at(pc, c) = aug.at(r, n + c);
  }
  return inv;
}

Field rational_base(const Field& E) {
  return make_field(E->p, 1, std::max(8, E->digits * std::max(1, E->e)));
}

std::vector<Elem> qp_coordinates(const Field& Qp, const Elem& x) {
  const Field& E = x.parent();
  const ElemData& d = x.data();
  std::vector<Elem> out;
  out.reserve((size_t)E->f * E->e);
  // Each coefficient is known mod p^digits; as a Q_p scalar this is
  // digits + pshift p-adic digits.
  for (int i = 0; i < E->f; ++i)
    for (int j = 0; j < E->e; ++j) {
      ElemData cd;
      cd.pshift = d.pshift;
      cd.digits = d.digits;
      cd.known = d.digits + d.pshift;
      cd.c = {d.c[(size_t)i * E->e + j]};
      if (cd.known <= 0) {
        out.push_back(Elem::zero_known(Qp, 1));
      } else {
        out.push_back(Elem::from_data(Qp, std::move(cd)));
      }
    }
  return out;
}

int relative_degree(const Field& E, const Field& F) {
  if (!is_ancestor(F, E)) fail(Err::BasisMismatch, "not an ancestor field");
  int dE = E->f * E->e, dF = F->f * F->e;
  return dE / dF;
}

std::optional<std::vector<Elem>> coordinates_over(const std::vector<Elem>& basis,
                                                  const Field& F, const Elem& v) {
  const Field& E = v.parent();
  if (!is_ancestor(F, E)) fail(Err::BasisMismatch, "not an ancestor field");
  Field Qp = rational_base(E);
  const int dimE = E->f * E->e;
  const int dimF = F->f * F->e;
  const int n = (int)basis.size();

  // F-basis monomials of F, embedded in E.
  std::vector<Elem> fmons;
  for (int i = 0; i < F->f; ++i)
    for (int j = 0; j < F->e; ++j) {
      ElemData d;
      d.pshift = 0;
      d.digits = F->coeff_digits;
      d.known = F->e * d.digits;
      d.c.assign((size_t)F->f * F->e, BigInt(0));
      d.c[(size_t)i * F->e + j] = 1;
      fmons.push_back(embed_into(E, Elem::from_data(F, d)));
    }

  EMat aug = emat_zero(Qp, dimE, n * dimF + 1);
  for (int bi = 0; bi < n; ++bi)
    for (int t = 0; t < dimF; ++t) {
      auto col = qp_coordinates(Qp, basis[bi] * fmons[t]);
      for (int r = 0; r < dimE; ++r) aug.at(r, bi * dimF + t) = col[r];
    }
  {
    auto rhs = qp_coordinates(Qp, v);
    for (int r = 0; r < dimE; ++r) aug.at(r, n * dimF) = rhs[r];
  }
  Reduced red = reduce_in_place(aug, n * dimF);
  // Consistency: rows beyond the rank must have vanishing right-hand side.
  for (int r = red.rank; r < dimE; ++r)
    if (!aug.at(r, n * dimF).is_zero_at_precision()) return std::nullopt;

  std::vector<Elem> scalars(n * dimF, Elem::zero(Qp));
  for (int r = 0; r < red.rank; ++r) scalars[red.pivot_col[r]] = aug.at(r, n * dimF);

  // Reassemble the F-coefficients from their Q_p coordinates.
  std::vector<Elem> out;
  for (int bi = 0; bi < n; ++bi) {
    Elem c = Elem::zero(F);
    for (int t = 0; t < dimF; ++t) {
      const Elem& s = scalars[bi * dimF + t];
      if (s.is_zero_at_precision()) continue;
      ElemData d;
      d.pshift = s.data().pshift;
      d.digits = s.data().digits;
      d.known = F->e * (d.digits + d.pshift);
      d.c.assign((size_t)F->f * F->e, BigInt(0));
      d.c[(size_t)(t / F->e) * F->e + (t % F->e)] = s.data().c[0];
      c = c + Elem::from_data(F, std::move(d));
    }
    out.push_back(c);
  }
  return out;
}

EPoly min_poly_over(const Elem& x, const Field& F) {
  const Field& E = x.parent();
  int n = relative_degree(E, F);
  std::vector<Elem> powers{Elem::one(E)};
  for (int i = 1; i <= n; ++i) powers.push_back(powers.back() * x);
  for (int d = 1; d <= n; ++d) {
    std::vector<Elem> basis(powers.begin(), powers.begin() + d);
    // x^d = -sum c_i x^i gives the monic relation x^d + sum c_i x^i = 0.
    auto coeffs = coordinates_over(basis, F, -powers[d]);
    if (!coeffs) continue;
    EPoly m = *coeffs;
    m.push_back(Elem::one(F));
    return m;
  }
  fail(Err::SingularSystem, "minimal polynomial not found");
}

Elem field_norm(const Elem& x, const Field& F) {
  const Field& E = x.parent();
  int n = relative_degree(E, F);
  EPoly m = min_poly_over(x, F);
  int d = (int)m.size() - 1;
  Elem c0 = m[0];
  Elem nf = (d % 2 == 0) ? c0 : -c0;
  return nf.pow(n / d);
}

}  // namespace wittlab
