#include "wittlab/lattice.hpp"

#include <climits>

#include <algorithm>

namespace wittlab {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

long LatticeSequence::exponent(int j, long k) const {
  long q = floor_div(k, period);
  long r = k - q * period;
  return mu[j][r] + q;
}

LatticeSequence make_lattice_sequence(const Field& F,
                                      std::vector<std::vector<long>> mu) {
  LatticeSequence L;
  L.F = F;
  L.dim = (int)mu.size();
  if (L.dim == 0) fail(Err::InvalidArgument, "empty lattice sequence");
  L.period = (int)mu[0].size();
  if (L.period < 1) fail(Err::InvalidArgument, "period must be positive");
  for (const auto& row : mu)
    if ((int)row.size() != L.period)
      fail(Err::InvalidArgument, "ragged exponent table");
  L.mu = std::move(mu);
  for (int j = 0; j < L.dim; ++j)
    for (long k = 0; k < L.period; ++k)
      if (L.exponent(j, k) < L.exponent(j, k - 1))
        fail(Err::InvalidArgument, "lattice sequence is not decreasing");
  return L;
}

MonomialForm monomial_of(const FormDescriptor& h) {
  if (h.kind == FormCase::Symplectic) return antidiagonal_pairing(h.dim());
  MonomialForm m;
  for (const Elem& d : h.diag) {
    m.pair.push_back((int)m.pair.size());
    m.val.push_back(d.valuation());
  }
  return m;
}

MonomialForm diagonal_pairing(const std::vector<long>& entry_vals) {
  MonomialForm m;
  for (size_t j = 0; j < entry_vals.size(); ++j) {
    m.pair.push_back((int)j);
    m.val.push_back(entry_vals[j]);
  }
  return m;
}

MonomialForm antidiagonal_pairing(int dim) {
  MonomialForm m;
  for (int j = 0; j < dim; ++j) {
    m.pair.push_back(dim - 1 - j);
    m.val.push_back(0);
  }
  return m;
}

std::vector<std::vector<long>> hom_bounds(const LatticeSequence& L, long n) {
  std::vector<std::vector<long>> b(L.dim, std::vector<long>(L.dim, 0));
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) {
      long best = LONG_MIN;
      for (long k = 0; k < L.period; ++k)
        best = std::max(best, L.exponent(i, k + n) - L.exponent(j, k));
      b[i][j] = best;
    }
  return b;
}

long normalizer_shift(const LatticeSequence& L, const std::vector<Elem>& diag) {
  if ((int)diag.size() != L.dim) fail(Err::BasisMismatch, "diagonal size mismatch");
  std::vector<long> v;
  for (const Elem& g : diag) {
    if (g.is_zero_at_precision()) fail(Err::NotInNormalizer, "entry vanishes at precision");
    v.push_back(g.valuation());
  }
  long vmin = *std::min_element(v.begin(), v.end());
  long vmax = *std::max_element(v.begin(), v.end());
  for (long n = L.period * (vmin - 1) - L.period; n <= L.period * (vmax + 1) + L.period; ++n) {
    bool ok = true;
    for (int j = 0; j < L.dim && ok; ++j)
      for (long k = 0; k < L.period && ok; ++k)
        if (L.exponent(j, k) + v[j] != L.exponent(j, k + n)) ok = false;
    if (ok) return n;
  }
  fail(Err::NotInNormalizer, "element does not shift the sequence");
}

std::vector<long> dual_exponents(const std::vector<long>& exps, const MonomialForm& h) {
  if (exps.size() != h.pair.size()) fail(Err::BasisMismatch, "form/lattice size mismatch");
  std::vector<long> out(exps.size(), 0);
  for (size_t j = 0; j < exps.size(); ++j)
    out[j] = 1 - exps[h.pair[j]] - h.val[j];
  return out;
}

namespace {

std::vector<long> lattice_at(const LatticeSequence& L, long k) {
  std::vector<long> e(L.dim);
  for (int j = 0; j < L.dim; ++j) e[j] = L.exponent(j, k);
  return e;
}

}  // namespace

std::optional<long> self_dual_witness(const LatticeSequence& L, const MonomialForm& h) {
  if ((int)h.pair.size() != L.dim) fail(Err::BasisMismatch, "form/lattice size mismatch");
  // Candidate d from the j = 0, k = 0 equation, then verify everywhere.
  std::vector<long> d0 = dual_exponents(lattice_at(L, 0), h);
  for (long d = L.period * (d0[0] - L.exponent(0, 0) - 1) - L.period;
       d <= L.period * (d0[0] - L.exponent(0, 0) + 1) + L.period; ++d) {
    if (L.exponent(0, d) != d0[0]) continue;
    bool ok = true;
    for (long k = 0; k < L.period && ok; ++k) {
      std::vector<long> want = dual_exponents(lattice_at(L, k), h);
      for (int j = 0; j < L.dim && ok; ++j)
        if (L.exponent(j, d - k) != want[j]) ok = false;
    }
    if (ok) return d;
  }
  return std::nullopt;
}

bool is_regular(const LatticeSequence& L) {
  long q0 = -1;
  for (long k = 0; k < L.period; ++k) {
    long q = 0;
    for (int j = 0; j < L.dim; ++j) q += L.exponent(j, k + 1) - L.exponent(j, k);
    if (q0 < 0) q0 = q;
    if (q != q0) return false;
  }
  return true;
}

bool is_vertex_index(const LatticeSequence& L, const MonomialForm& h, long l) {
  std::vector<long> lat = lattice_at(L, l);
  std::vector<long> dual = dual_exponents(lat, h);
  bool inside = true, strict = false;
  for (int j = 0; j < L.dim; ++j) {
    if (lat[j] < dual[j]) inside = false;           // L(l) inside its dual
    if (lat[j] > dual[j] + 1) return false;          // p * dual inside L(l)
    if (lat[j] < dual[j] + 1) strict = true;
  }
  return inside && strict;
}

DoubledSequence dagger(const LatticeSequence& L, const MonomialForm& h) {
  auto dopt = self_dual_witness(L, h);
  if (!dopt) fail(Err::NotSelfDual, "sequence is not self-dual for the form");
  long d = *dopt;
  const int e = L.period;
  const int N = L.dim;

  DoubledSequence out;
  out.seq.F = L.F;
  out.seq.dim = 2 * e * N;
  out.seq.period = e;
  out.seq.mu.assign(2 * e * N, std::vector<long>(e, 0));
  // Blocks b = 1..e carry the shifts L - (e - b); blocks e+1..2e their duals,
  // which by self-duality are the translates L(d + k + i - 1).
  for (int b = 1; b <= e; ++b)
    for (int j = 0; j < N; ++j)
      for (long k = 0; k < e; ++k)
        out.seq.mu[(b - 1) * N + j][k] = L.exponent(j, k - e + b);
  for (int i = 1; i <= e; ++i)
    for (int j = 0; j < N; ++j)
      for (long k = 0; k < e; ++k)
        out.seq.mu[(e + i - 1) * N + j][k] = L.exponent(j, d + k + i - 1);
  out.seq = make_lattice_sequence(L.F, std::move(out.seq.mu));

  // Anti-diagonal block pairing: block b against block 2e+1-b, inner pairing
  // from h.
  out.form.pair.assign(2 * e * N, 0);
  out.form.val.assign(2 * e * N, 0);
  for (int b = 1; b <= 2 * e; ++b) {
    int bp = 2 * e + 1 - b;
    for (int j = 0; j < N; ++j) {
      out.form.pair[(b - 1) * N + j] = (bp - 1) * N + h.pair[j];
      out.form.val[(b - 1) * N + j] = h.val[j];
    }
  }
  return out;
}

}  // namespace wittlab
