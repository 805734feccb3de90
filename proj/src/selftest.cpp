#include "wittlab/selftest.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "wittlab/lattice.hpp"

namespace wittlab {

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point t0 = Clock::now();
  double secs() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

// ---------------------------------------------------------------------------
// Independent reference computations. These deliberately avoid the library's
// element arithmetic and classification tables: plain machine integers mod
// small prime powers, certified by the usual Newton criterion.
// ---------------------------------------------------------------------------

long pow_long(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long mod_inv_unit(long a, long m, long p) {
  // inverse of a unit mod m = p^k, by lifting the Fermat inverse mod p
  long inv = 1, base = ((a % p) + p) % p;
  for (long e = p - 2; e > 0; e >>= 1) {
    if (e & 1) inv = inv * base % p;
    base = base * base % p;
  }
  __int128 x = inv;
  while (true) {
    __int128 check = (__int128)a * x % m;
    if (check == 1) break;
    x = (x * (2 - (__int128)a * x % m)) % m;
    x %= m;
    if (x < 0) x += m;
  }
  return (long)x;
}

int vp_long(long a, long p, int cap) {
  if (a == 0) return cap;
  int v = 0;
  while (v < cap && a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

// Certified isotropy of a diagonal form with entry valuations <= 1: search
// primitive vectors mod p^3 with Q = 0 mod p^3 and gradient valuation <= 1.
bool isotropic_cert_search(long p, const std::vector<long>& diag) {
  const int n = (int)diag.size();
  if (n < 2) return false;
  const long p3 = pow_long(p, 3);
  std::vector<long> x(n, 0);
  // One coordinate is normalized to 1 (unit scaling); earlier ones run over
  // multiples of p, later ones over everything.
  for (int lead = 0; lead < n; ++lead) {
    std::vector<long> radix(n, 1);
    for (int i = 0; i < n; ++i) {
      if (i < lead) radix[i] = p * p;  // value p * t
      else if (i == lead) radix[i] = 1;
      else radix[i] = p3;
    }
    long total = 1;
    for (int i = 0; i < n; ++i) total *= radix[i];
    for (long idx = 0; idx < total; ++idx) {
      long t = idx;
      for (int i = 0; i < n; ++i) {
        long digit = t % radix[i];
        t /= radix[i];
        if (i < lead) x[i] = (p * digit) % p3;
        else if (i == lead) x[i] = 1;
        else x[i] = digit;
      }
      long q = 0;
      for (int i = 0; i < n; ++i) q = (q + diag[i] % p3 * (x[i] * x[i] % p3)) % p3;
      if (q % p3 != 0) continue;
      int t_grad = 3;
      for (int i = 0; i < n; ++i)
        t_grad = std::min(t_grad, vp_long(2 * diag[i] % p3 * x[i] % p3, p, 3));
      if (t_grad <= 1) return true;  // Newton lifts the zero
    }
  }
  return false;
}

int hilbert_bruteforce_impl(long p, long a, long b) {
  return isotropic_cert_search(p, {a, b, -1}) ? 1 : -1;
}

// Split one hyperbolic plane off a certified isotropic diagonal form and
// return the square-class data of the complement. Machine arithmetic mod p^K.
std::vector<std::pair<int, int>> split_plane(long p, const std::vector<long>& diag_in) {
  const int n = (int)diag_in.size();
  const int K = 12;
  const long pk = pow_long(p, K);
  std::vector<long> diag(diag_in);
  for (auto& d : diag) d = ((d % pk) + pk) % pk;

  // Find the certified zero again, mod p^3.
  const long p3 = pow_long(p, 3);
  std::vector<long> x(n, 0);
  bool found = false;
  int grad_i = -1;
  for (int lead = 0; lead < n && !found; ++lead) {
    std::vector<long> radix(n, 1);
    for (int i = 0; i < n; ++i)
      radix[i] = i < lead ? p * p : (i == lead ? 1 : p3);
    long total = 1;
    for (int i = 0; i < n; ++i) total *= radix[i];
    for (long idx = 0; idx < total && !found; ++idx) {
      long t = idx;
      for (int i = 0; i < n; ++i) {
        long digit = t % radix[i];
        t /= radix[i];
        x[i] = i < lead ? (p * digit) % p3 : (i == lead ? 1 : digit);
      }
      long q = 0;
      for (int i = 0; i < n; ++i) q = (q + diag[i] % p3 * (x[i] * x[i] % p3)) % p3;
      if (q % p3 != 0) continue;
      for (int i = 0; i < n; ++i)
        if (vp_long(2 * diag[i] % p3 * x[i] % p3, p, 3) <= 1) {
          found = true;
          grad_i = i;
          break;
        }
    }
  }
  if (!found) fail(Err::SingularSystem, "reference split lost its certificate");

  // Newton-lift the zero to mod p^K on the certified coordinate.
  auto Q = [&](const std::vector<long>& v) {
    __int128 s = 0;
    for (int i = 0; i < n; ++i) s += (__int128)diag[i] * v[i] % pk * v[i] % pk;
    long r = (long)(s % pk);
    return ((r % pk) + pk) % pk;
  };
  for (int iter = 0; iter < 2 * K; ++iter) {
    long q = Q(x);
    if (q == 0) break;
    long g = (long)((__int128)2 * diag[grad_i] % pk * x[grad_i] % pk);
    int tg = vp_long(g, p, K);
    long gu = g / pow_long(p, tg);
    long corr = (long)((__int128)(q / pow_long(p, tg)) * mod_inv_unit(gu, pk, p) % pk);
    x[grad_i] = (long)(((__int128)x[grad_i] - corr) % pk + pk) % pk;
  }

  auto B = [&](const std::vector<long>& v, const std::vector<long>& w) {
    __int128 s = 0;
    for (int i = 0; i < n; ++i) s += (__int128)diag[i] * v[i] % pk * w[i] % pk;
    return (long)(((s % pk) + pk) % pk);
  };

  // Partner w: a basis vector with minimal valuation pairing against x.
  int l = -1;
  int bestv = K;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    int v = vp_long(B(x, e), p, K);
    if (v < bestv) {
      bestv = v;
      l = i;
    }
  }
  if (l < 0 || bestv > 1) fail(Err::SingularSystem, "reference split found no partner");
  std::vector<long> w(n, 0);
  w[l] = 1;
  long bvw = B(x, w);

  // Complement basis: correct every other coordinate vector against the
  // plane span(x, w). B(x,x) = 0 mod p^K by the lift.
  std::vector<std::vector<long>> comp;
  for (int i = 0; i < n; ++i) {
    if (i == grad_i || i == l) continue;
    std::vector<long> e(n, 0);
    e[i] = 1;
    // c = e - mu x - lam w with B(c,x) = B(c,w) = 0:
    //   B(e,x) = mu B(x,x) + lam B(w,x) = lam B(w,x)
    //   B(e,w) = mu B(x,w) + lam B(w,w)
    int tv = vp_long(bvw, p, K);
    long unit = bvw / pow_long(p, tv);
    long uinv = mod_inv_unit(unit, pk, p);
    long bex = B(e, x), bew = B(e, w), bww = B(w, w);
    if (vp_long(bex, p, K) < tv || K <= 2 * tv)
      fail(Err::SingularSystem, "reference split ran out of digits");
    long lam = (long)((__int128)(bex / pow_long(p, tv)) * uinv % pk);
    long mu = (long)((((__int128)bew - (__int128)lam * bww) % pk + pk) % pk);
    mu = (long)((__int128)(mu / pow_long(p, tv)) * uinv % pk);
    std::vector<long> c(n);
    for (int t2 = 0; t2 < n; ++t2)
      c[t2] = (long)((((__int128)e[t2] - (__int128)mu * x[t2] - (__int128)lam * w[t2]) % pk + pk) % pk);
    comp.push_back(c);
  }

  // Gram of the complement, then congruence-diagonalize in the integers.
  int m = (int)comp.size();
  std::vector<std::vector<long>> G(m, std::vector<long>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G[i][j] = B(comp[i], comp[j]);
  const long u_ns = [&] {
    for (long c = 2; c < p; ++c) {
      long r = 1, base = c;
      for (long e2 = (p - 1) / 2; e2 > 0; e2 >>= 1) {
        if (e2 & 1) r = r * base % p;
        base = base * base % p;
      }
      if (r != 1) return c;
    }
    return 0L;
  }();

  std::vector<std::pair<int, int>> out;
  std::vector<int> alive(m);
  for (int i = 0; i < m; ++i) alive[i] = i;
  int budget = K - 2 * bestv;
  while (!alive.empty()) {
    int pi = -1, pv = budget;
    for (int a : alive) {
      int v = vp_long(G[a][a], p, budget);
      if (v < pv) {
        pv = v;
        pi = a;
      }
    }
    if (pi < 0) {
      // all diagonal entries vanish: add one row to another
      int bi = -1, bj = -1, bv = budget;
      for (int a : alive)
        for (int b : alive) {
          if (a >= b) continue;
          int v = vp_long(G[a][b], p, budget);
          if (v < bv) {
            bv = v;
            bi = a;
            bj = b;
          }
        }
      if (bi < 0) fail(Err::SingularSystem, "reference complement is degenerate");
      for (int t2 : alive) G[bi][t2] = (G[bi][t2] + G[bj][t2]) % pk;
      for (int t2 : alive) G[t2][bi] = (G[t2][bi] + G[t2][bj]) % pk;
      continue;
    }
    long d = G[pi][pi];
    int dv = vp_long(d, p, budget);
    long du = (d / pow_long(p, dv)) % p;
    // square class of the pivot
    long r = 1, base = du % p;
    for (long e2 = (p - 1) / 2; e2 > 0; e2 >>= 1) {
      if (e2 & 1) r = r * base % p;
      base = base * base % p;
    }
    out.emplace_back(r == 1 ? 0 : 1, dv % 2);
    long dinv_unit = mod_inv_unit(d / pow_long(p, dv), pk / pow_long(p, dv), p);
    for (int a : alive) {
      if (a == pi) continue;
      long num = G[a][pi];
      if (vp_long(num, p, budget) < dv)
        fail(Err::SingularSystem, "reference diagonalization lost digits");
      long lam = (long)((__int128)(num / pow_long(p, dv)) * dinv_unit % pk);
      for (int t2 : alive)
        G[a][t2] = (long)((((__int128)G[a][t2] - (__int128)lam * G[pi][t2]) % pk + pk) % pk);
      for (int t2 : alive)
        G[t2][a] = (long)((((__int128)G[t2][a] - (__int128)lam * G[t2][pi]) % pk + pk) % pk);
    }
    std::vector<int> rest;
    for (int a : alive)
      if (a != pi) rest.push_back(a);
    alive = std::move(rest);
  }
  (void)u_ns;
  return out;  // (unit_bit, val_parity) per complement entry
}

}  // namespace

int diman_bruteforce(long p, const std::vector<std::pair<int, int>>& entries) {
  if (entries.empty()) return 0;
  long u = 0;
  for (long c = 2; c < p; ++c) {
    long r = 1, base = c;
    for (long e2 = (p - 1) / 2; e2 > 0; e2 >>= 1) {
      if (e2 & 1) r = r * base % p;
      base = base * base % p;
    }
    if (r != 1) {
      u = c;
      break;
    }
  }
  std::vector<long> diag;
  for (auto [bit, val] : entries) {
    long d = bit ? u : 1;
    if (val % 2) d *= p;
    diag.push_back(d);
  }
  if (!isotropic_cert_search(p, diag)) return (int)entries.size();
  auto rest = split_plane(p, diag);
  return diman_bruteforce(p, rest);
}

int hilbert_bruteforce(long p, int a_unit, int a_val, int b_unit, int b_val) {
  long u = 0;
  for (long c = 2; c < p; ++c) {
    long r = 1, base = c;
    for (long e2 = (p - 1) / 2; e2 > 0; e2 >>= 1) {
      if (e2 & 1) r = r * base % p;
      base = base * base % p;
    }
    if (r != 1) {
      u = c;
      break;
    }
  }
  long a = (a_unit ? u : 1) * (a_val % 2 ? p : 1);
  long b = (b_unit ? u : 1) * (b_val % 2 ? p : 1);
  return hilbert_bruteforce_impl(p, a, b);
}

// ---------------------------------------------------------------------------

std::vector<SelfDualContext> standard_grid(long p, int digits) {
  Field Qp = make_field(p, 1, digits);
  long u = Qp->k->smallest_nonsquare()[0];
  std::vector<SelfDualContext> out;
  out.push_back(zero_context(Qp));
  out.push_back(canonical_context(extend_eisenstein(Qp, 2, {1}), Qp));
  out.push_back(canonical_context(extend_eisenstein(Qp, 2, {u}), Qp));
  out.push_back(canonical_context(extend_unramified(Qp, 2), Qp));
  out.push_back(canonical_context(extend_eisenstein(Qp, 4, {1}), Qp));
  out.push_back(canonical_context(extend_eisenstein(Qp, 4, {u}), Qp));
  {
    Field Eur = extend_unramified(Qp, 2);
    out.push_back(canonical_context(extend_eisenstein(Eur, 2, {1}), Qp));
    out.push_back(canonical_context(extend_eisenstein(Eur, 2, Eur->k->smallest_nonsquare()), Qp));
  }
  {
    out.push_back(canonical_context(extend_unramified(extend_eisenstein(Qp, 2, {1}), 2), Qp));
    out.push_back(canonical_context(extend_unramified(extend_eisenstein(Qp, 2, {u}), 2), Qp));
  }
  return out;
}

namespace {

std::string ctx_name(const SelfDualContext& c) {
  std::ostringstream os;
  os << (c.zero ? c.F->describe() + " (zero)" : c.E->describe());
  return os.str();
}

CheckResult check_witt_orders(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"witt-group-orders", true, "", 0};
  std::ostringstream detail;
  for (long p : {3L, 5L}) {
    Field Qp = make_field(p, 1, opt.digits);
    size_t o = enumerate_witt_group(FormCase::Orthogonal, Qp).size();
    if (o != 16) r.pass = false;
    detail << "p=" << p << " orth " << o << "; ";
    long u = Qp->k->smallest_nonsquare()[0];
    std::vector<Field> exts{extend_eisenstein(Qp, 2, {1}), extend_eisenstein(Qp, 2, {u}),
                            extend_unramified(Qp, 2)};
    for (const Field& E : exts) {
      auto ctx = std::make_shared<const QuadExt>(make_quad_ext(E, canonical_involution(E)));
      size_t w1 = enumerate_witt_group(FormCase::Unitary, E, ctx, 1).size();
      size_t wm = enumerate_witt_group(FormCase::Unitary, E, ctx, -1).size();
      if (w1 != 4 || wm != 4) r.pass = false;
      detail << "u" << w1 << "/" << wm << " ";
    }
    size_t s = enumerate_witt_group(FormCase::Symplectic, Qp).size();
    if (s != 1) r.pass = false;
    detail << "sympl " << s << "; ";
  }
  r.detail = detail.str();
  r.seconds = tm.secs();
  return r;
}

CheckResult check_transfer_closed_form(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"transfer-closed-form-vs-gram", true, "", 0};
  int count = 0;
  for (long p : opt.primes)
    for (const SelfDualContext& ctx : standard_grid(p, opt.digits)) {
      LinearForm lam = standard_linear_form(ctx);
      WittClass via_gram =
          ctx.zero
              ? transfer_class(witt_class(make_orthogonal_form(ctx.F, {Elem::one(ctx.F)})), lam)
              : transfer_class(witt_class(make_unitary_form(ctx.quad, 1, {Elem::one(ctx.E)})), lam);
      WittClass closed = transfer_unit_closed_form(ctx);
      if (!witt_eq(via_gram, closed)) {
        r.pass = false;
        r.detail += "mismatch at " + ctx_name(ctx) + "; ";
      }
      ++count;
    }
  if (r.pass) r.detail = std::to_string(count) + " grid transfers agree";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_parity_injectivity(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"transfer-parity-injectivity", true, "", 0};
  int pairs = 0;
  for (long p : opt.primes)
    for (const SelfDualContext& ctx : standard_grid(p, opt.digits)) {
      if (ctx.zero) continue;
      LinearForm lam = standard_linear_form(ctx);
      auto W = enumerate_witt_group(FormCase::Unitary, ctx.E, ctx.quad, 1);
      std::vector<WittClass> images;
      for (const auto& c : W) images.push_back(transfer_class(c, lam));
      for (size_t i = 0; i < W.size(); ++i)
        for (size_t j = i + 1; j < W.size(); ++j) {
          if (W[i].diman % 2 != W[j].diman % 2) continue;
          ++pairs;
          if (witt_eq(images[i], images[j])) {
            r.pass = false;
            r.detail += "collision at " + ctx_name(ctx) + "; ";
          }
        }
    }
  if (r.pass) r.detail = std::to_string(pairs) + " same-parity pairs stay distinct";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_max_aniso(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"transfer-max-anisotropic", true, "", 0};
  for (long p : opt.primes)
    for (const SelfDualContext& ctx : standard_grid(p, opt.digits)) {
      LinearForm lam = standard_linear_form(ctx);
      if (ctx.zero) {
        auto W = enumerate_witt_group(FormCase::Orthogonal, ctx.F);
        for (const auto& c : W)
          if (c.diman == 4 && transfer_class(c, lam).diman != 4) r.pass = false;
        continue;
      }
      auto W = enumerate_witt_group(FormCase::Unitary, ctx.E, ctx.quad, 1);
      for (const auto& c : W)
        if (c.diman == 2 && transfer_class(c, lam).diman != 4) {
          r.pass = false;
          r.detail += "at " + ctx_name(ctx) + "; ";
        }
    }
  if (r.pass) r.detail = "maximal class maps to maximal class on the whole grid";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_diman_oracle(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"anisotropic-dimension-oracle", true, "", 0};
  long checked = 0;
  int maxdim = opt.quick ? 3 : 4;
  for (long p : {3L, 5L}) {
    Field Qp = make_field(p, 1, opt.digits);
    std::vector<Elem> reps;
    for (int par = 0; par <= 1; ++par)
      for (int ub = 0; ub <= 1; ++ub) reps.push_back(sc_representative(sc_of(Qp, par, ub)));
    for (int dim = 1; dim <= maxdim; ++dim) {
      std::vector<int> idx(dim, 0);
      for (;;) {
        std::vector<Elem> entries;
        std::vector<std::pair<int, int>> classes;
        for (int i = 0; i < dim; ++i) {
          entries.push_back(reps[idx[i]]);
          classes.emplace_back(idx[i] & 1, idx[i] >> 1);
        }
        int fast = anisotropic_dimension(make_orthogonal_form(Qp, entries));
        int slow = diman_bruteforce(p, classes);
        ++checked;
        if (fast != slow) {
          r.pass = false;
          std::ostringstream os;
          os << "p=" << p << " dim=" << dim << " idx=";
          for (int i : idx) os << i;
          os << " fast=" << fast << " slow=" << slow << "; ";
          r.detail += os.str();
        }
        int pos = dim - 1;
        while (pos >= 0 && idx[pos] == 3) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
      }
    }
  }
  if (r.pass) r.detail = std::to_string(checked) + " diagonal forms agree with the residue search";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_gamma(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"equivariant-form-gamma", true, "", 0};
  int per_ctx = opt.quick ? 5 : 100;
  long runs = 0;
  std::mt19937_64 rng(opt.seed * 77 + 5);
  for (long p : opt.primes)
    for (const SelfDualContext& ctx : standard_grid(p, opt.digits)) {
      LinearForm lam = standard_linear_form(ctx);
      for (int t = 0; t < per_ctx; ++t) {
        Elem z = random_elem(ctx.E, rng(), 0, 2);
        Elem gamma0 = ctx.zero ? z : (t % 2 == 0 ? quadratic_norm(z, ctx.sigma)
                                                 : z + sigma_apply(ctx.sigma, z));
        if (gamma0.is_zero_at_precision()) continue;
        LinearForm lam2 = scaled_linear_form(lam, gamma0);
        Elem g = gamma_between_forms(lam, lam2);
        ++runs;
        if (!ctx.zero && !is_sigma_fixed(ctx.sigma, g)) {
          r.pass = false;
          r.detail += "gamma not fixed at " + ctx_name(ctx) + "; ";
        }
        if (!(g - gamma0).is_zero_at_precision()) {
          r.pass = false;
          r.detail += "gamma mismatch at " + ctx_name(ctx) + "; ";
        }
        // residual check on the power basis
        LinearForm lg = scaled_linear_form(lam, g);
        for (int i = 0; i < ctx.degree; ++i)
          if (!(lg.values[i] - lam2.values[i]).is_zero_at_precision()) {
            r.pass = false;
            r.detail += "residual at " + ctx_name(ctx) + "; ";
          }
      }
    }
  if (r.pass) r.detail = std::to_string(runs) + " random pairs solved exactly";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_hensel_bulk(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"hensel-lifting-bulk", true, "", 0};
  int total = opt.quick ? 100 : 1000;
  std::mt19937_64 rng(opt.seed * 31 + 7);
  std::vector<Field> fields;
  for (long p : opt.primes)
    for (const SelfDualContext& ctx : standard_grid(p, opt.digits)) fields.push_back(ctx.E);
  int done = 0, failures = 0;
  while (done < total) {
    const Field& E = fields[done % fields.size()];
    const ResidueField& k = *E->k;
    // plant a simple residue root
    auto root = k.element((long)(rng() % k.q()));
    int deg = 2 + (int)(rng() % 3);
    ResidueField::Poly gbar;
    for (int i = 0; i < deg - 1; ++i) gbar.push_back(k.element((long)(rng() % k.q())));
    gbar.push_back(k.one());
    if (k.is_zero(k.eval(gbar, root))) {
      gbar[0] = k.add(gbar[0], k.one());
      if (k.is_zero(k.eval(gbar, root))) continue;
    }
    // f = (X - root) * g, lifted with p-adic noise
    ResidueField::Poly fbar(gbar.size() + 1, k.zero());
    for (size_t i = 0; i < gbar.size(); ++i) {
      fbar[i + 1] = k.add(fbar[i + 1], gbar[i]);
      fbar[i] = k.sub(fbar[i], k.mul(root, gbar[i]));
    }
    EPoly f;
    for (size_t i = 0; i < fbar.size(); ++i) {
      ElemData d;
      d.pshift = 0;
      d.digits = E->coeff_digits;
      d.known = E->e * d.digits;
      d.c.assign((size_t)E->f * E->e, BigInt(0));
      for (int t2 = 0; t2 < E->f; ++t2) d.c[(size_t)t2 * E->e] = fbar[i][t2];
      Elem coeff = Elem::from_data(E, std::move(d));
      if (i + 1 < fbar.size())
        coeff = coeff + random_elem(E, rng(), 1, 3);  // noise in the maximal ideal
      f.push_back(coeff);
    }
    ElemData rd;
    rd.pshift = 0;
    rd.digits = E->coeff_digits;
    rd.known = E->e * rd.digits;
    rd.c.assign((size_t)E->f * E->e, BigInt(0));
    for (int t2 = 0; t2 < E->f; ++t2) rd.c[(size_t)t2 * E->e] = root[t2];
    Elem start = Elem::from_data(E, std::move(rd));
    try {
      Elem lifted = hensel_lift_root(f, start, 32);
      Elem val = eval_poly(f, lifted);
      if (!val.is_zero_at_precision() && val.valuation() < 32) ++failures;
    } catch (const Error&) {
      ++failures;
    }
    ++done;
  }
  if (failures > 0) {
    r.pass = false;
    r.detail = std::to_string(failures) + " of " + std::to_string(total) + " lifts failed";
  } else {
    r.detail = std::to_string(total) + " planted roots lifted to 32 digits";
  }
  r.seconds = tm.secs();
  return r;
}

long long gl_count_dp(const std::vector<int>& degs, long n) {
  std::vector<long long> dp(n + 1, 0);
  dp[0] = 1;
  for (int d : degs)
    for (long i = d; i <= n; ++i) dp[i] += dp[i - d];
  return dp[n];
}

CheckResult check_endo_counts(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"endo-parameter-counts", true, "", 0};
  std::mt19937_64 rng(opt.seed * 13 + 3);

  // GL catalogs against the generating-function count.
  int gl_runs = opt.quick ? 5 : 20;
  for (int t = 0; t < gl_runs; ++t) {
    int k = 1 + (int)(rng() % 5);
    std::vector<std::pair<std::string, int>> entries;
    std::vector<int> degs;
    for (int i = 0; i < k; ++i) {
      int d = 1 + (int)(rng() % 6);
      degs.push_back(d);
      entries.emplace_back("c" + std::to_string(i), d);
    }
    long n = (long)(rng() % 31);
    Catalog cat = make_gl_catalog(entries);
    auto out = enumerate_gl(cat, n);
    for (const auto& f : out)
      if (!validate_gl(f, cat, n)) r.pass = false;
    if ((long long)out.size() != gl_count_dp(degs, n)) {
      r.pass = false;
      r.detail += "GL count mismatch at trial " + std::to_string(t) + "; ";
    }
  }

  // Classical catalogs over Q_3 against an independent nested-loop count.
  Field Q3 = make_field(3, 1, opt.digits);
  auto grid3 = standard_grid(3, opt.digits);
  int cl_runs = opt.quick ? 3 : 10;
  for (int t = 0; t < cl_runs; ++t) {
    bool symplectic = t % 3 == 2;
    AmbientCase amb = symplectic ? symplectic_case(Q3) : orthogonal_case(Q3);
    std::vector<ClassicalClassSpec> specs;
    {
      ClassicalClassSpec z;
      z.id = "zero";
      z.kind = EndoClass::Kind::Zero;
      z.degree = 1;
      if (rng() % 2 == 0) specs.push_back(z);
    }
    int extra = 1 + (int)(rng() % 2);
    for (int i = 0; i < extra; ++i) {
      ClassicalClassSpec s;
      s.id = "s" + std::to_string(i);
      if (!symplectic && rng() % 3 == 0) {
        s.kind = EndoClass::Kind::NonSkew;
        s.degree = 1 + (int)(rng() % 3);
      } else {
        s.kind = EndoClass::Kind::Skew;
        const SelfDualContext& c = grid3[1 + rng() % (grid3.size() - 1)];
        s.field_ctx = c;
        s.degree = c.degree;
      }
      specs.push_back(s);
    }
    if (specs.empty()) continue;
    Catalog cat = make_classical_catalog(amb, specs);
    auto W = amb.witt_group();
    const WittClass& target = W[rng() % W.size()];
    long n = (long)(rng() % 13);
    auto out = enumerate_classical(cat, n, target);
    for (const auto& f : out)
      if (!validate_classical(f, cat, n, target)) {
        r.pass = false;
        r.detail += "invalid parameter emitted; ";
      }
    // Independent count: materialize option lists and run plain loops with a
    // precomputed addition table on class keys.
    std::vector<std::array<int, 4>> keys;
    for (const auto& w : W) keys.push_back(w.key);
    auto key_index = [&](const WittClass& w) {
      for (size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == w.key) return (int)i;
      return -1;
    };
    std::vector<std::vector<int>> add(W.size(), std::vector<int>(W.size(), 0));
    for (size_t i = 0; i < W.size(); ++i)
      for (size_t j = 0; j < W.size(); ++j) add[i][j] = key_index(witt_add(W[i], W[j]));
    int zero_idx = key_index(amb.zero_class());
    int target_idx = key_index(target);
    struct Opt2 {
      long contrib;
      int wt;
    };
    std::vector<std::vector<Opt2>> options;
    for (const EndoClass& c : cat.classes) {
      std::vector<Opt2> o;
      for (long f1 = 0; 2 * f1 * c.degree <= n; ++f1)
        for (const TypeEntry& ty : c.types) {
          long contrib = (long)c.degree * (2 * f1 + ty.diman);
          if (contrib <= n) o.push_back({contrib, key_index(ty.wtF)});
        }
      options.push_back(o);
    }
    long long brute = 0;
    std::vector<size_t> pick(options.size(), 0);
    for (;;) {
      long total = 0;
      int wt = zero_idx;
      for (size_t i = 0; i < options.size(); ++i) {
        total += options[i][pick[i]].contrib;
        wt = add[wt][options[i][pick[i]].wt];
      }
      if (total == n && wt == target_idx) ++brute;
      size_t pos = 0;
      while (pos < options.size() && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
      if (pos == options.size()) break;
    }
    if ((long long)out.size() != brute) {
      r.pass = false;
      r.detail += "classical count mismatch at trial " + std::to_string(t) + " (" +
                  std::to_string(out.size()) + " vs " + std::to_string(brute) + "); ";
    }
  }

  // Symplectic zero-class catalogs: exactly one parameter per even dimension.
  {
    AmbientCase amb = symplectic_case(Q3);
    ClassicalClassSpec z;
    z.id = "zero";
    z.kind = EndoClass::Kind::Zero;
    z.degree = 1;
    Catalog cat = make_classical_catalog(amb, {z});
    for (long n = 0; n <= 12; ++n) {
      auto out = enumerate_classical(cat, n, amb.zero_class());
      size_t want = n % 2 == 0 ? 1 : 0;
      if (out.size() != want) {
        r.pass = false;
        r.detail += "symplectic zero catalog n=" + std::to_string(n) + "; ";
      }
    }
  }

  if (r.pass) r.detail = "GL DP counts, classical loop counts, symplectic forced counts agree";
  r.seconds = tm.secs();
  return r;
}

CheckResult check_dagger(const SelftestOptions& opt) {
  Timer tm;
  CheckResult r{"doubling-regular-self-dual", true, "", 0};
  std::mt19937_64 rng(opt.seed * 101 + 9);
  Field Q3 = make_field(3, 1, opt.digits);
  int runs = opt.quick ? 10 : 50;
  for (int t = 0; t < runs; ++t) {
    // Random decreasing periodic block M, doubled against its dual so the
    // result is self-dual by construction.
    int N1 = 1 + (int)(rng() % 2);
    int e = 1 + (int)(rng() % 4);
    std::vector<std::vector<long>> mu(N1, std::vector<long>(e));
    for (int j = 0; j < N1; ++j) {
      long v = (long)(rng() % 3) - 1;
      for (int k2 = 0; k2 < e; ++k2) {
        mu[j][k2] = v;
        if (rng() % 2 == 0) ++v;
      }
      if (mu[j][e - 1] > mu[j][0] + 1) mu[j][e - 1] = mu[j][0] + 1;  // keep wrap legal
    }
    std::vector<long> pairing_vals(N1);
    for (auto& v : pairing_vals) v = (long)(rng() % 2);
    // Lambda = M + dual(M): exponents of the dual sequence at k are
    // 1 - val - mu(-k).
    std::vector<std::vector<long>> full(2 * N1, std::vector<long>(e));
    LatticeSequence M = make_lattice_sequence(Q3, mu);
    for (int j = 0; j < N1; ++j)
      for (int k2 = 0; k2 < e; ++k2) {
        full[j][k2] = M.exponent(j, k2);
        full[N1 + j][k2] = 1 - pairing_vals[j] - M.exponent(j, -k2);
      }
    MonomialForm h;
    h.pair.resize(2 * N1);
    h.val.resize(2 * N1);
    for (int j = 0; j < N1; ++j) {
      h.pair[j] = N1 + j;
      h.pair[N1 + j] = j;
      h.val[j] = pairing_vals[j];
      h.val[N1 + j] = pairing_vals[j];
    }
    LatticeSequence L = make_lattice_sequence(Q3, full);
    if (!self_dual_witness(L, h)) {
      r.pass = false;
      r.detail += "constructed sequence not self-dual at trial " + std::to_string(t) + "; ";
      continue;
    }
    auto dag = dagger(L, h);
    if (!is_regular(dag.seq) || !self_dual_witness(dag.seq, dag.form)) {
      r.pass = false;
      r.detail += "doubling failed at trial " + std::to_string(t) + "; ";
    }
    if (dag.seq.dim != 2 * L.period * L.dim) {
      r.pass = false;
      r.detail += "dimension wrong at trial " + std::to_string(t) + "; ";
    }
  }
  if (r.pass) r.detail = std::to_string(runs) + " random doublings regular and self-dual";
  r.seconds = tm.secs();
  return r;
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(check_witt_orders(opt));
  out.push_back(check_transfer_closed_form(opt));
  out.push_back(check_parity_injectivity(opt));
  out.push_back(check_max_aniso(opt));
  out.push_back(check_diman_oracle(opt));
  out.push_back(check_gamma(opt));
  out.push_back(check_hensel_bulk(opt));
  out.push_back(check_endo_counts(opt));
  out.push_back(check_dagger(opt));
  return out;
}

}  // namespace wittlab
