#pragma once

#include <optional>
#include <vector>

#include "wittlab/errors.hpp"

namespace wittlab {

// Arithmetic in F_{p^f} = F_p[t]/(g), g monic irreducible of degree f.
// Elements are coefficient vectors of length f, entries in [0, p).
// Fields stay tiny (q <= p^8), so everything is plain scanning arithmetic.
class ResidueField {
 public:
  using El = std::vector<long>;

  ResidueField(long p, int f, std::vector<long> g);

  long p() const { return p_; }
  int degree() const { return f_; }
  long q() const { return q_; }
  const std::vector<long>& modulus() const { return g_; }

  El zero() const;
  El one() const;
  El gen() const;                 // the class of t
  El from_int(long n) const;      // image of an integer
  El element(long index) const;   // index written base p, little-endian
  long index_of(const El& a) const;

  bool is_zero(const El& a) const;
  bool eq(const El& a, const El& b) const;

  El add(const El& a, const El& b) const;
  El sub(const El& a, const El& b) const;
  El neg(const El& a) const;
  El mul(const El& a, const El& b) const;
  El inv(const El& a) const;
  El pow(const El& a, long long e) const;
  El frobenius(const El& a, int iterations = 1) const;  // x -> x^(p^iterations)

  bool is_square(const El& a) const;  // nonzero a; p odd
  std::optional<El> sqrt(const El& a) const;
  // Lexicographically smallest nonsquare (by element index).
  El smallest_nonsquare() const;

  // Polynomials over this field are coefficient vectors of El, lowest first.
  using Poly = std::vector<El>;
  El eval(const Poly& f, const El& x) const;
  std::vector<El> roots(const Poly& f) const;
  // Monic minimal polynomial of a over the subfield fixed by x -> x^(p^d);
  // d must divide f. Coefficients land in that subfield.
  Poly min_poly_over(const El& a, int d) const;
  bool in_subfield(const El& a, int d) const;
  // Frobenius orbit size of a over F_{p^d}.
  int orbit_size(const El& a, int d) const;

  // Canonical monic irreducible of degree f over F_p: the first irreducible
  // in base-p counting order of the coefficient tuple. Deterministic table.
  static std::vector<long> canonical_irreducible(long p, int f);
  static bool poly_irreducible_over_fp(long p, const std::vector<long>& g);

 private:
  long p_;
  int f_;
  long q_;
  std::vector<long> g_;  // size f_+1, g_[f_] == 1

  El reduce(std::vector<long> a) const;  // mod g_, mod p
};

}  // namespace wittlab
