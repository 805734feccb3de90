#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wittlab/field.hpp"

namespace wittlab {

// Immutable element of a tame extension field, with tracked precision.
// Arithmetic never reports more uniformizer digits than the inputs justify.
class Elem {
 public:
  Elem() = default;

  static Elem from_int(const Field& F, long n);
  static Elem from_bigint(const Field& F, const BigInt& n);
  static Elem from_data(const Field& F, ElemData d);
  static Elem zero(const Field& F);              // zero at working precision
  static Elem zero_known(const Field& F, int known);
  static Elem one(const Field& F) { return from_int(F, 1); }
  static Elem uniformizer(const Field& F);       // x when e > 1, else p
  static Elem unram_gen(const Field& F);         // the flat y (f > 1)
  // Tower generators: step index into F->steps; -1 is the base generator.
  static Elem tower_gen(const Field& F, int step_index);
  static Elem nonsquare_unit(const Field& F);    // canonical lift

  bool valid() const { return fd_ != nullptr; }
  const Field& parent() const { return fd_; }
  const ElemData& data() const { return d_; }

  bool is_zero_at_precision() const { return !val_.has_value(); }
  long valuation() const;                        // throws when zero at precision
  std::optional<long> valuation_opt() const { return val_; }
  int known() const { return d_.known; }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator-() const;
  Elem operator*(const Elem& o) const;
  Elem inv() const;
  Elem pow(long n) const;

  // x * uniformizer^k, exact in the flat model.
  Elem shift_uniformizer(long k) const;
  // x * p^k, exact.
  Elem shift_p(long k) const;
  // Unit part x * pi^{-v(x)}.
  Elem unit_part() const;
  // Residue of a valuation-zero element.
  ResidueField::El residue() const;

  Elem truncated(int known) const;

  // Value equality to the common known precision of both operands.
  bool same_value(const Elem& o) const;
  bool is_one() const;

  std::string str() const;

 private:
  Field fd_;
  ElemData d_;
  std::optional<long> val_;

  friend Elem normalized(const Field& F, ElemData d);
};

// Canonicalize: strip p-content into pshift, clamp digits to known, compute
// the valuation. All constructors and arithmetic funnel through this.
Elem normalized(const Field& F, ElemData d);

// The exact value of the flat Eisenstein unit polynomial U(y).
Elem unit_poly_value(const Field& F);

// Rewrite raw parent-field data in an extension, given the images of the
// parent's flat generators. Plumbing shared by field construction and
// embeddings.
Elem substitute_generators(const Field& E, const Field& F, const ElemData& g,
                           const Elem& ey, const Elem& ex);

// Polynomials over E, coefficient list lowest-degree first.
using EPoly = std::vector<Elem>;
Elem eval_poly(const EPoly& f, const Elem& x);
EPoly poly_derivative(const EPoly& f);

// Simple-root Newton lifting. `approx` must satisfy f(approx) = 0 and
// f'(approx) != 0 in the residue field. Returns r with f(r) = 0 mod pi^N
// and r = approx mod pi.
Elem hensel_lift_root(const EPoly& f, const Elem& approx, int target_digits);

struct SquareTest {
  bool square = false;
  std::optional<Elem> witness;  // w with w^2 = x to working precision
};
SquareTest is_square(const Elem& x);

// Hensel root of t^n = u for a unit u whose residue has the given n-th root.
Elem unit_nth_root(const Elem& u, long n, const ResidueField::El& residue_root);

Elem sigma_apply(const Involution& s, const Elem& x);
bool is_sigma_fixed(const Involution& s, const Elem& x);
bool is_sigma_skew(const Involution& s, const Elem& x);
// x * sigma(x) for a nontrivial involution; lands in the fixed field.
Elem quadratic_norm(const Elem& x, const Involution& s);

// Deterministic pseudo-random element with valuation in [vmin, vmax], for
// property tests.
Elem random_elem(const Field& F, unsigned long long seed, long vmin = 0,
                 long vmax = 3);

}  // namespace wittlab
