#pragma once

#include "wittlab/elem.hpp"

namespace wittlab {

// Class of x in F^x / (F^x)^2. Four classes for p odd: 1, u, pi, u*pi, with
// u the canonical lift of the smallest nonsquare residue.
struct SquareClass {
  Field F;
  int val_parity = 0;  // valuation mod 2
  int unit_bit = 0;    // 0: square unit part, 1: nonsquare

  bool operator==(const SquareClass& o) const {
    return val_parity == o.val_parity && unit_bit == o.unit_bit;
  }
};

SquareClass square_class(const Elem& x);
SquareClass sc_one(const Field& F);
SquareClass sc_of(const Field& F, int val_parity, int unit_bit);
SquareClass sc_mul(const SquareClass& a, const SquareClass& b);
SquareClass sc_neg(const SquareClass& a);  // class of -1 times a
// Canonical representative element: u^unit_bit * pi^val_parity.
Elem sc_representative(const SquareClass& c);

// Non-dyadic Hilbert symbol, computed in closed form; (a,b) = 1 iff
// z^2 = a x^2 + b y^2 has a nontrivial solution.
int hilbert_symbol(const SquareClass& a, const SquareClass& b);
int hilbert_symbol(const Elem& a, const Elem& b);

// Quadratic extension data E / E0 for a nontrivial involution, with the
// derived flags the norm-membership test needs.
struct QuadExt {
  Field E;
  Involution sigma;
  bool ramified = false;            // e(E/E0) == 2
  bool minus_one_square_E0 = false;
  bool minus_one_norm = false;      // -1 in N_{E/E0}(E^x)

  Elem pi0;          // canonical uniformizer of E0 (inside E)
  Elem nonsq0;       // canonical nonsquare unit of E0, sigma-fixed exactly
  Elem delta;        // canonical non-norm of E0^x
  Elem skew_unit;    // canonical skew element of valuation 0 or 1

  long val0(const Elem& x) const;  // normalized E0-valuation of an E0 element
};

QuadExt make_quad_ext(const Field& E, const Involution& sigma);

// x in E0, true iff x is a norm from E. Raises NotInFixedField when x is not
// sigma-fixed at precision.
bool is_norm(const Elem& x, const QuadExt& ctx);

}  // namespace wittlab
