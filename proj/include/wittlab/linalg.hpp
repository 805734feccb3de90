#pragma once

#include <optional>
#include <vector>

#include "wittlab/elem.hpp"

namespace wittlab {

// Dense matrix over one field's elements, row-major.
struct EMat {
  int rows = 0;
  int cols = 0;
  std::vector<Elem> a;

  Elem& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const Elem& at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

EMat emat_zero(const Field& F, int rows, int cols);

// Solve the square system A x = b with valuation-minimizing pivoting.
// Throws `on_singular` when no pivot survives at precision.
std::vector<Elem> solve_linear(EMat A, std::vector<Elem> b,
                               Err on_singular = Err::SingularSystem);

// Inverse of a square matrix, same pivoting rules.
EMat invert_matrix(const EMat& A, Err on_singular = Err::SingularSystem);

// Q_p-coordinates of x with respect to the flat basis y^i x^j of its field.
// Coordinates are elements of the supplied rational base field.
std::vector<Elem> qp_coordinates(const Field& Qp, const Elem& x);

// The rational base field Q_p of a tower, at the tower's working precision.
Field rational_base(const Field& E);

// F-module coordinates of v with respect to `basis` (elements of E, F an
// ancestor of E): v = sum c_i basis_i with c_i in F. Returns nullopt when v
// is not in the span at precision.
std::optional<std::vector<Elem>> coordinates_over(const std::vector<Elem>& basis,
                                                  const Field& F, const Elem& v);

// Monic minimal polynomial of x over the ancestor field F, lowest degree
// coefficient first; the leading 1 is included.
EPoly min_poly_over(const Elem& x, const Field& F);

// Field norm N_{E/F}(x), F an ancestor of x's field.
Elem field_norm(const Elem& x, const Field& F);

// [E : F] for an ancestor F.
int relative_degree(const Field& E, const Field& F);

}  // namespace wittlab
