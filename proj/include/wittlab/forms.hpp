#pragma once

#include <array>
#include <memory>

#include "wittlab/classgroups.hpp"
#include "wittlab/linalg.hpp"

namespace wittlab {

enum class FormCase { Orthogonal, Unitary, Symplectic };

const char* form_case_name(FormCase c);

// A nondegenerate epsilon-hermitian space in diagonal (or, for the
// symplectic case, hyperbolic) presentation.
struct FormDescriptor {
  FormCase kind = FormCase::Orthogonal;
  int epsilon = 1;
  Field F;                              // ground field
  std::shared_ptr<const QuadExt> ctx;   // unitary case only
  std::vector<Elem> diag;               // orthogonal / unitary entries
  int hyperbolic = 0;                   // symplectic plane count

  int dim() const {
    return kind == FormCase::Symplectic ? 2 * hyperbolic : (int)diag.size();
  }
};

FormDescriptor make_orthogonal_form(const Field& F, std::vector<Elem> entries);
FormDescriptor make_unitary_form(std::shared_ptr<const QuadExt> ctx, int epsilon,
                                 std::vector<Elem> entries);
FormDescriptor make_symplectic_form(const Field& F, int planes);

// Complete invariants: dimension, determinant class, and (orthogonal) the
// Hasse product of Hilbert symbols over entry pairs. Skew-hermitian forms
// are twisted to the hermitian model first.
struct FormInvariants {
  FormCase kind = FormCase::Orthogonal;
  int dim = 0;
  int det_parity = 0;   // orthogonal: square class of det
  int det_unit = 0;
  int hasse = 1;
  int det_norm_bit = 0;  // unitary: det in E0^x / N(E^x)
};

FormInvariants invariants(const FormDescriptor& h);

// Dimension of the anisotropic kernel, from the invariant tables.
int anisotropic_dimension(const FormDescriptor& h);

// Element of the Witt group: case data plus the canonical anisotropic
// representative. Skew-hermitian classes are stored via their hermitian
// twist model and re-skewed on demand.
struct WittClass {
  FormCase kind = FormCase::Orthogonal;
  int epsilon = 1;
  Field F;
  std::shared_ptr<const QuadExt> ctx;
  int diman = 0;
  std::vector<Elem> model_rep;  // hermitian/orthogonal model entries
  std::array<int, 4> key{0, 0, 0, 0};

  bool is_hyperbolic() const { return diman == 0; }
  // Representative entries in the declared epsilon convention.
  std::vector<Elem> rep_entries() const;
  FormDescriptor rep_form() const;
};

bool same_group(const WittClass& a, const WittClass& b);
bool witt_eq(const WittClass& a, const WittClass& b);

WittClass witt_class(const FormDescriptor& h);
WittClass witt_zero(FormCase kind, const Field& F,
                    std::shared_ptr<const QuadExt> ctx = nullptr, int epsilon = 0);
WittClass witt_add(const WittClass& a, const WittClass& b);
WittClass witt_neg(const WittClass& a);

// Twist h^a(v, w) = h(v, a w) by a sigma-symmetric or sigma-skew element.
FormDescriptor twist(const FormDescriptor& h, const Elem& a);

// All Witt classes of the case, generated by closing the canonical
// generators under addition; sorted by class key.
std::vector<WittClass> enumerate_witt_group(FormCase kind, const Field& F,
                                            std::shared_ptr<const QuadExt> ctx = nullptr,
                                            int epsilon = 0);

// Diagonalization of an explicit Gram matrix, pivots chosen by minimal
// valuation. For the symplectic case the result is the hyperbolic count.
FormDescriptor diagonalize(const EMat& gram, FormCase kind, const Field& F,
                           std::shared_ptr<const QuadExt> ctx = nullptr, int epsilon = 1);

}  // namespace wittlab
