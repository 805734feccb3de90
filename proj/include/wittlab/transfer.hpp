#pragma once

#include "wittlab/embed.hpp"
#include "wittlab/forms.hpp"

namespace wittlab {

// A self-dual extension datum over a declared base: E = F[beta] with an
// involution sending beta to -beta, or the zero datum (E = F, beta absent,
// identity transfer).
struct SelfDualContext {
  Field E;
  Field F;
  Involution sigma;                    // trivial iff zero datum
  Elem beta;                           // invalid in the zero datum
  bool zero = true;
  std::shared_ptr<const QuadExt> quad; // null in the zero datum
  int degree = 1;                      // [E : F]

  std::vector<Elem> power_basis() const;  // 1, beta, ..., beta^{degree-1}
};

SelfDualContext zero_context(const Field& F);
SelfDualContext make_context(const Field& E, const Field& F, const Involution& sigma,
                             const Elem& beta);
// Canonical involution and canonical skew generator for the top quadratic
// step of E (deterministic choices).
SelfDualContext canonical_context(const Field& E, const Field& F);
Elem canonical_skew_generator(const Field& E, const Field& F, const Involution& sigma);

// F-linear form on E given by its values on the power basis; equivariant
// for (sigma_E, id) means the odd-power values vanish.
struct LinearForm {
  SelfDualContext ctx;
  std::vector<Elem> values;  // elements of F
};

// lambda(1) = 1, lambda(beta^i) = 0 for 0 < i < degree.
LinearForm standard_linear_form(const SelfDualContext& ctx);
LinearForm make_linear_form(const SelfDualContext& ctx, std::vector<Elem> values);
// lambda_gamma(x) = lambda(x * gamma) for gamma in E0.
LinearForm scaled_linear_form(const LinearForm& l, const Elem& gamma);
Elem eval_linear(const LinearForm& l, const Elem& x);

// Gram matrix over F of lambda . h on the basis beta^i (x) v_k.
EMat transfer_gram(const FormDescriptor& h, const LinearForm& l);
// The transfer, diagonalized over F. Hermitian input gives an orthogonal
// form over F; skew input gives a symplectic one.
FormDescriptor transfer_form(const FormDescriptor& h, const LinearForm& l);
WittClass transfer_class(const WittClass& c, const LinearForm& l);

// lambda_beta^*(<1>) by the closed determinant formula: <1> for odd degree,
// <1> + <(-1)^(n/2+1) N_{E/F}(beta)> for even. Must agree with the Gram
// route; the acceptance suite checks exactly that.
WittClass transfer_unit_closed_form(const SelfDualContext& ctx);

// The unique gamma in E0 with lambda(x gamma) = lambda'(x) for all x.
Elem gamma_between_forms(const LinearForm& l, const LinearForm& lp);

}  // namespace wittlab
