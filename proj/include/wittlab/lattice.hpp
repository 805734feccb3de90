#pragma once

#include <optional>

#include "wittlab/forms.hpp"

namespace wittlab {

// Periodic decreasing lattice sequence in diagonal form: the k-th lattice is
// the direct sum of p^mu[j][k] times the j-th basis line, with
// mu[j][k + period] = mu[j][k] + 1. Exponents are uniformizer exponents of F.
struct LatticeSequence {
  Field F;
  int dim = 0;
  int period = 1;
  std::vector<std::vector<long>> mu;  // [dim][period]

  long exponent(int j, long k) const;
};

LatticeSequence make_lattice_sequence(const Field& F,
                                      std::vector<std::vector<long>> mu);

// Monomial Gram data on the lattice basis: one nonzero entry per row, in
// column pair[j], of the recorded valuation. Covers diagonal forms and the
// anti-diagonal hyperbolic normal forms.
struct MonomialForm {
  std::vector<int> pair;
  std::vector<long> val;
};

MonomialForm monomial_of(const FormDescriptor& h);
MonomialForm diagonal_pairing(const std::vector<long>& entry_vals);
MonomialForm antidiagonal_pairing(int dim);

// Valuation bounds of the order filtration: a in a_n iff
// val(a_{ij}) >= bounds[i][j].
std::vector<std::vector<long>> hom_bounds(const LatticeSequence& L, long n);

// The shift index of a diagonal element normalizing the sequence.
long normalizer_shift(const LatticeSequence& L, const std::vector<Elem>& diag);

// Dual of a single lattice given by exponents.
std::vector<long> dual_exponents(const std::vector<long>& exps, const MonomialForm& h);

// Witness d with L(d - k) = L(k)^dual for all k, when one exists.
std::optional<long> self_dual_witness(const LatticeSequence& L, const MonomialForm& h);

bool is_regular(const LatticeSequence& L);

// Index predicate: p * L(l)^dual strictly inside L(l) inside L(l)^dual.
bool is_vertex_index(const LatticeSequence& L, const MonomialForm& h, long l);

// The 2e-fold doubling of a self-dual sequence: e shifted copies followed by
// their duals, with the anti-diagonal block form. Always regular and
// self-dual; NotSelfDual when the input is not.
struct DoubledSequence {
  LatticeSequence seq;
  MonomialForm form;
};
DoubledSequence dagger(const LatticeSequence& L, const MonomialForm& h);

}  // namespace wittlab
