#pragma once

#include "wittlab/elem.hpp"

namespace wittlab {

// Map an element of an ancestor field up the tower into `target`.
Elem embed_into(const Field& target, const Elem& x);

// An F-embedding between two tame towers over the same base, recorded by the
// images of the source's flat generators (and hence of every tower step
// generator).
struct FieldEmbedding {
  Field src;
  Field dst;
  Elem y_image;  // image of src's unramified generator
  Elem x_image;  // image of src's Eisenstein generator (src->e > 1)

  Elem apply(const Elem& x) const;
  // Images of the source tower step generators (-1 = base generator).
  Elem gen_image(int step_index) const;
};

// Embedding E1 -> E2 built from minimal-element data: b1 generates E1 over
// the common base, with valuation prime to e(E1); b1 and b2 have equal
// normalized valuations and matching residue data. The returned embedding
// satisfies v(phi(b1) - b2) > v(b2). Failed hypotheses raise
// HypothesisViolated with the condition named.
FieldEmbedding embed_minimal(const Field& E1, const Elem& b1, const Field& E2,
                             const Elem& b2);

}  // namespace wittlab
