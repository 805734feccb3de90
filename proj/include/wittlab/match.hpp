#pragma once

#include "wittlab/transfer.hpp"

namespace wittlab {

// Explicit bijection table between the Witt groups of two self-dual data
// over the same base, pinned by: it preserves anisotropic dimension and maps
// the tower of <beta> (epsilon = -1) resp. <beta^2> (epsilon = +1) to the
// corresponding tower on the other side.
struct MatchingMap {
  SelfDualContext from;
  SelfDualContext to;
  int epsilon = 1;
  std::vector<WittClass> domain;
  std::vector<WittClass> image;  // image[i] corresponds to domain[i]

  WittClass apply(const WittClass& c) const;
};

MatchingMap matching_map(const SelfDualContext& a, const SelfDualContext& b,
                         int epsilon);

// The tower class of <beta> or <beta^2> in W(E), per epsilon.
WittClass beta_tower_class(const SelfDualContext& ctx, int epsilon);

// Whether the squares-matching coincides with the unit matching: true iff
// -1 is a square in both extensions or in neither.
bool w11_equals_wsquares(const SelfDualContext& a, const SelfDualContext& b);

// Pair (beta-context, Witt class over E) up to the matching equivalence.
struct WittType {
  SelfDualContext ctx;
  WittClass cls;          // over ctx.E, ambient epsilon
  int diman = 0;
  WittClass wtF;          // transfer down to the base Witt group
  bool beta_aligned = false;

  std::array<int, 8> canonical_key() const;
};

WittType make_witt_type(const SelfDualContext& ctx, const WittClass& cls);
// All Witt types available on one context (one per Witt class of E).
std::vector<WittType> witt_types_of(const SelfDualContext& ctx, int epsilon);

bool witt_type_equiv(const WittType& a, const WittType& b);
WittClass wt_f(const WittType& T);

}  // namespace wittlab
