#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittlab/errors.hpp"
#include "wittlab/residue.hpp"

namespace wittlab {

using BigInt = boost::multiprecision::cpp_int;

// Raw element payload, without a field pointer. The value is
//   p^pshift * sum c[i*e + j] * y^i * x^j
// with coefficients stored mod p^digits. `known` is the number of
// uniformizer digits of E the value is determined to.
struct ElemData {
  int pshift = 0;
  int digits = 0;
  int known = 0;
  std::vector<BigInt> c;
};

struct TowerStep {
  enum class Kind { Unramified, Eisenstein };
  Kind kind;
  int param = 1;                 // inertia or ramification degree of the step
  std::vector<long> poly;        // unramified: residue polynomial (element
                                 // indices over the previous residue field);
                                 // empty = canonical choice
  std::vector<long> unit;        // eisenstein: unit as polynomial in the
                                 // current unramified generator; {u} for ints
};

class FieldImpl;
using Field = std::shared_ptr<const FieldImpl>;

// A finite tame extension of Q_p, presented as a tower but computed in a
// flattened model: E = Q_p(y, x) with h(y) = 0 (h monic, irreducible mod p)
// and x^e = U(y) * p, U a unit polynomial with exact integer coefficients.
// Valuations are exact in this model: v(c * y^i * x^j) = e*v_p(c) + j.
class FieldImpl {
 public:
  long p = 3;
  int f0 = 1;
  std::vector<long> base_poly;   // deg f0 over F_p
  std::vector<TowerStep> steps;

  int f = 1;                     // total inertia degree over Q_p
  int e = 1;                     // total ramification index over Q_p
  std::vector<long> h;           // deg f, monic, entries in [0,p)
  std::vector<BigInt> U;         // deg < f, exact integers, unit mod p
  std::unique_ptr<ResidueField> k;

  int digits = 32;               // working uniformizer precision for caches
  int coeff_digits = 32;         // ceil(digits / e)

  Field parent;                  // null at the base
  ElemData emb_y;                // image of parent's y in this field
  ElemData emb_x;                // image of parent's x (parent->e > 1 only)

  ElemData base_gen;             // image of the base unramified generator
  std::vector<ElemData> step_gens;

  long q() const { return k->q(); }
  int abs_degree() const { return f * e; }
  BigInt pow_p(int n) const;     // p^n, n >= 0

  std::string describe() const;
};

// Base field with residue cardinality p^f0. A residue polynomial may be
// supplied (coefficients in [0,p), monic of degree f0); otherwise the
// canonical table choice is used.
Field make_field(long p, int f0, int digits = 32,
                 const std::vector<long>& residue_poly = {});
Field extend(const Field& F, const TowerStep& step);
Field extend_unramified(const Field& F, int fstep,
                        const std::vector<long>& poly = {});
Field extend_eisenstein(const Field& F, int estep,
                        const std::vector<long>& unit = {1});

bool same_field(const Field& a, const Field& b);
bool is_ancestor(const Field& anc, const Field& desc);

// An involution of E acting trivially on Q_p. RamFlip negates the flat
// Eisenstein generator (e even); UnramFrob is the half-inertia Frobenius
// (f even). The fixed field E0 is tracked through derived data only.
class Involution {
 public:
  enum class Kind { Trivial, RamFlip, UnramFrob };
  Kind kind = Kind::Trivial;
  Field E;
  std::vector<ElemData> frob_pows;  // sigma(y)^i, i < f (UnramFrob only)

  bool trivial() const { return kind == Kind::Trivial; }
  // e(E/E0) and residue degree of E0 over F_p.
  int ram_over_fixed() const { return kind == Kind::RamFlip ? 2 : 1; }
  int fixed_f() const { return kind == Kind::UnramFrob ? E->f / 2 : E->f; }
  int fixed_e() const { return kind == Kind::RamFlip ? E->e / 2 : E->e; }
};

Involution make_involution(const Field& E, Involution::Kind kind);
// The canonical involution determined by the top tower step: RamFlip when it
// is Eisenstein of even reduced degree, UnramFrob when it is unramified of
// even degree.
Involution canonical_involution(const Field& E);

}  // namespace wittlab
