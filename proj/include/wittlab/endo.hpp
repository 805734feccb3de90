#pragma once

#include <optional>
#include <string>

#include "wittlab/match.hpp"

namespace wittlab {

// The ambient classical case (sigma, epsilon) over the base field.
struct AmbientCase {
  FormCase kind = FormCase::Orthogonal;
  Field F;
  std::shared_ptr<const QuadExt> ctx;  // unitary ambient only
  int epsilon = 1;

  WittClass zero_class() const;
  std::vector<WittClass> witt_group() const;
};

AmbientCase orthogonal_case(const Field& F);
AmbientCase symplectic_case(const Field& F);
AmbientCase unitary_case(std::shared_ptr<const QuadExt> ctx, int epsilon);

// The slice of a Witt type that parameter arithmetic consumes.
struct TypeEntry {
  int diman = 0;
  WittClass wtF;
  std::array<int, 8> key{1, 0, 0, 0, 0, 0, 0, 0};

  bool is_zero() const { return diman == 0; }
};

TypeEntry zero_type(const AmbientCase& amb);
TypeEntry type_entry_of(const WittType& t);

// Synthetic endo-class record: degree plus the Witt-type data attached to
// skew and zero classes.
struct EndoClass {
  enum class Kind { GL, Skew, NonSkew, Zero };
  std::string id;
  Kind kind = Kind::GL;
  int degree = 1;
  std::vector<TypeEntry> types;  // classical catalogs; always contains zero
};

const char* endo_kind_name(EndoClass::Kind k);

struct Catalog {
  std::optional<AmbientCase> ambient;  // classical catalogs carry the case
  std::vector<EndoClass> classes;      // sorted by id, ids unique

  const EndoClass* find(const std::string& id) const;
};

Catalog make_gl_catalog(std::vector<std::pair<std::string, int>> id_degree);

struct ClassicalClassSpec {
  std::string id;
  EndoClass::Kind kind = EndoClass::Kind::Skew;
  int degree = 1;
  std::optional<SelfDualContext> field_ctx;  // skew classes with explicit field
  std::vector<TypeEntry> declared_types;     // alternative: precomputed table
};

Catalog make_classical_catalog(const AmbientCase& amb,
                               std::vector<ClassicalClassSpec> specs);

// GL-endo-parameters: finitely supported multiplicity maps.
using GLParameter = std::vector<std::pair<std::string, long>>;

bool validate_gl(const GLParameter& f, const Catalog& cat, long n);
std::vector<GLParameter> enumerate_gl(const Catalog& cat, long n);

// Classical parameters: id -> (f1, Witt type).
struct ClassicalValue {
  long f1 = 0;
  TypeEntry type;
};
using ClassicalParameter = std::vector<std::pair<std::string, ClassicalValue>>;

bool validate_classical(const ClassicalParameter& f, const Catalog& cat, long n,
                        const WittClass& target);
std::vector<ClassicalParameter> enumerate_classical(const Catalog& cat, long n,
                                                    const WittClass& target);

// Special-orthogonal refinement: one class when the support contains the
// zero-endo-class, otherwise the two sign-labelled classes.
struct SOClass {
  ClassicalParameter f;
  std::optional<int> y;  // +1 / -1 when present
};
std::vector<SOClass> so_classes(const ClassicalParameter& f, const Catalog& cat);

}  // namespace wittlab
