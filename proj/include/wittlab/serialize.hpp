#pragma once

#include <json.hpp>

#include "wittlab/endo.hpp"
#include "wittlab/lattice.hpp"

namespace wittlab {

using json = nlohmann::json;

// Field descriptors: {"p":3,"f0":1,"tower":[{"kind":"unramified","param":2},
// {"kind":"eisenstein","param":2,"unit":[1]}]}. Unramified steps may carry
// "poly" (element indices over the previous residue field).
json field_to_json(const Field& F);
Field field_from_json(const json& j, int default_digits = 32);

// Elements: integers, decimal strings, {"unit":"1"|"u","val":k} class data,
// "pi" / "u" / "canonical" shorthands, or the full
// {"terms":[[coeff,i,j],...],"pshift":s,"known":A} record.
json elem_to_json(const Elem& x);
Elem elem_from_json(const json& j, const Field& F);

json square_class_to_json(const SquareClass& c);
SquareClass square_class_from_json(const json& j, const Field& F);

json form_to_json(const FormDescriptor& h);
FormDescriptor form_from_json(const json& j, int default_digits = 32);

json invariants_to_json(const FormInvariants& inv);

json witt_class_to_json(const WittClass& w);
WittClass witt_class_from_json(const json& j, int default_digits = 32);

json context_to_json(const SelfDualContext& c);
SelfDualContext context_from_json(const json& j, int default_digits = 32);

json witt_type_to_json(const WittType& t);
WittType witt_type_from_json(const json& j, int default_digits = 32);

json lattice_to_json(const LatticeSequence& L);
LatticeSequence lattice_from_json(const json& j, const Field& F);
json monomial_form_to_json(const MonomialForm& m);
MonomialForm monomial_form_from_json(const json& j);

json catalog_to_json(const Catalog& cat);
Catalog catalog_from_json(const json& j, int default_digits = 32);

json gl_parameter_to_json(const GLParameter& f);
GLParameter gl_parameter_from_json(const json& j);
json classical_parameter_to_json(const ClassicalParameter& f);
ClassicalParameter classical_parameter_from_json(const json& j, const Catalog& cat);

// Reject unknown keys; the CLI promises strict inputs.
void expect_keys(const json& j, std::initializer_list<const char*> keys);

}  // namespace wittlab
