#include "wittlab/serialize.hpp"

#include <algorithm>
#include <set>

namespace wittlab {

void expect_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(Err::InvalidArgument, "expected a JSON object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(Err::InvalidArgument, "unknown field: " + it.key());
}

json field_to_json(const Field& F) {
  json tower = json::array();
  for (const TowerStep& s : F->steps) {
    json t;
    t["kind"] = s.kind == TowerStep::Kind::Unramified ? "unramified" : "eisenstein";
    t["param"] = s.param;
    if (!s.poly.empty()) t["poly"] = s.poly;
    if (!s.unit.empty()) t["unit"] = s.unit;
    tower.push_back(t);
  }
  json j;
  j["p"] = F->p;
  j["f0"] = F->f0;
  if (!tower.empty()) j["tower"] = tower;
  if (F->digits != 32) j["digits"] = F->digits;
  return j;
}

Field field_from_json(const json& j, int default_digits) {
  expect_keys(j, {"p", "f0", "tower", "digits", "poly"});
  if (!j.contains("p")) fail(Err::InvalidArgument, "field needs p");
  long p = j.at("p").get<long>();
  int f0 = j.value("f0", 1);
  int digits = j.value("digits", default_digits);
  std::vector<long> base_poly;
  if (j.contains("poly")) base_poly = j.at("poly").get<std::vector<long>>();
  Field F = make_field(p, f0, digits, base_poly);
  if (!j.contains("tower")) return F;
  for (const json& t : j.at("tower")) {
    expect_keys(t, {"kind", "param", "poly", "unit"});
    TowerStep s;
    std::string kind = t.at("kind").get<std::string>();
    s.param = t.at("param").get<int>();
    if (kind == "unramified") {
      s.kind = TowerStep::Kind::Unramified;
      if (t.contains("poly")) s.poly = t.at("poly").get<std::vector<long>>();
    } else if (kind == "eisenstein") {
      s.kind = TowerStep::Kind::Eisenstein;
      if (t.contains("unit")) {
        if (t.at("unit").is_number_integer())
          s.unit = {t.at("unit").get<long>()};
        else
          s.unit = t.at("unit").get<std::vector<long>>();
      } else {
        s.unit = {1};
      }
    } else {
      fail(Err::InvalidArgument, "unknown tower step kind: " + kind);
    }
    F = extend(F, s);
  }
  return F;
}

json elem_to_json(const Elem& x) {
  const ElemData& d = x.data();
  const Field& F = x.parent();
  json terms = json::array();
  for (int i = 0; i < F->f; ++i)
    for (int j = 0; j < F->e; ++j) {
      const BigInt& c = d.c[(size_t)i * F->e + j];
      if (c == 0) continue;
      terms.push_back({c.str(), i, j});
    }
  json out;
  out["terms"] = terms;
  out["pshift"] = d.pshift;
  out["known"] = d.known;
  return out;
}

Elem elem_from_json(const json& j, const Field& F) {
  if (j.is_number_integer()) return Elem::from_int(F, j.get<long>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "pi") return Elem::uniformizer(F);
    if (s == "u") return Elem::nonsquare_unit(F);
    if (s == "one") return Elem::one(F);
    if (s == "canonical") {
      Field base = F;
      while (base->parent) base = base->parent;
      return canonical_context(F, base).beta;
    }
    // decimal integer, possibly negative
    if (s.empty()) fail(Err::InvalidArgument, "empty element literal");
    size_t pos = s[0] == '-' ? 1 : 0;
    if (pos == s.size() || s.find_first_not_of("0123456789", pos) != std::string::npos)
      fail(Err::InvalidArgument, "unknown element literal: " + s);
    return Elem::from_bigint(F, BigInt(s));
  }
  if (j.is_object() && j.contains("unit") && j.contains("val")) {
    expect_keys(j, {"unit", "val"});
    std::string u = j.at("unit").get<std::string>();
    if (u != "1" && u != "u") fail(Err::InvalidArgument, "unit must be \"1\" or \"u\"");
    Elem r = u == "u" ? Elem::nonsquare_unit(F) : Elem::one(F);
    return r * Elem::uniformizer(F).pow(j.at("val").get<long>());
  }
  if (!j.is_object() || !j.contains("terms"))
    fail(Err::InvalidArgument, "cannot parse element");
  expect_keys(j, {"terms", "pshift", "known"});
  ElemData d;
  d.pshift = j.value("pshift", 0);
  d.digits = F->coeff_digits;
  d.known = j.value("known", F->e * F->coeff_digits);
  d.c.assign((size_t)F->f * F->e, BigInt(0));
  int need_digits = (d.known + F->e - 1) / F->e - d.pshift;
  if (need_digits > d.digits) d.digits = need_digits;
  for (const json& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) fail(Err::InvalidArgument, "bad term");
    BigInt c = t[0].is_string() ? BigInt(t[0].get<std::string>()) : BigInt(t[0].get<long>());
    int i = t[1].get<int>();
    int jj = t[2].get<int>();
    if (i < 0 || i >= F->f || jj < 0 || jj >= F->e)
      fail(Err::InvalidArgument, "term exponent out of range");
    d.c[(size_t)i * F->e + jj] = c;
  }
  return Elem::from_data(F, std::move(d));
}

json square_class_to_json(const SquareClass& c) {
  json j;
  j["val_parity"] = c.val_parity;
  j["unit"] = c.unit_bit ? "u" : "1";
  return j;
}

SquareClass square_class_from_json(const json& j, const Field& F) {
  expect_keys(j, {"val_parity", "unit"});
  std::string u = j.at("unit").get<std::string>();
  if (u != "1" && u != "u") fail(Err::InvalidArgument, "unit must be \"1\" or \"u\"");
  return sc_of(F, j.at("val_parity").get<int>(), u == "u" ? 1 : 0);
}

namespace {

std::shared_ptr<const QuadExt> quad_of(const Field& F) {
  return std::make_shared<const QuadExt>(make_quad_ext(F, canonical_involution(F)));
}

}  // namespace

json form_to_json(const FormDescriptor& h) {
  json j;
  j["case"] = form_case_name(h.kind);
  j["field"] = field_to_json(h.F);
  if (h.kind == FormCase::Symplectic) {
    j["planes"] = h.hyperbolic;
    return j;
  }
  if (h.kind == FormCase::Unitary) j["epsilon"] = h.epsilon;
  json diag = json::array();
  for (const Elem& d : h.diag) diag.push_back(elem_to_json(d));
  j["diag"] = diag;
  return j;
}

FormDescriptor form_from_json(const json& j, int default_digits) {
  expect_keys(j, {"case", "field", "diag", "gram", "planes", "epsilon"});
  std::string cs = j.value("case", "orthogonal");
  Field F = field_from_json(j.at("field"), default_digits);
  if (cs == "symplectic") {
    if (j.contains("gram")) {
      const json& rows = j.at("gram");
      int n = (int)rows.size();
      EMat g = emat_zero(F, n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g.at(r, c) = elem_from_json(rows[r][c], F);
      return diagonalize(g, FormCase::Symplectic, F);
    }
    return make_symplectic_form(F, j.value("planes", 0));
  }
  FormCase kind;
  std::shared_ptr<const QuadExt> ctx;
  int epsilon = 1;
  if (cs == "orthogonal") {
    kind = FormCase::Orthogonal;
  } else if (cs == "unitary") {
    kind = FormCase::Unitary;
    ctx = quad_of(F);
    epsilon = j.value("epsilon", 1);
  } else {
    fail(Err::InvalidArgument, "unknown case: " + cs);
  }
  if (j.contains("gram")) {
    const json& rows = j.at("gram");
    int n = (int)rows.size();
    EMat g = emat_zero(F, n, n);
    for (int r = 0; r < n; ++r) {
      if ((int)rows[r].size() != n) fail(Err::InvalidArgument, "ragged Gram matrix");
      for (int c = 0; c < n; ++c) g.at(r, c) = elem_from_json(rows[r][c], F);
    }
    return diagonalize(g, kind, F, ctx, epsilon);
  }
  if (!j.contains("diag")) fail(Err::InvalidArgument, "form needs diag or gram");
  std::vector<Elem> entries;
  for (const json& t : j.at("diag")) entries.push_back(elem_from_json(t, F));
  if (kind == FormCase::Orthogonal) return make_orthogonal_form(F, std::move(entries));
  return make_unitary_form(ctx, epsilon, std::move(entries));
}

json invariants_to_json(const FormInvariants& inv) {
  json j;
  j["case"] = form_case_name(inv.kind);
  j["dim"] = inv.dim;
  if (inv.kind == FormCase::Orthogonal) {
    j["det"] = {{"val_parity", inv.det_parity}, {"unit", inv.det_unit ? "u" : "1"}};
    j["hasse"] = inv.hasse;
  } else if (inv.kind == FormCase::Unitary) {
    j["det_norm"] = inv.det_norm_bit;
  }
  return j;
}

json witt_class_to_json(const WittClass& w) {
  json j;
  j["case"] = form_case_name(w.kind);
  j["field"] = field_to_json(w.F);
  j["epsilon"] = w.epsilon;
  j["diman"] = w.diman;
  json rep = json::array();
  for (const Elem& x : w.rep_entries()) rep.push_back(elem_to_json(x));
  j["rep"] = rep;
  if (w.kind == FormCase::Orthogonal) {
    j["det"] = {{"val_parity", w.key[1]}, {"unit", w.key[2] ? "u" : "1"}};
    j["hasse"] = w.key[3];
  } else if (w.kind == FormCase::Unitary) {
    j["det_norm"] = w.key[1];
  }
  return j;
}

WittClass witt_class_from_json(const json& j, int default_digits) {
  expect_keys(j, {"case", "field", "epsilon", "diman", "rep", "det", "hasse", "det_norm"});
  std::string cs = j.at("case").get<std::string>();
  Field F = field_from_json(j.at("field"), default_digits);
  int epsilon = j.value("epsilon", cs == "symplectic" ? -1 : 1);
  if (cs == "symplectic") return witt_zero(FormCase::Symplectic, F);
  std::vector<Elem> rep;
  for (const json& t : j.at("rep")) rep.push_back(elem_from_json(t, F));
  WittClass w;
  if (cs == "orthogonal") {
    w = witt_class(make_orthogonal_form(F, std::move(rep)));
  } else if (cs == "unitary") {
    w = witt_class(make_unitary_form(quad_of(F), epsilon, std::move(rep)));
  } else {
    fail(Err::InvalidArgument, "unknown case: " + cs);
  }
  if (j.contains("diman") && j.at("diman").get<int>() != w.diman)
    fail(Err::InvalidArgument, "declared diman disagrees with the representative");
  return w;
}

json context_to_json(const SelfDualContext& c) {
  json j;
  if (c.zero) {
    j["beta"] = "zero";
    j["field"] = field_to_json(c.F);
    return j;
  }
  j["field"] = field_to_json(c.E);
  j["base"] = field_to_json(c.F);
  j["beta"] = elem_to_json(c.beta);
  return j;
}

SelfDualContext context_from_json(const json& j, int default_digits) {
  expect_keys(j, {"field", "base", "beta"});
  Field E = field_from_json(j.at("field"), default_digits);
  if (j.contains("beta") && j.at("beta").is_string() &&
      j.at("beta").get<std::string>() == "zero")
    return zero_context(E);
  Field F = j.contains("base") ? field_from_json(j.at("base"), default_digits)
                               : [&] {
                                   Field b = E;
                                   while (b->parent) b = b->parent;
                                   return b;
                                 }();
  if (!j.contains("beta") || (j.at("beta").is_string() &&
                              j.at("beta").get<std::string>() == "canonical"))
    return canonical_context(E, F);
  Involution s = canonical_involution(E);
  Elem beta = elem_from_json(j.at("beta"), E);
  if (!is_sigma_skew(s, beta)) {
    // the other involution kind may fit
    if (E->e % 2 == 0 && s.kind != Involution::Kind::RamFlip)
      s = make_involution(E, Involution::Kind::RamFlip);
    else if (E->f % 2 == 0 && s.kind != Involution::Kind::UnramFrob)
      s = make_involution(E, Involution::Kind::UnramFrob);
  }
  return make_context(E, F, s, beta);
}

json witt_type_to_json(const WittType& t) {
  json j;
  if (t.ctx.zero)
    j["beta"] = "zero";
  else
    j["beta"] = {{"field", field_to_json(t.ctx.E)}, {"beta", elem_to_json(t.ctx.beta)}};
  j["witt_class"] = witt_class_to_json(t.cls);
  j["wtF"] = witt_class_to_json(t.wtF);
  j["diman"] = t.diman;
  return j;
}

WittType witt_type_from_json(const json& j, int default_digits) {
  expect_keys(j, {"beta", "witt_class", "wtF", "diman"});
  WittClass cls = witt_class_from_json(j.at("witt_class"), default_digits);
  SelfDualContext ctx;
  if (j.at("beta").is_string() && j.at("beta").get<std::string>() == "zero")
    ctx = zero_context(cls.F);
  else
    ctx = context_from_json(j.at("beta"), default_digits);
  return make_witt_type(ctx, cls);
}

json lattice_to_json(const LatticeSequence& L) {
  json j;
  j["e"] = L.period;
  j["mu"] = L.mu;
  return j;
}

LatticeSequence lattice_from_json(const json& j, const Field& F) {
  expect_keys(j, {"e", "mu"});
  auto mu = j.at("mu").get<std::vector<std::vector<long>>>();
  LatticeSequence L = make_lattice_sequence(F, std::move(mu));
  if (j.contains("e") && j.at("e").get<int>() != L.period)
    fail(Err::InvalidArgument, "declared period disagrees with the table");
  return L;
}

json monomial_form_to_json(const MonomialForm& m) {
  json j;
  j["pair"] = m.pair;
  j["val"] = m.val;
  return j;
}

MonomialForm monomial_form_from_json(const json& j) {
  expect_keys(j, {"pair", "val"});
  MonomialForm m;
  m.pair = j.at("pair").get<std::vector<int>>();
  m.val = j.at("val").get<std::vector<long>>();
  if (m.pair.size() != m.val.size()) fail(Err::InvalidArgument, "pair/val size mismatch");
  for (size_t i = 0; i < m.pair.size(); ++i) {
    int p = m.pair[i];
    if (p < 0 || p >= (int)m.pair.size() || m.pair[p] != (int)i)
      fail(Err::InvalidArgument, "pairing is not an involution");
  }
  return m;
}

namespace {

AmbientCase ambient_from_json(const json& j, int default_digits) {
  expect_keys(j, {"kind", "field", "epsilon"});
  std::string kind = j.at("kind").get<std::string>();
  Field F = field_from_json(j.at("field"), default_digits);
  if (kind == "orthogonal") return orthogonal_case(F);
  if (kind == "symplectic") return symplectic_case(F);
  if (kind == "unitary")
    return unitary_case(quad_of(F), j.value("epsilon", 1));
  fail(Err::InvalidArgument, "unknown ambient kind: " + kind);
}

json ambient_to_json(const AmbientCase& a) {
  json j;
  j["kind"] = form_case_name(a.kind);
  j["field"] = field_to_json(a.F);
  if (a.kind == FormCase::Unitary) j["epsilon"] = a.epsilon;
  return j;
}

TypeEntry type_entry_from_json(const json& j, const AmbientCase& amb, int digits) {
  expect_keys(j, {"diman", "wtF", "aligned"});
  TypeEntry t;
  t.diman = j.at("diman").get<int>();
  t.wtF = witt_class_from_json(j.at("wtF"), digits);
  bool aligned = j.value("aligned", false);
  if (t.diman == 0) {
    t.key = {1, 0, 0, 0, 0, 0, 0, 0};
  } else {
    t.key = {0, 1, t.diman, (t.diman == 1 && aligned) ? 1 : 0,
             t.wtF.key[0], t.wtF.key[1], t.wtF.key[2], t.wtF.key[3]};
  }
  (void)amb;
  return t;
}

json type_entry_to_json(const TypeEntry& t) {
  json j;
  j["diman"] = t.diman;
  j["wtF"] = witt_class_to_json(t.wtF);
  if (t.key[1] == 1 && t.diman == 1) j["aligned"] = t.key[3] == 1;
  return j;
}

}  // namespace

json catalog_to_json(const Catalog& cat) {
  json j;
  if (cat.ambient) j["case"] = ambient_to_json(*cat.ambient);
  json classes = json::array();
  for (const EndoClass& c : cat.classes) {
    json cj;
    cj["id"] = c.id;
    cj["kind"] = endo_kind_name(c.kind);
    cj["degree"] = c.degree;
    if (c.kind == EndoClass::Kind::Skew) {
      json table = json::array();
      for (const TypeEntry& t : c.types)
        if (!t.is_zero()) table.push_back(type_entry_to_json(t));
      cj["witt_table"] = table;
    }
    classes.push_back(cj);
  }
  j["classes"] = classes;
  return j;
}

Catalog catalog_from_json(const json& j, int default_digits) {
  expect_keys(j, {"case", "classes"});
  if (!j.contains("classes")) fail(Err::InvalidArgument, "catalog needs classes");
  if (!j.contains("case")) {
    // GL catalog.
    std::vector<std::pair<std::string, int>> entries;
    for (const json& cj : j.at("classes")) {
      expect_keys(cj, {"id", "kind", "degree"});
      std::string kind = cj.value("kind", "gl");
      if (kind != "gl") fail(Err::InvalidArgument, "classical class needs a catalog case");
      entries.emplace_back(cj.at("id").get<std::string>(), cj.value("degree", 1));
    }
    return make_gl_catalog(std::move(entries));
  }
  AmbientCase amb = ambient_from_json(j.at("case"), default_digits);
  std::vector<ClassicalClassSpec> specs;
  for (const json& cj : j.at("classes")) {
    expect_keys(cj, {"id", "kind", "degree", "field", "beta", "witt_table"});
    ClassicalClassSpec s;
    s.id = cj.at("id").get<std::string>();
    std::string kind = cj.value("kind", "skew");
    if (kind == "zero")
      s.kind = EndoClass::Kind::Zero;
    else if (kind == "skew")
      s.kind = EndoClass::Kind::Skew;
    else if (kind == "nonskew")
      s.kind = EndoClass::Kind::NonSkew;
    else
      fail(Err::InvalidArgument, "unknown class kind: " + kind);
    s.degree = cj.value("degree", 1);
    if (cj.contains("field")) {
      json ctxj;
      ctxj["field"] = cj.at("field");
      ctxj["base"] = ambient_to_json(amb)["field"];
      ctxj["beta"] = cj.contains("beta") ? cj.at("beta") : json("canonical");
      s.field_ctx = context_from_json(ctxj, default_digits);
    } else if (cj.contains("witt_table")) {
      for (const json& t : cj.at("witt_table"))
        s.declared_types.push_back(type_entry_from_json(t, amb, default_digits));
    }
    specs.push_back(std::move(s));
  }
  return make_classical_catalog(amb, std::move(specs));
}

json gl_parameter_to_json(const GLParameter& f) {
  json j = json::object();
  for (const auto& [id, m] : f) j[id] = m;
  return j;
}

GLParameter gl_parameter_from_json(const json& j) {
  if (!j.is_object()) fail(Err::InvalidArgument, "parameter must be an object");
  GLParameter f;
  for (auto it = j.begin(); it != j.end(); ++it)
    f.emplace_back(it.key(), it.value().get<long>());
  std::sort(f.begin(), f.end());
  return f;
}

json classical_parameter_to_json(const ClassicalParameter& f) {
  json j = json::object();
  for (const auto& [id, v] : f) {
    json vj;
    vj["f1"] = v.f1;
    vj["type"] = type_entry_to_json(v.type);
    j[id] = vj;
  }
  return j;
}

ClassicalParameter classical_parameter_from_json(const json& j, const Catalog& cat) {
  if (!j.is_object()) fail(Err::InvalidArgument, "parameter must be an object");
  if (!cat.ambient) fail(Err::InvalidArgument, "catalog has no ambient case");
  ClassicalParameter f;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const EndoClass* c = cat.find(it.key());
    if (!c) fail(Err::UnknownClass, "unknown class id: " + it.key());
    const json& vj = it.value();
    expect_keys(vj, {"f1", "type"});
    ClassicalValue v;
    v.f1 = vj.at("f1").get<long>();
    if (vj.contains("type")) {
      json tj = vj.at("type");
      TypeEntry want = type_entry_from_json(tj, *cat.ambient, cat.ambient->F->digits);
      bool found = false;
      for (const TypeEntry& t : c->types)
        if (t.key == want.key) {
          v.type = t;
          found = true;
          break;
        }
      if (!found) fail(Err::UnknownClass, "Witt type not in the class table");
    } else {
      v.type = zero_type(*cat.ambient);
    }
    f.emplace_back(it.key(), v);
  }
  std::sort(f.begin(), f.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return f;
}

}  // namespace wittlab
