#include "wittlab/endo.hpp"

#include <algorithm>

namespace wittlab {

WittClass AmbientCase::zero_class() const {
  return witt_zero(kind, F, ctx, epsilon);
}

std::vector<WittClass> AmbientCase::witt_group() const {
  return enumerate_witt_group(kind, F, ctx, epsilon);
}

AmbientCase orthogonal_case(const Field& F) {
  AmbientCase a;
  a.kind = FormCase::Orthogonal;
  a.F = F;
  a.epsilon = 1;
  return a;
}

AmbientCase symplectic_case(const Field& F) {
  AmbientCase a;
  a.kind = FormCase::Symplectic;
  a.F = F;
  a.epsilon = -1;
  return a;
}

AmbientCase unitary_case(std::shared_ptr<const QuadExt> ctx, int epsilon) {
  if (!ctx) fail(Err::NotQuadratic, "unitary ambient needs a quadratic context");
  AmbientCase a;
  a.kind = FormCase::Unitary;
  a.F = ctx->E;
  a.ctx = std::move(ctx);
  a.epsilon = epsilon;
  return a;
}

TypeEntry zero_type(const AmbientCase& amb) {
  TypeEntry t;
  t.diman = 0;
  t.wtF = amb.zero_class();
  t.key = {1, 0, 0, 0, 0, 0, 0, 0};
  return t;
}

TypeEntry type_entry_of(const WittType& t) {
  TypeEntry e;
  e.diman = t.diman;
  e.wtF = t.wtF;
  e.key = t.canonical_key();
  return e;
}

const char* endo_kind_name(EndoClass::Kind k) {
  switch (k) {
    case EndoClass::Kind::GL: return "gl";
    case EndoClass::Kind::Skew: return "skew";
    case EndoClass::Kind::NonSkew: return "nonskew";
    case EndoClass::Kind::Zero: return "zero";
  }
  return "?";
}

const EndoClass* Catalog::find(const std::string& id) const {
  for (const auto& c : classes)
    if (c.id == id) return &c;
  return nullptr;
}

namespace {

void sort_and_check_ids(std::vector<EndoClass>& classes) {
  std::sort(classes.begin(), classes.end(),
            [](const EndoClass& a, const EndoClass& b) { return a.id < b.id; });
  for (size_t i = 1; i < classes.size(); ++i)
    if (classes[i].id == classes[i - 1].id)
      fail(Err::InvalidArgument, "duplicate class id: " + classes[i].id);
}

void sort_types(std::vector<TypeEntry>& ts) {
  std::sort(ts.begin(), ts.end(),
            [](const TypeEntry& a, const TypeEntry& b) { return a.key < b.key; });
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](const TypeEntry& a, const TypeEntry& b) { return a.key == b.key; }),
           ts.end());
}

}  // namespace

Catalog make_gl_catalog(std::vector<std::pair<std::string, int>> id_degree) {
  Catalog cat;
  for (auto& [id, deg] : id_degree) {
    if (deg < 1) fail(Err::InvalidArgument, "class degree must be positive");
    EndoClass c;
    c.id = id;
    c.kind = EndoClass::Kind::GL;
    c.degree = deg;
    cat.classes.push_back(std::move(c));
  }
  sort_and_check_ids(cat.classes);
  return cat;
}

Catalog make_classical_catalog(const AmbientCase& amb,
                               std::vector<ClassicalClassSpec> specs) {
  Catalog cat;
  cat.ambient = amb;
  for (auto& s : specs) {
    EndoClass c;
    c.id = s.id;
    c.kind = s.kind;
    c.degree = s.degree;
    if (s.kind == EndoClass::Kind::GL)
      fail(Err::InvalidArgument, "GL classes do not belong to classical catalogs");
    if (s.kind == EndoClass::Kind::Zero) {
      if (s.degree != 1) fail(Err::InvalidArgument, "zero class has degree 1");
      for (const WittClass& w : amb.witt_group()) {
        TypeEntry t;
        t.diman = w.diman;
        t.wtF = w;
        t.key = {w.is_hyperbolic() ? 1 : 0, 0, w.diman, 0,
                 w.key[0], w.key[1], w.key[2], w.key[3]};
        c.types.push_back(t);
      }
    } else if (s.kind == EndoClass::Kind::NonSkew) {
      c.types.push_back(zero_type(amb));
    } else {
      // Skew: from an explicit self-dual field datum or a declared table.
      if (s.field_ctx) {
        if (s.field_ctx->zero)
          fail(Err::InvalidArgument, "skew class needs a nonzero generator");
        if (!same_field(s.field_ctx->F, amb.F) || amb.kind == FormCase::Unitary)
          fail(Err::CaseMismatch, "class field datum does not sit over the ambient base");
        for (const WittType& t : witt_types_of(*s.field_ctx, amb.epsilon))
          c.types.push_back(type_entry_of(t));
        if (s.degree != s.field_ctx->degree)
          fail(Err::InvalidArgument, "declared degree disagrees with the field datum");
      } else {
        c.types = s.declared_types;
        c.types.push_back(zero_type(amb));
      }
    }
    sort_types(c.types);
    bool has_zero = false;
    for (const auto& t : c.types)
      if (t.is_zero()) has_zero = true;
    if (!has_zero) fail(Err::InvalidArgument, "type table must contain the zero type");
    cat.classes.push_back(std::move(c));
  }
  sort_and_check_ids(cat.classes);
  return cat;
}

bool validate_gl(const GLParameter& f, const Catalog& cat, long n) {
  long total = 0;
  for (const auto& [id, mult] : f) {
    const EndoClass* c = cat.find(id);
    if (!c) fail(Err::UnknownClass, "unknown class id: " + id);
    if (mult < 0) fail(Err::InvalidArgument, "negative multiplicity");
    total += (long)c->degree * mult;
  }
  return total == n;
}

std::vector<GLParameter> enumerate_gl(const Catalog& cat, long n) {
  if (n < 0) fail(Err::InvalidArgument, "negative dimension");
  std::vector<GLParameter> out;
  GLParameter cur;
  // Classes are id-sorted; outputs are lexicographic in multiplicity tuples.
  auto rec = [&](auto&& self, size_t i, long rem) -> void {
    if (i == cat.classes.size()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    const EndoClass& c = cat.classes[i];
    for (long m = 0; m * c.degree <= rem; ++m) {
      if (m > 0) cur.emplace_back(c.id, m);
      self(self, i + 1, rem - m * c.degree);
      if (m > 0) cur.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

namespace {

bool types_entry_known(const EndoClass& c, const TypeEntry& t) {
  for (const auto& u : c.types)
    if (u.key == t.key) return true;
  return false;
}

}  // namespace

bool validate_classical(const ClassicalParameter& f, const Catalog& cat, long n,
                        const WittClass& target) {
  if (!cat.ambient) fail(Err::InvalidArgument, "catalog has no ambient case");
  long total = 0;
  WittClass sum = cat.ambient->zero_class();
  for (const auto& [id, v] : f) {
    const EndoClass* c = cat.find(id);
    if (!c) fail(Err::UnknownClass, "unknown class id: " + id);
    if (c->kind == EndoClass::Kind::GL)
      fail(Err::UnknownClass, "GL class in a classical parameter");
    if (v.f1 < 0) fail(Err::InvalidArgument, "negative multiplicity");
    if (c->kind == EndoClass::Kind::NonSkew && !v.type.is_zero())
      fail(Err::NonSkewWittType, "nonzero Witt type on a non-skew class: " + id);
    if (!types_entry_known(*c, v.type))
      fail(Err::UnknownClass, "Witt type not in the class table: " + id);
    total += (long)c->degree * (2 * v.f1 + v.type.diman);
    sum = witt_add(sum, v.type.wtF);
  }
  return total == n && witt_eq(sum, target);
}

std::vector<ClassicalParameter> enumerate_classical(const Catalog& cat, long n,
                                                    const WittClass& target) {
  if (!cat.ambient) fail(Err::InvalidArgument, "catalog has no ambient case");
  if (n < 0) fail(Err::InvalidArgument, "negative dimension");
  if (!witt_eq(target, target)) fail(Err::InvalidArgument, "bad target");
  std::vector<ClassicalParameter> out;
  ClassicalParameter cur;
  WittClass zero = cat.ambient->zero_class();
  auto rec = [&](auto&& self, size_t i, long rem, const WittClass& sum) -> void {
    if (i == cat.classes.size()) {
      if (rem == 0 && witt_eq(sum, target)) out.push_back(cur);
      return;
    }
    const EndoClass& c = cat.classes[i];
    for (long f1 = 0; 2 * f1 * c.degree <= rem; ++f1)
      for (const TypeEntry& t : c.types) {
        long contrib = (long)c.degree * (2 * f1 + t.diman);
        if (contrib > rem) continue;
        bool in_support = f1 != 0 || !t.is_zero();
        if (in_support) cur.emplace_back(c.id, ClassicalValue{f1, t});
        self(self, i + 1, rem - contrib, witt_add(sum, t.wtF));
        if (in_support) cur.pop_back();
      }
  };
  rec(rec, 0, n, zero);
  return out;
}

std::vector<SOClass> so_classes(const ClassicalParameter& f, const Catalog& cat) {
  if (!cat.ambient || cat.ambient->kind != FormCase::Orthogonal)
    fail(Err::WrongCase, "special-orthogonal refinement needs the orthogonal case");
  bool has_zero = false;
  for (const auto& [id, v] : f) {
    const EndoClass* c = cat.find(id);
    if (!c) fail(Err::UnknownClass, "unknown class id: " + id);
    if (c->kind == EndoClass::Kind::Zero && (v.f1 != 0 || !v.type.is_zero()))
      has_zero = true;
  }
  if (has_zero) return {SOClass{f, std::nullopt}};
  return {SOClass{f, 1}, SOClass{f, -1}};
}

}  // namespace wittlab
