#include "ontoforge/model.hpp"

#include <algorithm>
#include <cctype>

namespace ontoforge {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_entity(const Entity& e) {
  std::size_t h = std::hash<std::string>{}(e.iri.str());
  hash_combine(h, static_cast<std::size_t>(e.kind));
  return h;
}

std::size_t hash_expression(const ClassExpression& ce) {
  std::size_t h = static_cast<std::size_t>(ce.kind()) + 1;
  if (ce.kind() == ClassExpression::Kind::Named || ce.kind() == ClassExpression::Kind::Some ||
      ce.kind() == ClassExpression::Kind::Only) {
    hash_combine(h, hash_entity(ce.entity()));
  }
  for (const auto& op : ce.operands()) hash_combine(h, hash_expression(op));
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Iri

bool is_absolute_iri(std::string_view text) {
  if (text.empty()) return false;
  if (text.find("://") != std::string_view::npos) return true;
  // scheme ":" rest, e.g. urn:x:y
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  return std::all_of(text.begin(), text.begin() + colon, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  });
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_absolute_iri(value_)) {
    throw Error(ErrorCode::InvalidIri, "not an absolute IRI: '" + value_ + "'");
  }
  if (value_.find_first_of(" \t\r\n<>\"") != std::string::npos) {
    throw Error(ErrorCode::InvalidIri, "IRI contains illegal characters: '" + value_ + "'");
  }
}

std::string_view Iri::fragment() const {
  std::string_view v = value_;
  auto pos = v.rfind('#');
  if (pos == std::string_view::npos) pos = v.rfind('/');
  if (pos == std::string_view::npos) pos = v.rfind(':');
  return v.substr(pos + 1);
}

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Class: return "Class";
    case EntityKind::ObjectProperty: return "ObjectProperty";
    case EntityKind::AnnotationProperty: return "AnnotationProperty";
    case EntityKind::Ontology: return "Ontology";
  }
  return "Entity";
}

namespace vocab {

const Entity& rdfs_label() {
  static const Entity e{EntityKind::AnnotationProperty, Iri(std::string(kRdfs) + "label")};
  return e;
}

const Entity& rdfs_comment() {
  static const Entity e{EntityKind::AnnotationProperty, Iri(std::string(kRdfs) + "comment")};
  return e;
}

bool is_builtin(const Entity& entity) {
  return entity == rdfs_label() || entity == rdfs_comment();
}

}  // namespace vocab

// ---------------------------------------------------------------------------
// ClassExpression

ClassExpression ClassExpression::thing() { return {Kind::Thing, std::nullopt, {}}; }
ClassExpression ClassExpression::nothing() { return {Kind::Nothing, std::nullopt, {}}; }

ClassExpression ClassExpression::named(Entity cls) {
  if (cls.kind != EntityKind::Class) {
    throw Error(ErrorCode::InvalidForm, "'" + cls.iri.str() + "' is not a class");
  }
  return {Kind::Named, std::move(cls), {}};
}

ClassExpression ClassExpression::intersection_of(std::vector<ClassExpression> operands) {
  if (operands.empty()) throw Error(ErrorCode::InvalidForm, "empty intersection");
  if (operands.size() == 1) return std::move(operands.front());
  return {Kind::And, std::nullopt, std::move(operands)};
}

ClassExpression ClassExpression::union_of(std::vector<ClassExpression> operands) {
  if (operands.empty()) throw Error(ErrorCode::InvalidForm, "empty union");
  if (operands.size() == 1) return std::move(operands.front());
  return {Kind::Or, std::nullopt, std::move(operands)};
}

ClassExpression ClassExpression::complement_of(ClassExpression operand) {
  return {Kind::Not, std::nullopt, {std::move(operand)}};
}

ClassExpression ClassExpression::some(Entity property, ClassExpression filler) {
  if (property.kind != EntityKind::ObjectProperty) {
    throw Error(ErrorCode::InvalidForm, "'" + property.iri.str() + "' is not an object property");
  }
  return {Kind::Some, std::move(property), {std::move(filler)}};
}

ClassExpression ClassExpression::only(Entity property, ClassExpression filler) {
  if (property.kind != EntityKind::ObjectProperty) {
    throw Error(ErrorCode::InvalidForm, "'" + property.iri.str() + "' is not an object property");
  }
  return {Kind::Only, std::move(property), {std::move(filler)}};
}

bool operator==(const ClassExpression& a, const ClassExpression& b) {
  return a.kind_ == b.kind_ && a.entity_ == b.entity_ && a.operands_ == b.operands_;
}

std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.entity_ <=> b.entity_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.operands_.begin(), a.operands_.end(),
                                                b.operands_.begin(), b.operands_.end());
}

void ClassExpression::collect_signature(std::vector<Entity>& out) const {
  if (entity_) out.push_back(*entity_);
  for (const auto& op : operands_) op.collect_signature(out);
}

AnnotationValue::AnnotationValue(std::string text_, std::optional<std::string> lang_)
    : text(std::move(text_)), lang(std::move(lang_)) {
  if (lang) {
    if (lang->empty()) throw Error(ErrorCode::InvalidAxiom, "empty language tag");
    std::transform(lang->begin(), lang->end(), lang->begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
}

// ---------------------------------------------------------------------------
// Axioms

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::vector<Entity> signature(const Axiom& axiom) {
  std::vector<Entity> out;
  std::visit(overloaded{
                 [&](const Declaration& a) { out.push_back(a.entity); },
                 [&](const SubClassOf& a) {
                   a.sub.collect_signature(out);
                   a.sup.collect_signature(out);
                 },
                 [&](const EquivalentClasses& a) {
                   for (const auto& m : a.members) m.collect_signature(out);
                 },
                 [&](const DisjointClasses& a) {
                   out.insert(out.end(), a.members.begin(), a.members.end());
                 },
                 [&](const SubObjectPropertyOf& a) {
                   out.push_back(a.sub);
                   out.push_back(a.sup);
                 },
                 [&](const ObjectPropertyDomain& a) {
                   out.push_back(a.property);
                   a.domain.collect_signature(out);
                 },
                 [&](const ObjectPropertyRange& a) {
                   out.push_back(a.property);
                   a.range.collect_signature(out);
                 },
                 [&](const FunctionalObjectProperty& a) { out.push_back(a.property); },
                 [&](const TransitiveObjectProperty& a) { out.push_back(a.property); },
                 [&](const AnnotationAssertion& a) { out.push_back(a.property); },
                 [&](const Import&) {},
             },
             axiom);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool references(const Axiom& axiom, const Entity& entity) {
  if (const auto* a = std::get_if<AnnotationAssertion>(&axiom); a && a->subject == entity.iri) {
    return true;
  }
  auto sig = signature(axiom);
  return std::binary_search(sig.begin(), sig.end(), entity);
}

std::size_t AxiomHash::operator()(const Axiom& axiom) const {
  std::size_t h = axiom.index();
  std::visit(overloaded{
                 [&](const Declaration& a) { hash_combine(h, hash_entity(a.entity)); },
                 [&](const SubClassOf& a) {
                   hash_combine(h, hash_expression(a.sub));
                   hash_combine(h, hash_expression(a.sup));
                 },
                 [&](const EquivalentClasses& a) {
                   for (const auto& m : a.members) hash_combine(h, hash_expression(m));
                 },
                 [&](const DisjointClasses& a) {
                   for (const auto& m : a.members) hash_combine(h, hash_entity(m));
                 },
                 [&](const SubObjectPropertyOf& a) {
                   hash_combine(h, hash_entity(a.sub));
                   hash_combine(h, hash_entity(a.sup));
                 },
                 [&](const ObjectPropertyDomain& a) {
                   hash_combine(h, hash_entity(a.property));
                   hash_combine(h, hash_expression(a.domain));
                 },
                 [&](const ObjectPropertyRange& a) {
                   hash_combine(h, hash_entity(a.property));
                   hash_combine(h, hash_expression(a.range));
                 },
                 [&](const FunctionalObjectProperty& a) { hash_combine(h, hash_entity(a.property)); },
                 [&](const TransitiveObjectProperty& a) { hash_combine(h, hash_entity(a.property)); },
                 [&](const AnnotationAssertion& a) {
                   hash_combine(h, hash_entity(a.property));
                   hash_combine(h, std::hash<std::string>{}(a.subject.str()));
                   hash_combine(h, std::hash<std::string>{}(a.value.text));
                   hash_combine(h, std::hash<std::string>{}(a.value.lang.value_or("")));
                 },
                 [&](const Import& a) { hash_combine(h, std::hash<std::string>{}(a.target.str())); },
             },
             axiom);
  return h;
}

// ---------------------------------------------------------------------------
// Ontology

Ontology::Ontology(Iri iri) : iri_(std::move(iri)) {
  prefixes_["owl"] = std::string(vocab::kOwl);
  prefixes_["rdf"] = std::string(vocab::kRdf);
  prefixes_["rdfs"] = std::string(vocab::kRdfs);
  prefixes_["xsd"] = std::string(vocab::kXsd);
}

void Ontology::set_prefix(const std::string& label, const std::string& base) {
  prefixes_[label] = base;
}

Entity Ontology::declare(EntityKind kind, const Iri& iri) {
  Entity entity{kind, iri};
  add(Declaration{entity});
  return entity;
}

std::optional<EntityKind> Ontology::declared_kind(const Iri& iri) const {
  if (auto it = declared_.find(iri.str()); it != declared_.end()) return it->second;
  if (iri == vocab::rdfs_label().iri || iri == vocab::rdfs_comment().iri) {
    return EntityKind::AnnotationProperty;
  }
  return std::nullopt;
}

bool Ontology::is_declared(const Entity& entity) const {
  auto kind = declared_kind(entity.iri);
  return kind && *kind == entity.kind;
}

std::vector<Entity> Ontology::declared_entities() const {
  std::vector<Entity> out;
  for (const auto& axiom : axioms_) {
    if (const auto* d = std::get_if<Declaration>(&axiom)) out.push_back(d->entity);
  }
  return out;
}

void Ontology::validate(const Axiom& axiom,
                        const std::unordered_map<std::string, EntityKind>& pending) const {
  auto kind_of = [&](const Iri& iri) -> std::optional<EntityKind> {
    if (auto k = declared_kind(iri)) return k;
    if (auto it = pending.find(iri.str()); it != pending.end()) return it->second;
    return std::nullopt;
  };

  if (const auto* d = std::get_if<Declaration>(&axiom)) {
    if (auto k = kind_of(d->entity.iri); k && *k != d->entity.kind) {
      throw Error(ErrorCode::DuplicateEntityKind,
                  "'" + d->entity.iri.str() + "' is already declared as " +
                      std::string(to_string(*k)) + ", cannot redeclare as " +
                      std::string(to_string(d->entity.kind)));
    }
    return;
  }
  for (const auto& entity : signature(axiom)) {
    auto k = kind_of(entity.iri);
    if (!k || *k != entity.kind) {
      throw Error(ErrorCode::UndeclaredEntity, std::string(to_string(entity.kind)) + " '" +
                                                   entity.iri.str() + "' is not declared");
    }
  }
  if (const auto* a = std::get_if<AnnotationAssertion>(&axiom)) {
    if (!kind_of(a->subject)) {
      throw Error(ErrorCode::UndeclaredEntity,
                  "annotation subject '" + a->subject.str() + "' is not declared");
    }
  } else if (const auto* a = std::get_if<DisjointClasses>(&axiom)) {
    if (a->members.size() < 2) {
      throw Error(ErrorCode::InvalidAxiom, "DisjointClasses needs at least two classes");
    }
    auto sorted = a->members;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidAxiom, "DisjointClasses members must be distinct");
    }
  } else if (const auto* a = std::get_if<EquivalentClasses>(&axiom)) {
    if (a->members.size() < 2) {
      throw Error(ErrorCode::InvalidAxiom, "EquivalentClasses needs at least two members");
    }
  }
}

void Ontology::insert(const Axiom& axiom) {
  if (!index_.insert(axiom).second) return;
  axioms_.push_back(axiom);
  if (const auto* d = std::get_if<Declaration>(&axiom)) {
    declared_.emplace(d->entity.iri.str(), d->entity.kind);
  }
  ++revision_;
}

bool Ontology::add(const Axiom& axiom) {
  if (contains(axiom)) return false;
  validate(axiom, {});
  insert(axiom);
  return true;
}

std::size_t Ontology::add(std::span<const Axiom> axioms) {
  std::unordered_map<std::string, EntityKind> pending;
  for (const auto& axiom : axioms) {
    if (const auto* d = std::get_if<Declaration>(&axiom)) {
      validate(axiom, pending);
      pending.emplace(d->entity.iri.str(), d->entity.kind);
    }
  }
  for (const auto& axiom : axioms) {
    if (!std::holds_alternative<Declaration>(axiom)) validate(axiom, pending);
  }
  std::size_t added = 0;
  for (const auto& axiom : axioms) {
    if (!contains(axiom)) {
      insert(axiom);
      ++added;
    }
  }
  return added;
}

bool Ontology::remove(const Axiom& axiom) {
  if (index_.erase(axiom) == 0) return false;
  axioms_.erase(std::find(axioms_.begin(), axioms_.end(), axiom));
  if (const auto* d = std::get_if<Declaration>(&axiom)) declared_.erase(d->entity.iri.str());
  ++revision_;
  return true;
}

std::size_t Ontology::remove(std::span<const Axiom> axioms) {
  std::size_t removed = 0;
  for (const auto& axiom : axioms) removed += remove(axiom) ? 1 : 0;
  return removed;
}

std::vector<Axiom> Ontology::axioms_referencing(const Entity& entity) const {
  std::vector<Axiom> out;
  for (const auto& axiom : axioms_) {
    if (references(axiom, entity)) out.push_back(axiom);
  }
  return out;
}

}  // namespace ontoforge
