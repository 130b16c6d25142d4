#pragma once

// OWL data model: IRIs, entities, class expressions, axioms and the
// insertion-ordered ontology store.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ontoforge/error.hpp"

namespace ontoforge {

/// An absolute IRI. Construction validates; there is no empty IRI.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  /// Text after the last '#', or after the last '/' when there is no '#'.
  std::string_view fragment() const;

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

bool is_absolute_iri(std::string_view text);

enum class EntityKind : std::uint8_t { Class, ObjectProperty, AnnotationProperty, Ontology };

std::string_view to_string(EntityKind kind);

struct Entity {
  EntityKind kind;
  Iri iri;

  auto operator<=>(const Entity&) const = default;
};

namespace vocab {
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

const Entity& rdfs_label();
const Entity& rdfs_comment();
bool is_builtin(const Entity& entity);
}  // namespace vocab

class ClassExpression {
 public:
  enum class Kind : std::uint8_t { Thing, Nothing, Named, And, Or, Not, Some, Only };

  static ClassExpression thing();
  static ClassExpression nothing();
  static ClassExpression named(Entity cls);
  /// Intersection/union of the operands. A single operand collapses to
  /// itself; an empty list is an InvalidForm error.
  static ClassExpression intersection_of(std::vector<ClassExpression> operands);
  static ClassExpression union_of(std::vector<ClassExpression> operands);
  static ClassExpression complement_of(ClassExpression operand);
  static ClassExpression some(Entity property, ClassExpression filler);
  static ClassExpression only(Entity property, ClassExpression filler);

  Kind kind() const { return kind_; }
  bool is_named() const { return kind_ == Kind::Named; }
  bool is_atomic() const {
    return kind_ == Kind::Named || kind_ == Kind::Thing || kind_ == Kind::Nothing;
  }
  /// The class for Named, the property for Some/Only.
  const Entity& entity() const { return *entity_; }
  /// Operands of And/Or; the single filler of Not/Some/Only.
  const std::vector<ClassExpression>& operands() const { return operands_; }
  const ClassExpression& filler() const { return operands_.front(); }

  friend bool operator==(const ClassExpression& a, const ClassExpression& b);
  friend std::strong_ordering operator<=>(const ClassExpression& a, const ClassExpression& b);

  /// Appends every entity mentioned (classes and properties), recursively.
  void collect_signature(std::vector<Entity>& out) const;

 private:
  ClassExpression(Kind kind, std::optional<Entity> entity, std::vector<ClassExpression> operands)
      : kind_(kind), entity_(std::move(entity)), operands_(std::move(operands)) {}

  Kind kind_;
  std::optional<Entity> entity_;
  std::vector<ClassExpression> operands_;
};

struct AnnotationValue {
  std::string text;
  std::optional<std::string> lang;

  AnnotationValue(std::string text, std::optional<std::string> lang = std::nullopt);
  auto operator<=>(const AnnotationValue&) const = default;
};

// Axiom variants.

struct Declaration {
  Entity entity;
  auto operator<=>(const Declaration&) const = default;
};

struct SubClassOf {
  ClassExpression sub;
  ClassExpression sup;
  auto operator<=>(const SubClassOf&) const = default;
};

struct EquivalentClasses {
  std::vector<ClassExpression> members;
  auto operator<=>(const EquivalentClasses&) const = default;
};

struct DisjointClasses {
  std::vector<Entity> members;  // named classes, pairwise distinct
  auto operator<=>(const DisjointClasses&) const = default;
};

struct SubObjectPropertyOf {
  Entity sub;
  Entity sup;
  auto operator<=>(const SubObjectPropertyOf&) const = default;
};

struct ObjectPropertyDomain {
  Entity property;
  ClassExpression domain;
  auto operator<=>(const ObjectPropertyDomain&) const = default;
};

struct ObjectPropertyRange {
  Entity property;
  ClassExpression range;
  auto operator<=>(const ObjectPropertyRange&) const = default;
};

struct FunctionalObjectProperty {
  Entity property;
  auto operator<=>(const FunctionalObjectProperty&) const = default;
};

struct TransitiveObjectProperty {
  Entity property;
  auto operator<=>(const TransitiveObjectProperty&) const = default;
};

struct AnnotationAssertion {
  Entity property;
  Iri subject;
  AnnotationValue value;
  auto operator<=>(const AnnotationAssertion&) const = default;
};

struct Import {
  Iri target;
  auto operator<=>(const Import&) const = default;
};

using Axiom = std::variant<Declaration, SubClassOf, EquivalentClasses, DisjointClasses,
                           SubObjectPropertyOf, ObjectPropertyDomain, ObjectPropertyRange,
                           FunctionalObjectProperty, TransitiveObjectProperty,
                           AnnotationAssertion, Import>;

/// Entities mentioned by the axiom. The subject of an annotation assertion is
/// an IRI, not an entity, and is not included.
std::vector<Entity> signature(const Axiom& axiom);

/// True when the axiom mentions the entity, including as annotation subject.
bool references(const Axiom& axiom, const Entity& entity);

struct AxiomHash {
  std::size_t operator()(const Axiom& axiom) const;
};

class Ontology {
 public:
  explicit Ontology(Iri iri);

  const Iri& iri() const { return iri_; }

  /// prefix label -> IRI base. Standard owl/rdf/rdfs/xsd are always present.
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  void set_prefix(const std::string& label, const std::string& base);

  /// Declares the entity (idempotent). Re-declaring an IRI with another kind
  /// is a DuplicateEntityKind error.
  Entity declare(EntityKind kind, const Iri& iri);

  /// Adds one axiom; returns false when it was already present.
  bool add(const Axiom& axiom);
  /// Adds a batch. Declarations inside the batch count for the other members
  /// of the batch. Validation happens before anything is inserted.
  std::size_t add(std::span<const Axiom> axioms);

  bool remove(const Axiom& axiom);
  std::size_t remove(std::span<const Axiom> axioms);

  bool contains(const Axiom& axiom) const { return index_.contains(axiom); }
  const std::vector<Axiom>& axioms() const { return axioms_; }
  std::size_t size() const { return axioms_.size(); }

  std::optional<EntityKind> declared_kind(const Iri& iri) const;
  bool is_declared(const Entity& entity) const;
  /// Declared entities in declaration order.
  std::vector<Entity> declared_entities() const;

  std::vector<Axiom> axioms_referencing(const Entity& entity) const;

  /// Bumped on every effective mutation.
  std::uint64_t revision() const { return revision_; }

 private:
  void validate(const Axiom& axiom,
                const std::unordered_map<std::string, EntityKind>& pending) const;
  void insert(const Axiom& axiom);

  Iri iri_;
  std::map<std::string, std::string> prefixes_;
  std::vector<Axiom> axioms_;
  std::unordered_set<Axiom, AxiomHash> index_;
  std::unordered_map<std::string, EntityKind> declared_;
  std::uint64_t revision_ = 0;
};

}  // namespace ontoforge
