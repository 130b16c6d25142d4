#pragma once

// Abstraction forms that expand into core axioms: disjoint subclass blocks,
// affix blocks, value partitions and user templates. Everything here is
// pure; the evaluator feeds the results into the ontology.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/forms.hpp"
#include "ontoforge/model.hpp"

namespace ontoforge::patterns {

/// SubClassOf(child, parent) per child, one n-ary DisjointClasses when there
/// are at least two children, and EquivalentClasses(parent, Or(children))
/// when `cover` is set.
std::vector<Axiom> disjoint_subclasses(const Entity& parent, std::span<const Entity> children,
                                       bool cover);

enum class AffixPosition { Prefix, Suffix };

std::string affix_name(std::string_view name, std::string_view affix, AffixPosition position);

/// Renames every defclass/defoproperty inside `forms` and rewrites the
/// references to those short names within the same block.
std::vector<Form> expand_affix(std::string_view affix, AffixPosition position,
                               std::span<const Form> forms);

struct Expansion {
  std::vector<Entity> entities;
  std::vector<Axiom> axioms;
};

/// Partition class, one class per value, subclass + disjoint + covering
/// axioms and a functional `has<Partition>` property ranging over it.
Expansion value_partition(std::string_view base_iri, std::string_view partition,
                          std::span<const std::string> values);

struct TemplateDef {
  std::string name;
  std::vector<std::string> params;
  std::optional<std::string> rest;
  std::vector<Form> body;
  SourceLocation where;
};

/// Parses `(deftemplate name [p1 ... & rest] body...)` and checks that every
/// `?marker` in the body is a parameter or an `each` variable in scope.
TemplateDef parse_template(const Form& form);

/// Instantiates the body for one bracketed argument group.
std::vector<Form> instantiate(const TemplateDef& def, const Form& arg_group);

}  // namespace ontoforge::patterns
