#pragma once

// Text renderings of an ontology: Manchester-style frames and the
// functional-style interchange format.

#include <optional>
#include <string>

#include "ontoforge/model.hpp"

namespace ontoforge {

/// `label:local` using the longest matching prefix base, if any.
std::optional<std::string> shorten(const Ontology& ontology, const Iri& iri);

/// Manchester-style expression text. NoPrefix when an IRI cannot be shortened.
std::string render_expression_omn(const ClassExpression& expression, const Ontology& ontology);

/// Prefix header, one frame per declared entity in declaration order, then
/// general class axioms.
std::string render_omn(const Ontology& ontology);

/// Prefix lines sorted by label, then `Ontology(<iri>`, one axiom per line in
/// insertion order, and a closing `)`.
std::string render_functional(const Ontology& ontology);

std::string render_axiom_functional(const Axiom& axiom, const Ontology& ontology);

}  // namespace ontoforge
