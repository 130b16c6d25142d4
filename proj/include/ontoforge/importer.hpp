#pragma once

// External ontologies: functional-syntax reading, identifier generation and
// memorised identifier <-> IRI snapshots.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoforge/environment.hpp"
#include "ontoforge/model.hpp"

namespace ontoforge::importer {

/// Reads the functional-style subset written by render_functional.
/// Entities used without a Declaration get one (appended after the parsed
/// axioms); anything outside the model is UnsupportedConstruct.
Ontology parse_functional(std::string_view text, std::string_view file_name = "<input>");

/// "has part" -> "has_part". Result satisfies the DSL identifier charset.
std::string label_to_identifier(std::string_view label);

enum class Naming { Fragment, Label };

/// Binds every class and object property of `ontology` (optionally only
/// those whose IRI starts with `filter`) in `env` and records the rows as an
/// external source. Returns the number of bindings added.
std::size_t intern_external(Environment& env, std::shared_ptr<const Ontology> ontology,
                            Naming naming, const std::optional<std::string>& filter = std::nullopt);

struct MemoTable {
  Iri source;
  std::vector<std::pair<std::string, Iri>> rows;  // sorted by identifier
};

MemoTable memorise_save(const Environment& env, const Iri& source);

/// `#memo <source-iri>` then `identifier<TAB>iri` per row.
std::string format_memo(const MemoTable& table);
MemoTable parse_memo(std::string_view text);

struct RenamedIdentifier {
  std::string old_name;
  std::string new_name;
  Iri iri;
};

struct MemoReport {
  bool stable = true;
  std::vector<RenamedIdentifier> deprecated;
  std::vector<Iri> vanished;
};

/// Compares the current identifier table against a saved one for the same
/// source ontology (WrongOntology otherwise).
MemoReport memorise_check(const MemoTable& current, const MemoTable& saved);

/// Adds a deprecated alias for every renamed identifier and warns about
/// vanished IRIs. Returns the number of aliases installed.
std::size_t install_deprecations(Environment& env, const MemoReport& report);

}  // namespace ontoforge::importer
