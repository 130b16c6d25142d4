#pragma once

// Multilingual labels kept outside the ontology source in properties files.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoforge/environment.hpp"

namespace ontoforge::polyglot {

struct PropertiesTable {
  std::vector<std::pair<std::string, std::string>> entries;
  std::string source;

  const std::string* find(std::string_view key) const;
};

/// Parses `key=value` lines. '#'/'!' lines and blank lines are skipped;
/// the escapes \\ \= \n \t are honoured.
PropertiesTable parse_properties(std::string_view text, std::string source = {});

struct LabelReport {
  std::size_t added = 0;    // label axioms newly added
  std::size_t applied = 0;  // table keys that matched a bound class
  std::vector<std::string> missing;
  std::vector<std::string> unknown;
};

LabelReport apply_labels(Environment& env, const PropertiesTable& table, std::string_view lang);

/// Header comment, then `Name=` for every local class, sorted.
std::string emit_skeleton(const Environment& env, std::string_view lang);

/// `<last namespace segment>label_<lang>.properties`
std::string skeleton_file_name(std::string_view ns, std::string_view lang);

}  // namespace ontoforge::polyglot
