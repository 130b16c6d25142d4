#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/error.hpp"

namespace ontoforge {

/// One node of the s-expression surface syntax.
struct Form {
  enum class Kind { List, Bracket, Identifier, Keyword, Text };

  Kind kind = Kind::List;
  /// Identifier name, keyword name without the leading ':', or text value.
  std::string text;
  std::vector<Form> children;
  SourceLocation where;

  bool is_list() const { return kind == Kind::List; }
  bool is_bracket() const { return kind == Kind::Bracket; }
  bool is_identifier() const { return kind == Kind::Identifier; }
  bool is_keyword() const { return kind == Kind::Keyword; }
  bool is_keyword(std::string_view name) const { return kind == Kind::Keyword && text == name; }
  bool is_text() const { return kind == Kind::Text; }

  /// For a non-empty list whose first child is an identifier: that name
  /// with any "qualifier/" stripped. Empty otherwise.
  std::string_view head() const;
};

std::vector<Form> read_forms(std::string_view text, std::string_view file_name);

std::string print_form(const Form& form);
std::string print_forms(std::span<const Form> forms);

/// Identifier charset for defined names: [A-Za-z_][A-Za-z0-9_-]*.
bool is_valid_identifier(std::string_view name);

/// Local part of a possibly qualified name ("p/Pizza" -> "Pizza").
std::string_view local_name(std::string_view name);

}  // namespace ontoforge
