#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ontoforge {

enum class ErrorCode {
  InvalidIri,
  InvalidAxiom,
  DuplicateEntityKind,
  UndeclaredEntity,
  ParseError,
  InvalidForm,
  UnboundIdentifier,
  DuplicateOntology,
  UnknownOption,
  NamespaceNotFound,
  CycleError,
  EmptyBlock,
  DuplicateBinding,
  PatternArity,
  TemplateError,
  TemplateArity,
  DuplicateKey,
  MalformedLine,
  UnsupportedConstruct,
  UnmappableLabel,
  WrongOntology,
  UnknownEntity,
  NoPrefix,
  TestSyntax,
  IoError,
};

std::string_view to_string(ErrorCode code);

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  // "file:line:col", omitting the parts that are unknown.
  std::string str() const;
  bool operator==(const SourceLocation&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<SourceLocation> where = std::nullopt);

  ErrorCode code() const { return code_; }
  const std::optional<SourceLocation>& where() const { return where_; }

 private:
  ErrorCode code_;
  std::optional<SourceLocation> where_;
};

}  // namespace ontoforge
