#include "ontoforge/error.hpp"

namespace ontoforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIri: return "InvalidIri";
    case ErrorCode::InvalidAxiom: return "InvalidAxiom";
    case ErrorCode::DuplicateEntityKind: return "DuplicateEntityKind";
    case ErrorCode::UndeclaredEntity: return "UndeclaredEntity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidForm: return "InvalidForm";
    case ErrorCode::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorCode::DuplicateOntology: return "DuplicateOntology";
    case ErrorCode::UnknownOption: return "UnknownOption";
    case ErrorCode::NamespaceNotFound: return "NamespaceNotFound";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::DuplicateBinding: return "DuplicateBinding";
    case ErrorCode::PatternArity: return "PatternArity";
    case ErrorCode::TemplateError: return "TemplateError";
    case ErrorCode::TemplateArity: return "TemplateArity";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::UnmappableLabel: return "UnmappableLabel";
    case ErrorCode::WrongOntology: return "WrongOntology";
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::NoPrefix: return "NoPrefix";
    case ErrorCode::TestSyntax: return "TestSyntax";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

std::string SourceLocation::str() const {
  std::string out = file.empty() ? std::string("<input>") : file;
  if (line > 0) {
    out += ':' + std::to_string(line);
    if (column > 0) out += ':' + std::to_string(column);
  }
  return out;
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<SourceLocation> where)
    : std::runtime_error(message), code_(code), where_(std::move(where)) {}

}  // namespace ontoforge
