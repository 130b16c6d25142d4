#pragma once

// Per-namespace evaluation state and the compilation session that loads
// namespaces from source trees.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoforge/forms.hpp"
#include "ontoforge/model.hpp"
#include "ontoforge/patterns.hpp"

namespace ontoforge {

struct Diagnostic {
  enum class Severity { Note, Warning, Error };

  Severity severity = Severity::Warning;
  std::optional<SourceLocation> where;
  std::string message;
};

std::string_view to_string(Diagnostic::Severity severity);

/// An identifier kept alive after its IRI was renamed upstream.
struct Deprecation {
  Entity entity;
  std::string replacement;
};

/// A deftest block, recorded at evaluation time and run by the testkit.
struct TestDef {
  std::string name;
  std::vector<Form> assertions;  // the argument of each (is ...)
  std::vector<SourceLocation> locations;
  SourceLocation where;
};

/// An ontology read from an external file together with the identifiers its
/// entities were interned under.
struct ExternalSource {
  std::shared_ptr<const Ontology> ontology;
  std::vector<std::pair<std::string, Iri>> rows;  // identifier -> IRI, interning order
};

class Environment {
 public:
  Environment(std::string ns, std::filesystem::path root, std::filesystem::path file);

  const std::string& ns() const { return ns_; }
  const std::filesystem::path& root() const { return root_; }
  const std::filesystem::path& file() const { return file_; }

  bool has_ontology() const { return ontology_.has_value(); }
  Ontology& ontology();
  const Ontology& ontology() const;
  void set_ontology(Ontology ontology);

  bool test_only() const { return test_only_; }
  void set_test_only(bool value) { test_only_ = value; }

  /// Binds a new identifier. Rebinding an existing name is DuplicateBinding.
  void bind(const std::string& name, const Entity& entity,
            const std::optional<SourceLocation>& where = std::nullopt);
  /// Binds a name defined by this namespace; it becomes part of the public
  /// bindings that dependents see.
  void define(const std::string& name, const Entity& entity,
              const std::optional<SourceLocation>& where = std::nullopt);
  void unbind(const std::string& name);

  bool is_bound(std::string_view name) const;
  /// Plain lookup, including deprecated aliases, without warnings.
  std::optional<Entity> lookup(std::string_view name) const;
  /// Lookup that records a warning when the name is a deprecated alias.
  /// Unbound names raise UnboundIdentifier at `where`.
  Entity resolve(std::string_view name, const SourceLocation& where);

  void deprecate(const std::string& old_name, const Entity& entity, const std::string& replacement);

  const std::map<std::string, Entity, std::less<>>& bindings() const { return bindings_; }
  const std::map<std::string, Deprecation, std::less<>>& deprecated() const { return deprecated_; }
  /// Names defined by this namespace in definition order.
  const std::vector<std::string>& local_names() const { return local_names_; }
  /// Local class names (the classes translators see).
  std::vector<std::string> named_classes() const;
  /// Preferred identifier for an IRI: a local name if any, else any binding.
  std::optional<std::string> name_of(const Iri& iri) const;

  void add_dependency(std::shared_ptr<const Environment> dep, const std::string& alias);
  const std::vector<std::shared_ptr<const Environment>>& dependencies() const { return deps_; }

  void add_external(const std::string& source_iri, ExternalSource source);
  const std::map<std::string, ExternalSource>& externals() const { return externals_; }

  /// This ontology followed by everything it imports, transitively, each once.
  std::vector<const Ontology*> imports_closure() const;

  void add_template(patterns::TemplateDef def, const std::string& alias = {});
  const patterns::TemplateDef* find_template(std::string_view name) const;
  const std::map<std::string, patterns::TemplateDef, std::less<>>& templates() const {
    return templates_;
  }

  void add_test(TestDef test) { tests_.push_back(std::move(test)); }
  const std::vector<TestDef>& tests() const { return tests_; }

  void warn(std::string message, std::optional<SourceLocation> where = std::nullopt);
  void note(std::string message, std::optional<SourceLocation> where = std::nullopt);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  void collect_closure(std::vector<const Ontology*>& out) const;

  std::string ns_;
  std::filesystem::path root_;
  std::filesystem::path file_;
  std::optional<Ontology> ontology_;
  bool test_only_ = false;
  std::map<std::string, Entity, std::less<>> bindings_;
  std::map<std::string, Deprecation, std::less<>> deprecated_;
  std::vector<std::string> local_names_;
  std::map<std::string, std::string> local_by_iri_;
  std::vector<std::shared_ptr<const Environment>> deps_;
  std::map<std::string, ExternalSource> externals_;
  std::map<std::string, patterns::TemplateDef, std::less<>> templates_;
  std::vector<TestDef> tests_;
  std::vector<Diagnostic> diagnostics_;
};

/// Loads namespaces from one or more source roots. Namespace `a.b` lives in
/// `<root>/a/b.ont`; each namespace is evaluated at most once per session.
class Session {
 public:
  explicit Session(std::vector<std::filesystem::path> roots);

  std::shared_ptr<Environment> load(std::string_view ns);
  /// Evaluates source text as namespace `ns` without touching the file system
  /// for the namespace itself (its `use` forms still resolve through roots).
  std::shared_ptr<Environment> load_text(std::string_view ns, std::string_view text,
                                         const std::string& file_name = "<input>");

  std::filesystem::path locate(std::string_view ns) const;
  /// Every namespace found under the roots, sorted.
  std::vector<std::string> discover() const;

  const std::vector<std::filesystem::path>& roots() const { return roots_; }
  /// Loaded environments in completion order.
  const std::vector<std::shared_ptr<Environment>>& loaded() const { return order_; }
  int evaluations(std::string_view ns) const;

 private:
  std::shared_ptr<Environment> evaluate(std::string_view ns, std::string_view text,
                                        const std::filesystem::path& root,
                                        const std::filesystem::path& file);

  std::vector<std::filesystem::path> roots_;
  std::map<std::string, std::shared_ptr<Environment>, std::less<>> cache_;
  std::vector<std::shared_ptr<Environment>> order_;
  std::vector<std::string> loading_;
  std::map<std::string, int, std::less<>> evaluations_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ontoforge
