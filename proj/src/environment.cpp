#include "ontoforge/environment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ontoforge/evaluator.hpp"

namespace ontoforge {

namespace fs = std::filesystem;

std::string_view to_string(Diagnostic::Severity severity) {
  switch (severity) {
    case Diagnostic::Severity::Note: return "note";
    case Diagnostic::Severity::Warning: return "warning";
    case Diagnostic::Severity::Error: return "error";
  }
  return "note";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Environment

Environment::Environment(std::string ns, fs::path root, fs::path file)
    : ns_(std::move(ns)), root_(std::move(root)), file_(std::move(file)) {}

Ontology& Environment::ontology() {
  if (!ontology_) throw Error(ErrorCode::InvalidForm, "namespace '" + ns_ + "' has no defontology");
  return *ontology_;
}

const Ontology& Environment::ontology() const {
  if (!ontology_) throw Error(ErrorCode::InvalidForm, "namespace '" + ns_ + "' has no defontology");
  return *ontology_;
}

void Environment::set_ontology(Ontology ontology) {
  if (ontology_) throw Error(ErrorCode::DuplicateOntology, "namespace '" + ns_ + "' already has an ontology");
  ontology_.emplace(std::move(ontology));
}

void Environment::bind(const std::string& name, const Entity& entity,
                       const std::optional<SourceLocation>& where) {
  if (is_bound(name)) {
    throw Error(ErrorCode::DuplicateBinding, "'" + name + "' is already bound", where);
  }
  bindings_.emplace(name, entity);
}

void Environment::define(const std::string& name, const Entity& entity,
                         const std::optional<SourceLocation>& where) {
  bind(name, entity, where);
  local_names_.push_back(name);
  local_by_iri_.emplace(entity.iri.str(), name);
}

void Environment::unbind(const std::string& name) {
  if (auto it = bindings_.find(name); it != bindings_.end()) {
    if (auto l = local_by_iri_.find(it->second.iri.str()); l != local_by_iri_.end() && l->second == name) {
      local_by_iri_.erase(l);
    }
    bindings_.erase(it);
    std::erase(local_names_, name);
  }
}

bool Environment::is_bound(std::string_view name) const {
  return bindings_.contains(name) || deprecated_.contains(name);
}

std::optional<Entity> Environment::lookup(std::string_view name) const {
  if (auto it = bindings_.find(name); it != bindings_.end()) return it->second;
  if (auto it = deprecated_.find(name); it != deprecated_.end()) return it->second.entity;
  return std::nullopt;
}

Entity Environment::resolve(std::string_view name, const SourceLocation& where) {
  if (auto it = bindings_.find(name); it != bindings_.end()) return it->second;
  if (auto it = deprecated_.find(name); it != deprecated_.end()) {
    warn("'" + std::string(name) + "' is deprecated: label has changed; use '" +
             it->second.replacement + "' instead",
         where);
    return it->second.entity;
  }
  throw Error(ErrorCode::UnboundIdentifier, "unbound identifier '" + std::string(name) + "'", where);
}

void Environment::deprecate(const std::string& old_name, const Entity& entity,
                            const std::string& replacement) {
  if (bindings_.contains(old_name)) {
    throw Error(ErrorCode::DuplicateBinding,
                "cannot alias deprecated '" + old_name + "': the name is bound");
  }
  deprecated_.insert_or_assign(old_name, Deprecation{entity, replacement});
}

std::vector<std::string> Environment::named_classes() const {
  std::vector<std::string> out;
  for (const auto& name : local_names_) {
    auto it = bindings_.find(name);
    if (it != bindings_.end() && it->second.kind == EntityKind::Class) out.push_back(name);
  }
  return out;
}

std::optional<std::string> Environment::name_of(const Iri& iri) const {
  if (auto it = local_by_iri_.find(iri.str()); it != local_by_iri_.end()) return it->second;
  std::optional<std::string> best;
  for (const auto& [name, entity] : bindings_) {
    if (entity.iri == iri && (!best || name.size() < best->size())) best = name;
  }
  return best;
}

void Environment::add_dependency(std::shared_ptr<const Environment> dep, const std::string& alias) {
  for (const auto& name : dep->local_names()) {
    if (auto e = dep->lookup(name)) bind(alias + "/" + name, *e);
  }
  for (const auto& [source, ext] : dep->externals()) {
    for (const auto& [name, iri] : ext.rows) {
      if (auto e = dep->lookup(name); e && !is_bound(alias + "/" + name)) bind(alias + "/" + name, *e);
    }
  }
  for (const auto& [name, dep_info] : dep->deprecated()) {
    deprecated_.insert_or_assign(alias + "/" + name,
                                 Deprecation{dep_info.entity, alias + "/" + dep_info.replacement});
  }
  for (const auto& [name, def] : dep->templates()) {
    if (name.find('/') == std::string::npos) templates_.insert_or_assign(alias + "/" + name, def);
  }
  deps_.push_back(std::move(dep));
}

void Environment::add_external(const std::string& source_iri, ExternalSource source) {
  externals_.insert_or_assign(source_iri, std::move(source));
}

void Environment::collect_closure(std::vector<const Ontology*>& out) const {
  if (ontology_ && std::find(out.begin(), out.end(), &*ontology_) == out.end()) {
    out.push_back(&*ontology_);
  }
  for (const auto& [iri, ext] : externals_) {
    if (std::find(out.begin(), out.end(), ext.ontology.get()) == out.end()) {
      out.push_back(ext.ontology.get());
    }
  }
  for (const auto& dep : deps_) dep->collect_closure(out);
}

std::vector<const Ontology*> Environment::imports_closure() const {
  std::vector<const Ontology*> out;
  collect_closure(out);
  return out;
}

void Environment::add_template(patterns::TemplateDef def, const std::string& alias) {
  auto key = alias.empty() ? def.name : alias + "/" + def.name;
  if (templates_.contains(key) || bindings_.contains(key)) {
    throw Error(ErrorCode::DuplicateBinding, "'" + key + "' is already bound", def.where);
  }
  templates_.emplace(std::move(key), std::move(def));
}

const patterns::TemplateDef* Environment::find_template(std::string_view name) const {
  auto it = templates_.find(name);
  return it == templates_.end() ? nullptr : &it->second;
}

void Environment::warn(std::string message, std::optional<SourceLocation> where) {
  diagnostics_.push_back({Diagnostic::Severity::Warning, std::move(where), std::move(message)});
}

void Environment::note(std::string message, std::optional<SourceLocation> where) {
  diagnostics_.push_back({Diagnostic::Severity::Note, std::move(where), std::move(message)});
}

// ---------------------------------------------------------------------------
// Session

Session::Session(std::vector<fs::path> roots) : roots_(std::move(roots)) {}

fs::path Session::locate(std::string_view ns) const {
  std::string rel(ns);
  std::replace(rel.begin(), rel.end(), '.', '/');
  rel += ".ont";
  for (const auto& root : roots_) {
    auto candidate = root / rel;
    if (fs::is_regular_file(candidate)) return candidate;
  }
  return {};
}

std::vector<std::string> Session::discover() const {
  std::vector<std::string> out;
  for (const auto& root : roots_) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) continue;
    for (auto it = fs::recursive_directory_iterator(root, ec); it != fs::recursive_directory_iterator();
         it.increment(ec)) {
      if (ec) break;
      if (!it->is_regular_file() || it->path().extension() != ".ont") continue;
      auto rel = fs::relative(it->path(), root).replace_extension("");
      std::string ns;
      for (const auto& part : rel) {
        if (!ns.empty()) ns += '.';
        ns += part.string();
      }
      out.push_back(ns);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Session::evaluations(std::string_view ns) const {
  auto it = evaluations_.find(ns);
  return it == evaluations_.end() ? 0 : it->second;
}

std::shared_ptr<Environment> Session::load(std::string_view ns) {
  if (auto it = cache_.find(ns); it != cache_.end()) return it->second;
  if (std::find(loading_.begin(), loading_.end(), ns) != loading_.end()) {
    std::string cycle;
    auto start = std::find(loading_.begin(), loading_.end(), ns);
    for (auto it = start; it != loading_.end(); ++it) cycle += *it + " -> ";
    cycle += std::string(ns);
    throw Error(ErrorCode::CycleError, "cyclic use: " + cycle);
  }
  auto file = locate(ns);
  if (file.empty()) {
    throw Error(ErrorCode::NamespaceNotFound, "namespace '" + std::string(ns) + "' not found");
  }
  fs::path root;
  for (const auto& r : roots_) {
    auto rel = fs::relative(file, r);
    if (!rel.empty() && rel.native()[0] != '.') {
      root = r;
      break;
    }
  }
  return evaluate(ns, read_file(file), root, file);
}

std::shared_ptr<Environment> Session::load_text(std::string_view ns, std::string_view text,
                                                const std::string& file_name) {
  if (cache_.contains(ns)) {
    throw Error(ErrorCode::DuplicateOntology, "namespace '" + std::string(ns) + "' already loaded");
  }
  fs::path root = roots_.empty() ? fs::current_path() : roots_.front();
  return evaluate(ns, text, root, file_name);
}

std::shared_ptr<Environment> Session::evaluate(std::string_view ns, std::string_view text,
                                               const fs::path& root, const fs::path& file) {
  loading_.emplace_back(ns);
  struct Pop {
    std::vector<std::string>& stack;
    ~Pop() { stack.pop_back(); }
  } pop{loading_};

  auto env = std::make_shared<Environment>(std::string(ns), root, file);
  auto forms = read_forms(text, file.string());
  ++evaluations_[std::string(ns)];
  eval_forms(*env, forms, this);
  cache_.emplace(std::string(ns), env);
  order_.push_back(env);
  return env;
}

}  // namespace ontoforge
