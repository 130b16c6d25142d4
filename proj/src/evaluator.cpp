#include "ontoforge/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ontoforge/importer.hpp"
#include "ontoforge/patterns.hpp"
#include "ontoforge/polyglot.hpp"
#include "ontoforge/testkit.hpp"

namespace ontoforge {

namespace fs = std::filesystem;

namespace {

const std::set<std::string, std::less<>> kBuiltinForms = {
    "defontology", "use", "defclass", "defoproperty", "refine", "gci",
    "as-disjoint-subclasses", "with-suffix", "with-prefix", "value-partition",
    "deftemplate", "read-external", "load-labels", "polyglot-load-label", "deftest",
    "owland", "owlor", "owlnot", "owlsome", "owlonly", "owlclass", "each", "is",
    "isuperclass?", "coherent?", "not", "with-probe-entities"};

[[noreturn]] void invalid(const Form& form, const std::string& message) {
  throw Error(ErrorCode::InvalidForm, message, form.where);
}

// Prefix label derived from the last path segment of the ontology IRI.
std::string derive_prefix(const std::string& iri) {
  std::string trimmed = iri;
  while (!trimmed.empty() && (trimmed.back() == '#' || trimmed.back() == '/')) trimmed.pop_back();
  auto slash = trimmed.find_last_of("/:");
  std::string segment = slash == std::string::npos ? trimmed : trimmed.substr(slash + 1);
  if (auto dot = segment.find('.'); dot != std::string::npos) segment.resize(dot);
  std::string out;
  for (char c : segment) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isalnum(u)) out += static_cast<char>(std::tolower(u));
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) return "ont";
  return out;
}

}  // namespace

Evaluator::Evaluator(Environment& env, Session* session) : env_(env), session_(session) {}

void eval_forms(Environment& env, std::span<const Form> forms, Session* session) {
  Evaluator(env, session).eval(forms);
}

void Evaluator::eval(std::span<const Form> forms) {
  for (const auto& form : forms) eval(form);
}

void Evaluator::eval(const Form& form) {
  try {
    if (!form.is_list() || form.children.empty()) invalid(form, "expected a top-level form");
    auto head = form.head();
    if (head.empty()) invalid(form, "form must start with an identifier");
    if (head != "defontology" && !env_.has_ontology()) {
      invalid(form, "the first form must be (defontology name :iri \"...\")");
    }
    const std::string& full_head = form.children.front().text;
    if (head == "defontology") {
      defontology(form);
    } else if (head == "use") {
      use(form);
    } else if (head == "defclass") {
      defclass(form);
    } else if (head == "defoproperty") {
      defoproperty(form);
    } else if (head == "refine") {
      refine(form);
    } else if (head == "gci") {
      gci(form);
    } else if (head == "as-disjoint-subclasses") {
      disjoint_subclasses(form);
    } else if (head == "with-suffix" || head == "with-prefix") {
      affix_block(form);
    } else if (head == "value-partition") {
      value_partition(form);
    } else if (head == "deftemplate") {
      deftemplate(form);
    } else if (head == "read-external") {
      read_external(form);
    } else if (head == "load-labels" || head == "polyglot-load-label") {
      load_labels(form);
    } else if (head == "deftest") {
      deftest(form);
    } else if (const auto* def = env_.find_template(full_head)) {
      apply_template(*def, form);
    } else if (const auto* local = env_.find_template(head); local && full_head == head) {
      apply_template(*local, form);
    } else {
      invalid(form, "unknown form '" + full_head + "'");
    }
  } catch (const Error& e) {
    if (e.where()) throw;
    throw Error(e.code(), e.what(), form.where);
  }
}

// ---------------------------------------------------------------------------
// helpers

std::vector<Evaluator::Option> Evaluator::parse_options(
    const Form& form, std::size_t start, std::initializer_list<std::string_view> allowed,
    std::initializer_list<std::string_view> flags) {
  auto is_in = [](std::initializer_list<std::string_view> set, std::string_view name) {
    return std::find(set.begin(), set.end(), name) != set.end();
  };
  std::vector<Option> out;
  for (std::size_t i = start; i < form.children.size(); ++i) {
    const Form& child = form.children[i];
    if (child.is_keyword()) {
      // Options whose values are themselves keywords.
      bool keyword_value = !out.empty() && ((out.back().name == "characteristic" &&
                                             (child.text == "functional" || child.text == "transitive")) ||
                                            (out.back().name == "naming" && out.back().values.empty() &&
                                             (child.text == "label" || child.text == "fragment")));
      if (!keyword_value) {
        if (!is_in(allowed, child.text) && !is_in(flags, child.text)) {
          throw Error(ErrorCode::UnknownOption, "unknown option ':" + child.text + "'", child.where);
        }
        out.push_back({child.text, {}, child.where});
        continue;
      }
    }
    if (out.empty()) throw Error(ErrorCode::InvalidForm, "expected an option keyword", child.where);
    if (is_in(flags, out.back().name)) {
      throw Error(ErrorCode::InvalidForm, "option ':" + out.back().name + "' takes no value",
                  child.where);
    }
    out.back().values.push_back(&child);
  }
  for (const auto& opt : out) {
    if (opt.values.empty() && !is_in(flags, opt.name)) {
      throw Error(ErrorCode::InvalidForm, "option ':" + opt.name + "' needs a value", opt.where);
    }
  }
  return out;
}

Iri Evaluator::entity_iri(std::string_view name, const SourceLocation& where) const {
  if (!is_valid_identifier(name)) {
    throw Error(ErrorCode::InvalidForm, "'" + std::string(name) + "' is not a valid identifier", where);
  }
  return Iri(env_.ontology().iri().str() + std::string(name));
}

std::string Evaluator::text_arg(const Form& form, std::string_view what) const {
  if (!form.is_text()) invalid(form, "expected a string for " + std::string(what));
  return form.text;
}

std::size_t Evaluator::add(std::span<const Axiom> axioms) {
  Ontology& ont = env_.ontology();
  auto closure = env_.imports_closure();
  for (const auto& axiom : axioms) {
    for (const auto& entity : signature(axiom)) {
      if (ont.is_declared(entity) || vocab::is_builtin(entity)) continue;
      bool imported = std::any_of(closure.begin(), closure.end(), [&](const Ontology* o) {
        return o != &ont && o->is_declared(entity);
      });
      bool pending = std::any_of(axioms.begin(), axioms.end(), [&](const Axiom& a) {
        const auto* d = std::get_if<Declaration>(&a);
        return d && d->entity == entity;
      });
      if (imported && !pending) ont.declare(entity.kind, entity.iri);
    }
  }
  return ont.add(axioms);
}

// ---------------------------------------------------------------------------
// expressions

ClassExpression Evaluator::expression(const Form& form) {
  if (form.is_identifier()) {
    if (form.text == "owl:Thing") return ClassExpression::thing();
    if (form.text == "owl:Nothing") return ClassExpression::nothing();
    Entity e = env_.resolve(form.text, form.where);
    if (e.kind != EntityKind::Class) {
      invalid(form, "'" + form.text + "' is " + std::string(to_string(e.kind)) + ", expected a class");
    }
    return ClassExpression::named(std::move(e));
  }
  if (!form.is_list() || form.head().empty()) invalid(form, "expected a class expression");
  auto head = form.head();
  const auto& args = form.children;
  auto operands = [&](std::size_t from) {
    std::vector<ClassExpression> out;
    for (std::size_t i = from; i < args.size(); ++i) out.push_back(expression(args[i]));
    return out;
  };
  if (head == "owland" || head == "owlor") {
    if (args.size() < 2) invalid(form, std::string(head) + " needs at least one operand");
    return head == "owland" ? ClassExpression::intersection_of(operands(1))
                            : ClassExpression::union_of(operands(1));
  }
  if (head == "owlnot") {
    if (args.size() != 2) invalid(form, "owlnot takes exactly one operand");
    return ClassExpression::complement_of(expression(args[1]));
  }
  if (head == "owlsome" || head == "owlonly") {
    if (args.size() < 3) invalid(form, std::string(head) + " needs a property and a filler");
    Entity prop = property(args[1]);
    auto fillers = operands(2);
    if (head == "owlonly") {
      return ClassExpression::only(prop, ClassExpression::union_of(std::move(fillers)));
    }
    std::vector<ClassExpression> somes;
    for (auto& f : fillers) somes.push_back(ClassExpression::some(prop, std::move(f)));
    return ClassExpression::intersection_of(std::move(somes));
  }
  if (head == "owlclass") return ClassExpression::named(create_class(form));
  invalid(form, "unknown class expression '" + args.front().text + "'");
}

Entity Evaluator::property(const Form& form) {
  if (!form.is_identifier()) invalid(form, "expected an object property name");
  Entity e = env_.resolve(form.text, form.where);
  if (e.kind != EntityKind::ObjectProperty) {
    invalid(form, "'" + form.text + "' is " + std::string(to_string(e.kind)) +
                      ", expected an object property");
  }
  return e;
}

Entity Evaluator::create_class(const Form& form) {
  if (form.children.size() < 2) invalid(form, "expected (owlclass \"Name\" options...)");
  const Form& name_form = form.children[1];
  std::string name = name_form.is_identifier() ? name_form.text : text_arg(name_form, "owlclass");
  Iri iri = entity_iri(name, name_form.where);
  if (env_.ontology().declared_kind(iri)) {
    throw Error(ErrorCode::DuplicateBinding, "entity '" + name + "' already exists", name_form.where);
  }
  auto options = parse_options(form, 2, {"label", "comment", "annotation", "subclass", "equivalent", "disjoint"});
  Entity cls = env_.ontology().declare(EntityKind::Class, iri);
  class_options(cls, options);
  return cls;
}

// ---------------------------------------------------------------------------
// options

void Evaluator::annotation_options(const Entity& subject, const Option& option) {
  auto assertion = [&](const Entity& prop, std::string text, std::optional<std::string> lang) {
    add(AnnotationAssertion{prop, subject.iri, AnnotationValue(std::move(text), std::move(lang))});
  };
  if (option.name == "label" || option.name == "comment") {
    const Entity& prop = option.name == "label" ? vocab::rdfs_label() : vocab::rdfs_comment();
    for (const Form* v : option.values) assertion(prop, text_arg(*v, ":" + option.name), "en");
    return;
  }
  for (const Form* v : option.values) {
    auto head = v->head();
    if ((head != "label" && head != "comment") || v->children.size() < 2 || v->children.size() > 3) {
      invalid(*v, "expected (label \"text\" \"lang\") or (comment \"text\" \"lang\")");
    }
    std::optional<std::string> lang;
    if (v->children.size() == 3) lang = text_arg(v->children[2], "language tag");
    assertion(head == "label" ? vocab::rdfs_label() : vocab::rdfs_comment(),
              text_arg(v->children[1], "annotation"), lang);
  }
}

void Evaluator::class_options(const Entity& cls, const std::vector<Option>& options) {
  auto self = ClassExpression::named(cls);
  for (const auto& opt : options) {
    if (opt.name == "label" || opt.name == "comment" || opt.name == "annotation") {
      annotation_options(cls, opt);
    } else if (opt.name == "subclass") {
      for (const Form* v : opt.values) add(SubClassOf{self, expression(*v)});
    } else if (opt.name == "equivalent") {
      for (const Form* v : opt.values) add(EquivalentClasses{{self, expression(*v)}});
    } else if (opt.name == "disjoint") {
      for (const Form* v : opt.values) {
        auto other = expression(*v);
        if (!other.is_named()) invalid(*v, ":disjoint takes named classes");
        if (other.entity() == cls) invalid(*v, "a class cannot be disjoint with itself");
        add(DisjointClasses{{cls, other.entity()}});
      }
    } else {
      throw Error(ErrorCode::UnknownOption, "option ':" + opt.name + "' does not apply to classes", opt.where);
    }
  }
}

void Evaluator::property_options(const Entity& prop, const std::vector<Option>& options) {
  for (const auto& opt : options) {
    if (opt.name == "label" || opt.name == "comment" || opt.name == "annotation") {
      annotation_options(prop, opt);
    } else if (opt.name == "domain") {
      for (const Form* v : opt.values) add(ObjectPropertyDomain{prop, expression(*v)});
    } else if (opt.name == "range") {
      for (const Form* v : opt.values) add(ObjectPropertyRange{prop, expression(*v)});
    } else if (opt.name == "subproperty") {
      for (const Form* v : opt.values) add(SubObjectPropertyOf{prop, property(*v)});
    } else if (opt.name == "characteristic") {
      for (const Form* v : opt.values) {
        if (v->is_keyword("functional")) {
          add(FunctionalObjectProperty{prop});
        } else if (v->is_keyword("transitive")) {
          add(TransitiveObjectProperty{prop});
        } else {
          invalid(*v, "expected :functional or :transitive");
        }
      }
    } else {
      throw Error(ErrorCode::UnknownOption, "option ':" + opt.name + "' does not apply to properties", opt.where);
    }
  }
}

// ---------------------------------------------------------------------------
// top-level forms

void Evaluator::defontology(const Form& form) {
  if (env_.has_ontology()) {
    throw Error(ErrorCode::DuplicateOntology, "namespace '" + env_.ns() + "' already defines an ontology",
                form.where);
  }
  if (form.children.size() < 2 || !form.children[1].is_identifier()) {
    invalid(form, "expected (defontology name :iri \"...\")");
  }
  auto options = parse_options(form, 2, {"iri", "prefix"}, {"test-only"});
  std::optional<std::string> iri, prefix;
  bool test_only = false;
  for (const auto& opt : options) {
    if (opt.name == "test-only") test_only = true;
    if (opt.name == "iri") iri = text_arg(*opt.values.front(), ":iri");
    if (opt.name == "prefix") prefix = text_arg(*opt.values.front(), ":prefix");
  }
  if (!iri) {
    if (!test_only) invalid(form, "defontology needs an :iri");
    iri = "urn:ontoforge:test:" + env_.ns() + "#";
  }
  Ontology ontology{Iri(*iri)};
  std::string label = prefix ? *prefix : derive_prefix(*iri);
  if (!is_valid_identifier(label)) invalid(form, "invalid prefix label '" + label + "'");
  ontology.set_prefix(label, *iri);
  env_.set_ontology(std::move(ontology));
  env_.set_test_only(test_only);
}

void Evaluator::use(const Form& form) {
  if (!session_) invalid(form, "use is only available when loading from a source tree");
  if (form.children.size() < 2 || !form.children[1].is_identifier()) {
    invalid(form, "expected (use namespace [:as alias])");
  }
  std::string ns = form.children[1].text;
  std::string alias = ns;
  auto options = parse_options(form, 2, {"as"});
  for (const auto& opt : options) {
    if (!opt.values.front()->is_identifier()) invalid(*opt.values.front(), ":as takes an identifier");
    alias = opt.values.front()->text;
  }
  std::shared_ptr<Environment> dep;
  try {
    dep = session_->load(ns);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CycleError || e.code() == ErrorCode::NamespaceNotFound) {
      throw Error(e.code(), e.what(), form.children[1].where);
    }
    throw;
  }
  env_.add_dependency(dep, alias);
  Ontology& ont = env_.ontology();
  if (!dep->test_only()) add(Import{dep->ontology().iri()});
  for (const auto& [label, base] : dep->ontology().prefixes()) {
    if (!ont.prefixes().contains(label)) ont.set_prefix(label, base);
  }
}

Entity Evaluator::defclass(const Form& form) {
  if (form.children.size() < 2 || !form.children[1].is_identifier()) {
    invalid(form, "expected (defclass Name options...)");
  }
  const Form& name = form.children[1];
  Iri iri = entity_iri(name.text, name.where);
  if (env_.is_bound(name.text)) {
    throw Error(ErrorCode::DuplicateBinding, "'" + name.text + "' is already bound", name.where);
  }
  auto options = parse_options(form, 2, {"label", "comment", "annotation", "subclass", "equivalent", "disjoint"});
  Entity cls = env_.ontology().declare(EntityKind::Class, iri);
  env_.define(name.text, cls, name.where);
  class_options(cls, options);
  return cls;
}

void Evaluator::defoproperty(const Form& form) {
  if (form.children.size() < 2 || !form.children[1].is_identifier()) {
    invalid(form, "expected (defoproperty name options...)");
  }
  const Form& name = form.children[1];
  Iri iri = entity_iri(name.text, name.where);
  if (env_.is_bound(name.text)) {
    throw Error(ErrorCode::DuplicateBinding, "'" + name.text + "' is already bound", name.where);
  }
  auto options = parse_options(form, 2, {"label", "comment", "annotation", "domain", "range", "subproperty",
                                         "characteristic"});
  Entity prop = env_.ontology().declare(EntityKind::ObjectProperty, iri);
  env_.define(name.text, prop, name.where);
  property_options(prop, options);
}

void Evaluator::refine(const Form& form) {
  if (form.children.size() < 3 || !form.children[1].is_identifier()) {
    invalid(form, "expected (refine Name options...)");
  }
  Entity e = env_.resolve(form.children[1].text, form.children[1].where);
  if (e.kind == EntityKind::Class) {
    class_options(e, parse_options(form, 2, {"label", "comment", "annotation", "subclass", "equivalent", "disjoint"}));
  } else {
    property_options(e, parse_options(form, 2, {"label", "comment", "annotation", "domain", "range",
                                                "subproperty", "characteristic"}));
  }
}

void Evaluator::gci(const Form& form) {
  if (form.children.size() != 3) invalid(form, "expected (gci sub-expression super-expression)");
  add(SubClassOf{expression(form.children[1]), expression(form.children[2])});
}

void Evaluator::disjoint_subclasses(const Form& form) {
  if (form.children.size() < 2) invalid(form, "expected (as-disjoint-subclasses Parent children...)");
  auto parent = expression(form.children[1]);
  if (!parent.is_named()) invalid(form.children[1], "the parent must be a named class");
  bool cover = false;
  std::vector<Entity> children;
  for (std::size_t i = 2; i < form.children.size(); ++i) {
    const Form& child = form.children[i];
    if (child.is_keyword("cover")) {
      cover = true;
      continue;
    }
    if (child.head() != "defclass") invalid(child, "children of as-disjoint-subclasses must be defclass forms");
    children.push_back(defclass(child));
  }
  if (children.empty()) {
    throw Error(ErrorCode::EmptyBlock, "as-disjoint-subclasses block has no children", form.where);
  }
  auto axioms = patterns::disjoint_subclasses(parent.entity(), children, cover);
  add(axioms);
}

void Evaluator::affix_block(const Form& form) {
  if (form.children.size() < 2 || !(form.children[1].is_identifier() || form.children[1].is_text())) {
    invalid(form, "expected (" + std::string(form.head()) + " Affix forms...)");
  }
  auto position = form.head() == "with-prefix" ? patterns::AffixPosition::Prefix
                                               : patterns::AffixPosition::Suffix;
  std::span<const Form> inner(form.children.begin() + 2, form.children.end());
  auto expanded = patterns::expand_affix(form.children[1].text, position, inner);
  eval(expanded);
}

void Evaluator::value_partition(const Form& form) {
  if (form.children.size() != 3 || !form.children[1].is_identifier() || !form.children[2].is_bracket()) {
    invalid(form, "expected (value-partition Name [Value...])");
  }
  const Form& name = form.children[1];
  std::vector<std::string> values;
  for (const auto& v : form.children[2].children) {
    if (!v.is_identifier()) invalid(v, "partition values must be identifiers");
    entity_iri(v.text, v.where);
    values.push_back(v.text);
  }
  entity_iri(name.text, name.where);
  auto expansion = patterns::value_partition(env_.ontology().iri().str(), name.text, values);
  std::vector<std::string> names{name.text};
  names.insert(names.end(), values.begin(), values.end());
  names.push_back("has" + name.text);
  for (const auto& n : names) {
    if (env_.is_bound(n)) throw Error(ErrorCode::DuplicateBinding, "'" + n + "' is already bound", name.where);
  }
  add(expansion.axioms);
  for (std::size_t i = 0; i < names.size(); ++i) env_.define(names[i], expansion.entities[i], name.where);
}

void Evaluator::deftemplate(const Form& form) {
  auto def = patterns::parse_template(form);
  if (kBuiltinForms.contains(def.name)) {
    throw Error(ErrorCode::TemplateError, "'" + def.name + "' is a built-in form", form.children[1].where);
  }
  env_.add_template(std::move(def));
}

void Evaluator::apply_template(const patterns::TemplateDef& def, const Form& form) {
  if (form.children.size() < 2) {
    throw Error(ErrorCode::TemplateArity, "template '" + def.name + "' needs at least one argument group",
                form.where);
  }
  for (std::size_t i = 1; i < form.children.size(); ++i) {
    eval(patterns::instantiate(def, form.children[i]));
  }
}

void Evaluator::read_external(const Form& form) {
  if (form.children.size() < 2) invalid(form, "expected (read-external \"file.ofn\" options...)");
  fs::path path = env_.root() / text_arg(form.children[1], "read-external");
  auto options = parse_options(form, 2, {"naming", "prefix", "memo"});
  auto naming = importer::Naming::Fragment;
  std::optional<std::string> filter;
  std::optional<fs::path> memo;
  for (const auto& opt : options) {
    const Form& v = *opt.values.front();
    if (opt.name == "naming") {
      if (v.is_keyword("label")) {
        naming = importer::Naming::Label;
      } else if (!v.is_keyword("fragment")) {
        invalid(v, ":naming is :label or :fragment");
      }
    } else if (opt.name == "prefix") {
      filter = text_arg(v, ":prefix");
    } else {
      memo = env_.root() / text_arg(v, ":memo");
    }
  }
  auto ontology = std::make_shared<const Ontology>(
      importer::parse_functional(read_file(path), path.string()));
  importer::intern_external(env_, ontology, naming, filter);
  add(Import{ontology->iri()});
  for (const auto& [label, base] : ontology->prefixes()) {
    if (!env_.ontology().prefixes().contains(label)) env_.ontology().set_prefix(label, base);
  }
  if (memo) {
    if (!fs::exists(*memo)) {
      env_.note("memo file '" + memo->string() + "' does not exist yet", form.where);
      return;
    }
    auto saved = importer::parse_memo(read_file(*memo));
    auto current = importer::memorise_save(env_, ontology->iri());
    importer::install_deprecations(env_, importer::memorise_check(current, saved));
  }
}

void Evaluator::load_labels(const Form& form) {
  if (form.children.size() != 3) invalid(form, "expected (load-labels \"file.properties\" \"lang\")");
  fs::path path = env_.root() / text_arg(form.children[1], "load-labels");
  std::string lang = text_arg(form.children[2], "language");
  auto table = polyglot::parse_properties(read_file(path), path.string());
  auto report = polyglot::apply_labels(env_, table, lang);
  if (!report.missing.empty()) {
    std::string names;
    for (const auto& m : report.missing) names += (names.empty() ? "" : ", ") + m;
    env_.warn(std::to_string(report.missing.size()) + " classes have no '" + lang + "' label: " + names,
              form.where);
  }
  for (const auto& u : report.unknown) {
    env_.warn("'" + u + "' in " + path.filename().string() + " is not a class in this namespace", form.where);
  }
}

void Evaluator::deftest(const Form& form) {
  if (form.children.size() < 2 || !form.children[1].is_identifier()) {
    throw Error(ErrorCode::TestSyntax, "expected (deftest Name (is ...)...)", form.where);
  }
  TestDef test;
  test.name = form.children[1].text;
  test.where = form.where;
  for (std::size_t i = 2; i < form.children.size(); ++i) {
    const Form& is = form.children[i];
    if (is.head() != "is" || is.children.size() != 2) {
      throw Error(ErrorCode::TestSyntax, "test bodies consist of (is assertion) forms", is.where);
    }
    testkit::validate_assertion(is.children[1]);
    test.assertions.push_back(is.children[1]);
    test.locations.push_back(is.where);
  }
  for (const auto& existing : env_.tests()) {
    if (existing.name == test.name) {
      throw Error(ErrorCode::DuplicateBinding, "test '" + test.name + "' is already defined", form.where);
    }
  }
  env_.add_test(std::move(test));
}

}  // namespace ontoforge
