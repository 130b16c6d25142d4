#pragma once

#include <span>
#include <vector>

#include "ontoforge/environment.hpp"
#include "ontoforge/forms.hpp"
#include "ontoforge/model.hpp"

namespace ontoforge {

class Session;

/// Evaluates DSL forms against one namespace environment.
class Evaluator {
 public:
  explicit Evaluator(Environment& env, Session* session = nullptr);

  void eval(std::span<const Form> forms);
  void eval(const Form& form);

  ClassExpression expression(const Form& form);
  Entity property(const Form& form);
  /// `(owlclass "Name" options...)`: declares an unbound class.
  Entity create_class(const Form& form);

  /// Adds axioms to the namespace ontology, first declaring any entity that
  /// is only declared in an imported ontology.
  std::size_t add(std::span<const Axiom> axioms);
  std::size_t add(const Axiom& axiom) { return add(std::span<const Axiom>(&axiom, 1)); }

 private:
  struct Option {
    std::string name;
    std::vector<const Form*> values;
    SourceLocation where;
  };

  std::vector<Option> parse_options(const Form& form, std::size_t start,
                                    std::initializer_list<std::string_view> allowed,
                                    std::initializer_list<std::string_view> flags = {});
  Iri entity_iri(std::string_view name, const SourceLocation& where) const;
  std::string text_arg(const Form& form, std::string_view what) const;

  void defontology(const Form& form);
  void use(const Form& form);
  Entity defclass(const Form& form);
  void defoproperty(const Form& form);
  void refine(const Form& form);
  void gci(const Form& form);
  void disjoint_subclasses(const Form& form);
  void affix_block(const Form& form);
  void value_partition(const Form& form);
  void deftemplate(const Form& form);
  void apply_template(const patterns::TemplateDef& def, const Form& form);
  void read_external(const Form& form);
  void load_labels(const Form& form);
  void deftest(const Form& form);

  void class_options(const Entity& cls, const std::vector<Option>& options);
  void property_options(const Entity& prop, const std::vector<Option>& options);
  void annotation_options(const Entity& subject, const Option& option);

  Environment& env_;
  Session* session_;
};

void eval_forms(Environment& env, std::span<const Form> forms, Session* session = nullptr);

}  // namespace ontoforge
