#include "ontoforge/patterns.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ontoforge::patterns {

std::vector<Axiom> disjoint_subclasses(const Entity& parent, std::span<const Entity> children,
                                       bool cover) {
  if (children.empty()) {
    throw Error(ErrorCode::EmptyBlock, "subclass block for '" + std::string(parent.iri.fragment()) +
                                           "' has no children");
  }
  std::vector<Axiom> out;
  for (const auto& child : children) {
    out.emplace_back(SubClassOf{ClassExpression::named(child), ClassExpression::named(parent)});
  }
  if (children.size() >= 2) {
    out.emplace_back(DisjointClasses{{children.begin(), children.end()}});
  }
  if (cover) {
    std::vector<ClassExpression> members;
    for (const auto& child : children) members.push_back(ClassExpression::named(child));
    out.emplace_back(EquivalentClasses{
        {ClassExpression::named(parent), ClassExpression::union_of(std::move(members))}});
  }
  return out;
}

std::string affix_name(std::string_view name, std::string_view affix, AffixPosition position) {
  return position == AffixPosition::Prefix ? std::string(affix) + std::string(name)
                                           : std::string(name) + std::string(affix);
}

namespace {

bool is_definition(const Form& form) {
  auto head = form.head();
  return (head == "defclass" || head == "defoproperty") && form.children.size() >= 2 &&
         form.children[1].is_identifier();
}

void collect_definitions(const Form& form, std::set<std::string>& names) {
  if (is_definition(form)) names.insert(form.children[1].text);
  for (const auto& child : form.children) collect_definitions(child, names);
}

void rename(Form& form, const std::set<std::string>& names, std::string_view affix,
            AffixPosition position) {
  if (form.is_identifier() && names.contains(form.text)) {
    form.text = affix_name(form.text, affix, position);
  }
  for (auto& child : form.children) rename(child, names, affix, position);
}

}  // namespace

std::vector<Form> expand_affix(std::string_view affix, AffixPosition position,
                               std::span<const Form> forms) {
  if (!is_valid_identifier(affix) &&
      !(position == AffixPosition::Suffix &&
        is_valid_identifier(std::string("A") + std::string(affix)))) {
    throw Error(ErrorCode::InvalidForm, "'" + std::string(affix) + "' is not a valid affix");
  }
  std::set<std::string> names;
  for (const auto& form : forms) collect_definitions(form, names);
  std::vector<Form> out(forms.begin(), forms.end());
  for (auto& form : out) rename(form, names, affix, position);
  return out;
}

Expansion value_partition(std::string_view base_iri, std::string_view partition,
                          std::span<const std::string> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::PatternArity, "value partition '" + std::string(partition) +
                                             "' needs at least two values, got " +
                                             std::to_string(values.size()));
  }
  std::set<std::string> seen{std::string(partition)};
  for (const auto& v : values) {
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::DuplicateBinding,
                  "value '" + v + "' appears twice in partition '" + std::string(partition) + "'");
    }
  }
  auto iri = [&](std::string_view name) { return Iri(std::string(base_iri) + std::string(name)); };

  Expansion out;
  Entity parent{EntityKind::Class, iri(partition)};
  Entity property{EntityKind::ObjectProperty, iri("has" + std::string(partition))};
  out.entities.push_back(parent);
  std::vector<Entity> members;
  for (const auto& v : values) members.push_back({EntityKind::Class, iri(v)});
  out.entities.insert(out.entities.end(), members.begin(), members.end());
  out.entities.push_back(property);

  for (const auto& e : out.entities) out.axioms.emplace_back(Declaration{e});
  auto block = disjoint_subclasses(parent, members, /*cover=*/true);
  out.axioms.insert(out.axioms.end(), block.begin(), block.end());
  out.axioms.emplace_back(FunctionalObjectProperty{property});
  out.axioms.emplace_back(ObjectPropertyRange{property, ClassExpression::named(parent)});
  return out;
}

// ---------------------------------------------------------------------------
// Templates

namespace {

bool is_marker(const Form& form) {
  return form.is_identifier() && form.text.size() > 1 && form.text.front() == '?';
}

std::string strip_marker(std::string_view name) {
  return std::string(!name.empty() && name.front() == '?' ? name.substr(1) : name);
}

bool is_each(const Form& form) { return form.is_list() && form.head() == "each"; }

void check_each_shape(const Form& form) {
  if (form.children.size() != 4 || !is_marker(form.children[1]) || !is_marker(form.children[2])) {
    throw Error(ErrorCode::TemplateError, "expected (each ?rest ?var form)", form.where);
  }
}

void check_markers(const Form& form, std::set<std::string> scope, const std::string& rest) {
  if (is_marker(form)) {
    if (!scope.contains(form.text.substr(1))) {
      throw Error(ErrorCode::TemplateError,
                  "template marker '" + form.text + "' does not name a parameter", form.where);
    }
    return;
  }
  if (is_each(form)) {
    check_each_shape(form);
    if (form.children[1].text.substr(1) != rest) {
      throw Error(ErrorCode::TemplateError,
                  "each iterates over '" + form.children[1].text + "', which is not the rest parameter",
                  form.children[1].where);
    }
    scope.insert(form.children[2].text.substr(1));
    check_markers(form.children[3], scope, rest);
    return;
  }
  for (const auto& child : form.children) check_markers(child, scope, rest);
}

struct Bindings {
  std::map<std::string, Form> single;
  std::optional<std::string> rest_name;
  std::vector<Form> rest;
};

void substitute_into(const Form& form, const Bindings& bindings, std::vector<Form>& out);

Form substitute_one(const Form& form, const Bindings& bindings) {
  std::vector<Form> out;
  substitute_into(form, bindings, out);
  if (out.size() != 1) {
    throw Error(ErrorCode::TemplateError,
                "rest parameter cannot stand alone in this position", form.where);
  }
  return std::move(out.front());
}

void substitute_into(const Form& form, const Bindings& bindings, std::vector<Form>& out) {
  if (is_marker(form)) {
    auto name = form.text.substr(1);
    if (auto it = bindings.single.find(name); it != bindings.single.end()) {
      out.push_back(it->second);
      return;
    }
    if (bindings.rest_name && *bindings.rest_name == name) {
      out.insert(out.end(), bindings.rest.begin(), bindings.rest.end());
      return;
    }
    throw Error(ErrorCode::TemplateError, "unbound template marker '" + form.text + "'",
                form.where);
  }
  if (is_each(form)) {
    check_each_shape(form);
    auto rest = form.children[1].text.substr(1);
    if (!bindings.rest_name || *bindings.rest_name != rest) {
      throw Error(ErrorCode::TemplateError, "unbound template marker '" + form.children[1].text + "'",
                  form.children[1].where);
    }
    for (const auto& element : bindings.rest) {
      Bindings inner = bindings;
      inner.single.insert_or_assign(form.children[2].text.substr(1), element);
      out.push_back(substitute_one(form.children[3], inner));
    }
    return;
  }
  Form copy = form;
  if (form.is_list() || form.is_bracket()) {
    copy.children.clear();
    for (const auto& child : form.children) substitute_into(child, bindings, copy.children);
  }
  out.push_back(std::move(copy));
}

}  // namespace

TemplateDef parse_template(const Form& form) {
  if (form.children.size() < 3 || !form.children[1].is_identifier() ||
      !form.children[2].is_bracket()) {
    throw Error(ErrorCode::TemplateError, "expected (deftemplate name [params...] body...)",
                form.where);
  }
  TemplateDef def;
  def.name = form.children[1].text;
  def.where = form.where;
  if (!is_valid_identifier(def.name)) {
    throw Error(ErrorCode::TemplateError, "invalid template name '" + def.name + "'",
                form.children[1].where);
  }
  const auto& params = form.children[2].children;
  std::set<std::string> scope;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Form& p = params[i];
    if (!p.is_identifier()) {
      throw Error(ErrorCode::TemplateError, "template parameters must be identifiers", p.where);
    }
    if (p.text == "&") {
      if (def.rest || i + 2 != params.size() || !params[i + 1].is_identifier()) {
        throw Error(ErrorCode::TemplateError, "'&' must be followed by exactly one rest parameter",
                    p.where);
      }
      def.rest = strip_marker(params[i + 1].text);
      if (!scope.insert(*def.rest).second) {
        throw Error(ErrorCode::TemplateError, "duplicate parameter '" + *def.rest + "'",
                    params[i + 1].where);
      }
      break;
    }
    auto name = strip_marker(p.text);
    if (!is_valid_identifier(name) || !scope.insert(name).second) {
      throw Error(ErrorCode::TemplateError, "invalid or duplicate parameter '" + p.text + "'",
                  p.where);
    }
    def.params.push_back(std::move(name));
  }
  def.body.assign(form.children.begin() + 3, form.children.end());
  for (const auto& body_form : def.body) check_markers(body_form, scope, def.rest.value_or(""));
  return def;
}

std::vector<Form> instantiate(const TemplateDef& def, const Form& arg_group) {
  if (!arg_group.is_bracket()) {
    throw Error(ErrorCode::TemplateArity,
                "template '" + def.name + "' expects bracketed argument groups", arg_group.where);
  }
  const auto& args = arg_group.children;
  if (args.size() < def.params.size() || (!def.rest && args.size() != def.params.size())) {
    throw Error(ErrorCode::TemplateArity,
                "template '" + def.name + "' expects " +
                    (def.rest ? "at least " : std::string()) + std::to_string(def.params.size()) +
                    " arguments, got " + std::to_string(args.size()),
                arg_group.where);
  }
  Bindings bindings;
  for (std::size_t i = 0; i < def.params.size(); ++i) bindings.single.emplace(def.params[i], args[i]);
  if (def.rest) {
    bindings.rest_name = def.rest;
    bindings.rest.assign(args.begin() + static_cast<std::ptrdiff_t>(def.params.size()), args.end());
  }
  std::vector<Form> out;
  for (const auto& form : def.body) substitute_into(form, bindings, out);
  return out;
}

}  // namespace ontoforge::patterns
