#include "ontoforge/serializer.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace ontoforge {

namespace {

bool is_local_part(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') || (u >= '0' && u <= '9') || c == '_' ||
           c == '-';
  });
}

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string literal(const AnnotationValue& value) {
  std::string out = quote(value.text);
  if (value.lang) out += "@" + *value.lang;
  return out;
}

class Omn {
 public:
  explicit Omn(const Ontology& ont) : ont_(ont) {}

  std::string name(const Iri& iri) const {
    if (auto s = shorten(ont_, iri)) return *s;
    throw Error(ErrorCode::NoPrefix, "no prefix covers '" + iri.str() + "'");
  }

  std::string expr(const ClassExpression& e) const {
    using K = ClassExpression::Kind;
    switch (e.kind()) {
      case K::Thing:
        return "owl:Thing";
      case K::Nothing:
        return "owl:Nothing";
      case K::Named:
        return name(e.entity().iri);
      case K::And:
      case K::Or: {
        std::string out;
        for (const auto& op : e.operands()) {
          if (!out.empty()) out += e.kind() == K::And ? " and " : " or ";
          out += operand(op);
        }
        return out;
      }
      case K::Not:
        return "not " + operand(e.filler());
      case K::Some:
        return name(e.entity().iri) + " some " + operand(e.filler());
      case K::Only:
        return name(e.entity().iri) + " only " + operand(e.filler());
    }
    return {};
  }

  std::string operand(const ClassExpression& e) const {
    return e.is_atomic() ? expr(e) : "(" + expr(e) + ")";
  }

 private:
  const Ontology& ont_;
};

struct Frame {
  std::vector<std::tuple<std::string, std::string, std::string>> annotations;  // (property, lang, text)
  std::vector<std::pair<std::string, std::vector<std::string>>> sections;

  std::vector<std::string>& section(const std::string& keyword) {
    for (auto& s : sections) {
      if (s.first == keyword) return s.second;
    }
    return sections.emplace_back(keyword, std::vector<std::string>{}).second;
  }
};

void write_section(std::string& out, std::string_view keyword, const std::vector<std::string>& entries) {
  if (entries.empty()) return;
  out += "    ";
  out += keyword;
  out += ": \n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += "        " + entries[i];
    if (i + 1 < entries.size()) out += ",";
    out += "\n";
  }
}

}  // namespace

std::optional<std::string> shorten(const Ontology& ontology, const Iri& iri) {
  const std::string& s = iri.str();
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : ontology.prefixes()) {
    const auto& base = entry.second;
    if (s.size() > base.size() && s.compare(0, base.size(), base) == 0 &&
        is_local_part(std::string_view(s).substr(base.size())) &&
        (!best || base.size() > best->second.size())) {
      best = &entry;
    }
  }
  if (!best) return std::nullopt;
  return best->first + ":" + s.substr(best->second.size());
}

std::string render_expression_omn(const ClassExpression& expression, const Ontology& ontology) {
  return Omn(ontology).expr(expression);
}

std::string render_omn(const Ontology& ontology) {
  Omn omn(ontology);
  std::string out;
  for (const auto& [label, base] : ontology.prefixes()) {
    out += "Prefix: " + label + ": <" + base + ">\n";
  }
  out += "\nOntology: <" + ontology.iri().str() + ">\n";
  for (const auto& axiom : ontology.axioms()) {
    if (const auto* imp = std::get_if<Import>(&axiom)) out += "Import: <" + imp->target.str() + ">\n";
  }

  std::map<std::string, Frame> frames;
  std::vector<std::string> gcis;
  std::vector<std::string> misc;
  auto frame = [&](const Iri& iri) -> Frame& { return frames[iri.str()]; };
  auto short_name = [&](const Entity& e) { return omn.name(e.iri); };

  for (const auto& axiom : ontology.axioms()) {
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, AnnotationAssertion>) {
            frame(a.subject).annotations.emplace_back(short_name(a.property), a.value.lang.value_or(""),
                                                      short_name(a.property) + " " + literal(a.value));
          } else if constexpr (std::is_same_v<T, SubClassOf>) {
            if (a.sub.is_named()) {
              frame(a.sub.entity().iri).section("SubClassOf").push_back(omn.expr(a.sup));
            } else {
              gcis.push_back(omn.expr(a.sub) + " SubClassOf " + omn.expr(a.sup));
            }
          } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
            bool any_named = false;
            for (std::size_t i = 0; i < a.members.size(); ++i) {
              if (!a.members[i].is_named()) continue;
              any_named = true;
              auto& entries = frame(a.members[i].entity().iri).section("EquivalentTo");
              for (std::size_t j = 0; j < a.members.size(); ++j) {
                if (j != i) entries.push_back(omn.expr(a.members[j]));
              }
            }
            if (!any_named) {
              std::string line;
              for (const auto& m : a.members) line += (line.empty() ? "" : ", ") + omn.expr(m);
              misc.push_back("EquivalentClasses: " + line);
            }
          } else if constexpr (std::is_same_v<T, DisjointClasses>) {
            for (std::size_t i = 0; i < a.members.size(); ++i) {
              auto& entries = frame(a.members[i].iri).section("DisjointWith");
              for (std::size_t j = 0; j < a.members.size(); ++j) {
                if (j != i) entries.push_back(short_name(a.members[j]));
              }
            }
          } else if constexpr (std::is_same_v<T, SubObjectPropertyOf>) {
            frame(a.sub.iri).section("SubPropertyOf").push_back(short_name(a.sup));
          } else if constexpr (std::is_same_v<T, ObjectPropertyDomain>) {
            frame(a.property.iri).section("Domain").push_back(omn.expr(a.domain));
          } else if constexpr (std::is_same_v<T, ObjectPropertyRange>) {
            frame(a.property.iri).section("Range").push_back(omn.expr(a.range));
          } else if constexpr (std::is_same_v<T, FunctionalObjectProperty>) {
            frame(a.property.iri).section("Characteristics").push_back("Functional");
          } else if constexpr (std::is_same_v<T, TransitiveObjectProperty>) {
            frame(a.property.iri).section("Characteristics").push_back("Transitive");
          }
        },
        axiom);
  }

  static const std::vector<std::string> kClassSections = {"EquivalentTo", "SubClassOf", "DisjointWith"};
  static const std::vector<std::string> kPropertySections = {"Domain", "Range", "Characteristics",
                                                             "SubPropertyOf"};
  for (const auto& entity : ontology.declared_entities()) {
    std::string_view keyword;
    const std::vector<std::string>* order = nullptr;
    switch (entity.kind) {
      case EntityKind::Class:
        keyword = "Class";
        order = &kClassSections;
        break;
      case EntityKind::ObjectProperty:
        keyword = "ObjectProperty";
        order = &kPropertySections;
        break;
      case EntityKind::AnnotationProperty:
        keyword = "AnnotationProperty";
        break;
      case EntityKind::Ontology:
        continue;
    }
    out += "\n";
    out += keyword;
    out += ": " + short_name(entity) + "\n";
    auto it = frames.find(entity.iri.str());
    if (it == frames.end()) continue;
    Frame& f = it->second;
    std::sort(f.annotations.begin(), f.annotations.end());
    std::vector<std::string> annotations;
    for (const auto& a : f.annotations) annotations.push_back(std::get<2>(a));
    write_section(out, "Annotations", annotations);
    if (!order) continue;
    for (const auto& name : *order) {
      for (const auto& [kw, entries] : f.sections) {
        if (kw == name) write_section(out, kw, entries);
      }
    }
  }

  if (!gcis.empty() || !misc.empty()) {
    out += "\n";
    if (!gcis.empty()) write_section(out, "GeneralClassAxioms", gcis);
    for (const auto& line : misc) out += line + "\n";
  }
  return out;
}

namespace {

class Functional {
 public:
  explicit Functional(const Ontology& ont) : ont_(ont) {}

  std::string name(const Iri& iri) const {
    if (auto s = shorten(ont_, iri)) return *s;
    return "<" + iri.str() + ">";
  }

  std::string expr(const ClassExpression& e) const {
    using K = ClassExpression::Kind;
    switch (e.kind()) {
      case K::Thing:
        return "owl:Thing";
      case K::Nothing:
        return "owl:Nothing";
      case K::Named:
        return name(e.entity().iri);
      case K::And:
      case K::Or: {
        std::string out = e.kind() == K::And ? "ObjectIntersectionOf(" : "ObjectUnionOf(";
        for (std::size_t i = 0; i < e.operands().size(); ++i) {
          if (i) out += " ";
          out += expr(e.operands()[i]);
        }
        return out + ")";
      }
      case K::Not:
        return "ObjectComplementOf(" + expr(e.filler()) + ")";
      case K::Some:
        return "ObjectSomeValuesFrom(" + name(e.entity().iri) + " " + expr(e.filler()) + ")";
      case K::Only:
        return "ObjectAllValuesFrom(" + name(e.entity().iri) + " " + expr(e.filler()) + ")";
    }
    return {};
  }

  std::string axiom(const Axiom& axiom) const {
    return std::visit(
        [&](const auto& a) -> std::string {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, Declaration>) {
            std::string kind = a.entity.kind == EntityKind::Class            ? "Class"
                               : a.entity.kind == EntityKind::ObjectProperty ? "ObjectProperty"
                               : a.entity.kind == EntityKind::AnnotationProperty
                                   ? "AnnotationProperty"
                                   : "NamedIndividual";
            return "Declaration(" + kind + "(" + name(a.entity.iri) + "))";
          } else if constexpr (std::is_same_v<T, SubClassOf>) {
            return "SubClassOf(" + expr(a.sub) + " " + expr(a.sup) + ")";
          } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
            std::string out = "EquivalentClasses(";
            for (std::size_t i = 0; i < a.members.size(); ++i) out += (i ? " " : "") + expr(a.members[i]);
            return out + ")";
          } else if constexpr (std::is_same_v<T, DisjointClasses>) {
            std::string out = "DisjointClasses(";
            for (std::size_t i = 0; i < a.members.size(); ++i) out += (i ? " " : "") + name(a.members[i].iri);
            return out + ")";
          } else if constexpr (std::is_same_v<T, SubObjectPropertyOf>) {
            return "SubObjectPropertyOf(" + name(a.sub.iri) + " " + name(a.sup.iri) + ")";
          } else if constexpr (std::is_same_v<T, ObjectPropertyDomain>) {
            return "ObjectPropertyDomain(" + name(a.property.iri) + " " + expr(a.domain) + ")";
          } else if constexpr (std::is_same_v<T, ObjectPropertyRange>) {
            return "ObjectPropertyRange(" + name(a.property.iri) + " " + expr(a.range) + ")";
          } else if constexpr (std::is_same_v<T, FunctionalObjectProperty>) {
            return "FunctionalObjectProperty(" + name(a.property.iri) + ")";
          } else if constexpr (std::is_same_v<T, TransitiveObjectProperty>) {
            return "TransitiveObjectProperty(" + name(a.property.iri) + ")";
          } else if constexpr (std::is_same_v<T, AnnotationAssertion>) {
            return "AnnotationAssertion(" + name(a.property.iri) + " " + name(a.subject) + " " +
                   literal(a.value) + ")";
          } else {
            return "Import(<" + a.target.str() + ">)";
          }
        },
        axiom);
  }

 private:
  const Ontology& ont_;
};

}  // namespace

std::string render_axiom_functional(const Axiom& axiom, const Ontology& ontology) {
  return Functional(ontology).axiom(axiom);
}

std::string render_functional(const Ontology& ontology) {
  Functional f(ontology);
  std::string out;
  for (const auto& [label, base] : ontology.prefixes()) out += "Prefix(" + label + ":=<" + base + ">)\n";
  out += "\nOntology(<" + ontology.iri().str() + ">\n";
  for (const auto& axiom : ontology.axioms()) out += f.axiom(axiom) + "\n";
  out += ")\n";
  return out;
}

}  // namespace ontoforge
