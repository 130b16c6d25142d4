#include <doctest.h>

#include <algorithm>

#include "ontoforge/environment.hpp"
#include "ontoforge/patterns.hpp"

using namespace ontoforge;

namespace {

const std::string kBase = "http://x/p#";
const std::string kHeader = "(defontology pizza :iri \"http://x/p#\")\n";

Entity cls(const std::string& name) { return {EntityKind::Class, Iri(kBase + name)}; }
Entity prop(const std::string& name) { return {EntityKind::ObjectProperty, Iri(kBase + name)}; }
ClassExpression named(const std::string& name) { return ClassExpression::named(cls(name)); }

std::shared_ptr<Environment> eval_text(const std::string& text) {
  Session session({});
  return session.load_text("scratch", text, "scratch.ont");
}

template <class T>
std::size_t count_of(const Ontology& ont) {
  return static_cast<std::size_t>(
      std::count_if(ont.axioms().begin(), ont.axioms().end(), [](const Axiom& a) { return std::holds_alternative<T>(a); }));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("a two-child block gives two subclass axioms and one disjointness") {
  auto env = eval_text(kHeader +
                       "(defclass PizzaBase)\n"
                       "(as-disjoint-subclasses\n PizzaBase\n\n (defclass ThinAndCrispyBase\n"
                       "   :annotation (label \"BaseFinaEQuebradica\" \"pt\"))\n\n"
                       " (defclass DeepPanBase\n   :annotation (label  \"BaseEspessa\" \"pt\")))");
  const auto& ont = env->ontology();
  CHECK(count_of<SubClassOf>(ont) == 2);
  CHECK(count_of<DisjointClasses>(ont) == 1);
  CHECK(count_of<AnnotationAssertion>(ont) == 2);
  CHECK(ont.contains(SubClassOf{named("ThinAndCrispyBase"), named("PizzaBase")}));
  CHECK(ont.contains(SubClassOf{named("DeepPanBase"), named("PizzaBase")}));
  CHECK(ont.contains(DisjointClasses{{cls("ThinAndCrispyBase"), cls("DeepPanBase")}}));
  CHECK(ont.contains(AnnotationAssertion{vocab::rdfs_label(), cls("DeepPanBase").iri, AnnotationValue("BaseEspessa", "pt")}));
}

TEST_CASE("disjoint subclass expansion") {
  auto parent = cls("P");
  std::vector<Entity> one{cls("A")};
  auto single = patterns::disjoint_subclasses(parent, one, false);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == Axiom(SubClassOf{named("A"), named("P")}));

  std::vector<Entity> three{cls("A"), cls("B"), cls("C")};
  auto covered = patterns::disjoint_subclasses(parent, three, true);
  REQUIRE(covered.size() == 5);
  CHECK(covered[3] == Axiom(DisjointClasses{three}));
  CHECK(covered[4] == Axiom(EquivalentClasses{{named("P"), ClassExpression::union_of({named("A"), named("B"), named("C")})}}));

  CHECK(code_of([&] { patterns::disjoint_subclasses(parent, {}, false); }) == ErrorCode::EmptyBlock);
  CHECK(code_of([] { eval_text(kHeader + "(defclass P)(as-disjoint-subclasses P)"); }) == ErrorCode::EmptyBlock);
}

TEST_CASE("cover keyword in the DSL") {
  auto env = eval_text(kHeader + "(defclass P)(as-disjoint-subclasses P :cover (defclass A) (defclass B))");
  CHECK(env->ontology().contains(EquivalentClasses{{named("P"), ClassExpression::union_of({named("A"), named("B")})}}));
}

TEST_CASE("affix blocks rename definitions and in-block references") {
  auto env = eval_text(kHeader +
                       "(defclass CheeseTopping)\n"
                       "(with-suffix Topping\n  (as-disjoint-subclasses CheeseTopping\n"
                       "    (defclass Mozzarella) (defclass Parmesan :subclass Mozzarella)))\n"
                       "(with-prefix has (defoproperty Base))");
  CHECK(env->lookup("MozzarellaTopping") == cls("MozzarellaTopping"));
  CHECK_FALSE(env->is_bound("Mozzarella"));
  CHECK(env->ontology().contains(SubClassOf{named("ParmesanTopping"), named("MozzarellaTopping")}));
  CHECK(env->lookup("hasBase") == prop("hasBase"));
  CHECK(patterns::affix_name("Base", "has", patterns::AffixPosition::Prefix) == "hasBase");
  CHECK(code_of([] { eval_text(kHeader + "(with-prefix \"1x\" (defclass A))"); }) == ErrorCode::InvalidForm);
}

TEST_CASE("value partition") {
  std::vector<std::string> values{"Mild", "Medium", "Hot"};
  auto expansion = patterns::value_partition(kBase, "Spiciness", values);
  CHECK(expansion.entities.size() == 5);
  CHECK(expansion.entities.back() == prop("hasSpiciness"));
  auto has = [&](const Axiom& a) {
    return std::find(expansion.axioms.begin(), expansion.axioms.end(), a) != expansion.axioms.end();
  };
  CHECK(has(SubClassOf{named("Mild"), named("Spiciness")}));
  CHECK(has(DisjointClasses{{cls("Mild"), cls("Medium"), cls("Hot")}}));
  CHECK(has(EquivalentClasses{{named("Spiciness"), ClassExpression::union_of({named("Mild"), named("Medium"), named("Hot")})}}));
  CHECK(has(FunctionalObjectProperty{prop("hasSpiciness")}));
  CHECK(has(ObjectPropertyRange{prop("hasSpiciness"), named("Spiciness")}));

  std::vector<std::string> lonely{"Only"};
  CHECK(code_of([&] { patterns::value_partition(kBase, "S", lonely); }) == ErrorCode::PatternArity);
  std::vector<std::string> twice{"A", "A"};
  CHECK(code_of([&] { patterns::value_partition(kBase, "S", twice); }) == ErrorCode::DuplicateBinding);

  auto env = eval_text(kHeader + "(value-partition Spiciness [Mild Medium Hot])");
  CHECK(env->lookup("hasSpiciness").has_value());
  CHECK(env->lookup("Medium") == cls("Medium"));
}

namespace {

const std::string kPizzaPrelude = kHeader +
                                  "(defclass NamedPizza)(defoproperty hasTopping)\n"
                                  "(defclass MozzarellaTopping)(defclass TomatoTopping)\n"
                                  "(deftemplate generate-named-pizza [pizza & toppings]\n"
                                  "  (defclass ?pizza\n    :subclass NamedPizza\n"
                                  "    (each ?toppings ?t (owlsome hasTopping ?t))\n"
                                  "    (owlonly hasTopping ?toppings)))\n";

}  // namespace

TEST_CASE("template instantiation per argument group") {
  auto env = eval_text(kPizzaPrelude +
                       "(generate-named-pizza [MargheritaPizza MozzarellaTopping TomatoTopping]\n"
                       "                      [TomatoPizza TomatoTopping])");
  const auto& ont = env->ontology();
  auto has_topping = prop("hasTopping");
  CHECK(ont.contains(SubClassOf{named("MargheritaPizza"), named("NamedPizza")}));
  CHECK(ont.contains(SubClassOf{named("MargheritaPizza"), ClassExpression::some(has_topping, named("MozzarellaTopping"))}));
  CHECK(ont.contains(SubClassOf{named("MargheritaPizza"), ClassExpression::some(has_topping, named("TomatoTopping"))}));
  CHECK(ont.contains(SubClassOf{named("MargheritaPizza"),
                                ClassExpression::only(has_topping, ClassExpression::union_of({named("MozzarellaTopping"), named("TomatoTopping")}))}));
  // A single topping collapses the closure union to the topping itself.
  CHECK(ont.contains(SubClassOf{named("TomatoPizza"), ClassExpression::only(has_topping, named("TomatoTopping"))}));
  CHECK(env->is_bound("TomatoPizza"));
}

TEST_CASE("template errors") {
  CHECK(code_of([] { eval_text(kHeader + "(deftemplate t [a] (defclass ?b))"); }) == ErrorCode::TemplateError);
  CHECK(code_of([] { eval_text(kHeader + "(deftemplate defclass [a] (defclass ?a))"); }) == ErrorCode::TemplateError);
  CHECK(code_of([] { eval_text(kHeader + "(deftemplate t [a a] (defclass ?a))"); }) == ErrorCode::TemplateError);
  CHECK(code_of([] { eval_text(kHeader + "(deftemplate t [a b] (defclass ?a))(t [X])"); }) == ErrorCode::TemplateArity);
  CHECK(code_of([] { eval_text(kHeader + "(deftemplate t [a] (defclass ?a))(t [X Y])"); }) == ErrorCode::TemplateArity);
  CHECK_THROWS_AS(eval_text(kPizzaPrelude + "(generate-named-pizza [Lonely])"), Error);
}

TEST_CASE("parse_template records parameters") {
  auto forms = read_forms("(deftemplate pair [a b & more] (defclass ?a) (each ?more ?m (defclass ?m)))", "t");
  auto def = patterns::parse_template(forms[0]);
  CHECK(def.name == "pair");
  CHECK(def.params == std::vector<std::string>{"a", "b"});
  CHECK(def.rest == "more");
  CHECK(def.body.size() == 2);
  auto group = read_forms("[X Y Z W]", "t");
  auto out = patterns::instantiate(def, group[0]);
  CHECK(print_forms(out) == print_forms(read_forms("(defclass X) (defclass Z) (defclass W)", "t")));
}
