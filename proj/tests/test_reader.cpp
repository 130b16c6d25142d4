#include <doctest.h>

#include "ontoforge/environment.hpp"
#include "ontoforge/evaluator.hpp"
#include "ontoforge/forms.hpp"
#include "support.hpp"

using namespace ontoforge;
using testsupport::TempDir;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::IoError;
}

std::shared_ptr<Environment> eval_text(const std::string& text) {
  Session session({});
  return session.load_text("scratch", text, "scratch.ont");
}

const std::string kHeader = "(defontology pizza :iri \"http://x/p#\")\n";

Entity cls(const std::string& name) { return {EntityKind::Class, Iri("http://x/p#" + name)}; }

}  // namespace

TEST_CASE("reading a class definition") {
  auto forms = read_forms("(defclass Pizza :label \"Pizza\")", "t.ont");
  REQUIRE(forms.size() == 1);
  const auto& f = forms[0];
  REQUIRE(f.is_list());
  REQUIRE(f.children.size() == 4);
  CHECK(f.children[0].is_identifier());
  CHECK(f.children[0].text == "defclass");
  CHECK(f.children[1].text == "Pizza");
  CHECK(f.children[2].is_keyword("label"));
  CHECK(f.children[3].is_text());
  CHECK(f.children[3].text == "Pizza");
  CHECK(f.children[1].where == SourceLocation{"t.ont", 1, 11});
}

TEST_CASE("reader edge cases") {
  CHECK(read_forms("", "t").empty());
  CHECK(read_forms("; only a comment\n", "t").empty());
  auto brackets = read_forms("[a b] (c)", "t");
  CHECK(brackets[0].is_bracket());
  CHECK(brackets[0].children.size() == 2);

  try {
    read_forms("(defclass Pizza", "t");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    REQUIRE(e.where());
    CHECK(e.where()->line == 1);
  }
  CHECK(code_of([] { read_forms("(a))", "t"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_forms("(a]", "t"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_forms("\"open", "t"); }) == ErrorCode::ParseError);
}

TEST_CASE("print then read is a fixpoint") {
  const std::string text =
      "(defclass A :label \"quote \\\" and \\\\ slash\\nnewline\" :subclass (owlsome p B))\n"
      "[x :y \"z\"] ; trailing\n(with-suffix Topping (defclass GoatsCheese))";
  auto once = read_forms(text, "t");
  auto printed = print_forms(once);
  auto twice = read_forms(printed, "t");
  CHECK(print_forms(twice) == printed);
  REQUIRE(twice.size() == once.size());
  CHECK(twice[0].children[3].text == once[0].children[3].text);
}

TEST_CASE("an equivalent option evaluates to an equivalence") {
  auto env = eval_text(kHeader +
                       "(defclass Pizza)\n(defclass CheeseTopping)\n(defoproperty hasTopping)\n"
                       "(defclass CheesyPizza\n  :equivalent\n  (owland Pizza\n"
                       "           (owlsome hasTopping CheeseTopping)))");
  Entity has_topping{EntityKind::ObjectProperty, Iri("http://x/p#hasTopping")};
  Axiom expected = EquivalentClasses{
      {ClassExpression::named(cls("CheesyPizza")),
       ClassExpression::intersection_of({ClassExpression::named(cls("Pizza")),
                                         ClassExpression::some(has_topping, ClassExpression::named(cls("CheeseTopping")))})}};
  CHECK(env->ontology().contains(expected));
}

TEST_CASE("entity IRIs concatenate the ontology IRI and the identifier") {
  auto env = eval_text(kHeader + "(defclass Pizza)");
  CHECK(env->lookup("Pizza") == cls("Pizza"));
  CHECK(env->ontology().size() == 1);
}

TEST_CASE("define before use") {
  try {
    eval_text(kHeader + "(defclass A\n  :subclass B)");
    FAIL("expected UnboundIdentifier");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnboundIdentifier);
    CHECK(std::string(e.what()).find("'B'") != std::string::npos);
    REQUIRE(e.where());
    CHECK(e.where()->line == 3);
    CHECK(e.where()->column == 13);
  }
}

TEST_CASE("evaluation errors") {
  CHECK(code_of([] { eval_text(kHeader + kHeader); }) == ErrorCode::DuplicateOntology);
  CHECK(code_of([] { eval_text(kHeader + "(defclass A :colour \"red\")"); }) == ErrorCode::UnknownOption);
  CHECK(code_of([] { eval_text("(defclass A)"); }) == ErrorCode::InvalidForm);
  CHECK(code_of([] { eval_text(kHeader + "(defclass A)(defclass A)"); }) == ErrorCode::DuplicateBinding);
  CHECK(code_of([] { eval_text(kHeader + "(defclass 9lives)"); }) == ErrorCode::InvalidForm);
  CHECK(code_of([] { eval_text(kHeader + "(frobnicate A)"); }) == ErrorCode::InvalidForm);
  CHECK(code_of([] { eval_text(kHeader + "(defoproperty p)(defclass A :subclass p)"); }) == ErrorCode::InvalidForm);
}

TEST_CASE("class and property options") {
  auto env = eval_text(kHeader +
                       "(defclass B)(defclass C)\n"
                       "(defclass A :label \"Ay\" :comment \"about A\" :annotation (label \"Aa\" \"PT\") (comment \"bare\")\n"
                       "  :subclass B (owlnot C) :disjoint C :equivalent (owlor B C))\n"
                       "(defoproperty q)\n"
                       "(defoproperty p :domain A :range (owland B C) :subproperty q :characteristic :functional :transitive)");
  const auto& ont = env->ontology();
  auto a = cls("A");
  CHECK(ont.contains(AnnotationAssertion{vocab::rdfs_label(), a.iri, AnnotationValue("Ay", "en")}));
  CHECK(ont.contains(AnnotationAssertion{vocab::rdfs_comment(), a.iri, AnnotationValue("about A", "en")}));
  CHECK(ont.contains(AnnotationAssertion{vocab::rdfs_label(), a.iri, AnnotationValue("Aa", "pt")}));
  CHECK(ont.contains(AnnotationAssertion{vocab::rdfs_comment(), a.iri, AnnotationValue("bare")}));
  CHECK(ont.contains(SubClassOf{ClassExpression::named(a), ClassExpression::named(cls("B"))}));
  CHECK(ont.contains(SubClassOf{ClassExpression::named(a), ClassExpression::complement_of(ClassExpression::named(cls("C")))}));
  CHECK(ont.contains(DisjointClasses{{a, cls("C")}}));
  Entity p{EntityKind::ObjectProperty, Iri("http://x/p#p")};
  Entity q{EntityKind::ObjectProperty, Iri("http://x/p#q")};
  CHECK(ont.contains(FunctionalObjectProperty{p}));
  CHECK(ont.contains(TransitiveObjectProperty{p}));
  CHECK(ont.contains(SubObjectPropertyOf{p, q}));
  CHECK(ont.contains(ObjectPropertyDomain{p, ClassExpression::named(a)}));
}

TEST_CASE("owlclass creates an unbound class in expression position") {
  auto env = eval_text(kHeader + "(defclass B)(gci (owlclass \"Anon\" :subclass B) B)");
  CHECK(env->ontology().is_declared(cls("Anon")));
  CHECK_FALSE(env->is_bound("Anon"));
  CHECK(code_of([] { eval_text(kHeader + "(defclass B)(gci (owlclass \"B\") B)"); }) == ErrorCode::DuplicateBinding);
}

TEST_CASE("deprecated aliases resolve with one warning") {
  auto env = eval_text(kHeader + "(defclass has_proper_part)");
  env->deprecate("has_part", cls("has_proper_part"), "has_proper_part");
  auto before = env->diagnostics().size();
  Entity e = env->resolve("has_part", SourceLocation{"x", 1, 1});
  CHECK(e == cls("has_proper_part"));
  REQUIRE(env->diagnostics().size() == before + 1);
  const auto& message = env->diagnostics().back().message;
  CHECK(message.find("label has changed") != std::string::npos);
  CHECK(message.find("has_proper_part") != std::string::npos);
  CHECK(code_of([&] { env->resolve("Pizzza", SourceLocation{"x", 1, 1}); }) == ErrorCode::UnboundIdentifier);
}

TEST_CASE("namespaces load from source trees") {
  TempDir dir;
  write_file(dir.path() / "pizza" / "toppings.ont",
             "(defontology toppings :iri \"http://x/toppings#\")\n(defclass CheeseTopping)");
  write_file(dir.path() / "pizza" / "bases.ont",
             "(defontology bases :iri \"http://x/bases#\")\n(use pizza.toppings :as t)\n(defclass PizzaBase)");
  write_file(dir.path() / "pizza" / "base.ont",
             "(defontology base :iri \"http://x/base#\")\n(use pizza.toppings :as t)\n(use pizza.bases)\n"
             "(defclass Pizza :subclass (owlsome hasTopping t/CheeseTopping))\n"
             "(defoproperty hasTopping)");
  Session session({dir.path()});
  CHECK_THROWS(session.load("pizza.base"));  // hasTopping used before definition

  write_file(dir.path() / "pizza" / "base.ont",
             "(defontology base :iri \"http://x/base#\")\n(use pizza.toppings :as t)\n(use pizza.bases)\n"
             "(defoproperty hasTopping)\n"
             "(defclass Pizza :subclass (owlsome hasTopping t/CheeseTopping) pizza.bases/PizzaBase)");
  Session fresh({dir.path()});
  auto env = fresh.load("pizza.base");
  CHECK(env->ontology().contains(Import{Iri("http://x/toppings#")}));
  CHECK(env->ontology().contains(Import{Iri("http://x/bases#")}));
  CHECK(fresh.evaluations("pizza.toppings") == 1);
  CHECK(fresh.loaded().front()->ns() == "pizza.toppings");
  CHECK(fresh.discover() == std::vector<std::string>{"pizza.base", "pizza.bases", "pizza.toppings"});
}

TEST_CASE("namespace loading errors") {
  TempDir dir;
  write_file(dir.path() / "a.ont", "(defontology a :iri \"http://x/a#\")\n(use b)");
  write_file(dir.path() / "b.ont", "(defontology b :iri \"http://x/b#\")\n(use a)");
  write_file(dir.path() / "self.ont", "(defontology self :iri \"http://x/s#\")\n(use self)");
  Session session({dir.path()});
  try {
    session.load("a");
    FAIL("expected CycleError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CycleError);
    CHECK(std::string(e.what()).find("a -> b -> a") != std::string::npos);
  }
  Session again({dir.path()});
  CHECK(code_of([&] { again.load("self"); }) == ErrorCode::CycleError);
  CHECK(code_of([&] { again.load("missing"); }) == ErrorCode::NamespaceNotFound);
}

TEST_CASE("permuting independent definitions changes only axiom order") {
  auto one = eval_text(kHeader + "(defclass A :label \"a\")\n(defclass B :label \"b\")");
  auto two = eval_text(kHeader + "(defclass B :label \"b\")\n(defclass A :label \"a\")");
  auto sorted = [](std::vector<Axiom> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(one->ontology().axioms()) == sorted(two->ontology().axioms()));
  CHECK(one->ontology().axioms() != two->ontology().axioms());
}

TEST_CASE("test-only namespaces get a synthetic IRI") {
  auto sample = testsupport::kPizzaRoot;
  Session session({sample, testsupport::kSuiteRoot});
  auto env = session.load("pizza.test");
  CHECK(env->test_only());
  CHECK(env->ontology().iri().str() == "urn:ontoforge:test:pizza.test#");
  CHECK(env->ontology().axioms() == std::vector<Axiom>{Import{Iri("http://www.ncl.ac.uk/pizza#")}});
  CHECK(env->lookup("p/CheesyPizza").has_value());
  CHECK(env->tests().size() == 2);
}
