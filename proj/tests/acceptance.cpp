// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ontoforge/cli.hpp"
#include "ontoforge/environment.hpp"
#include "ontoforge/importer.hpp"
#include "ontoforge/polyglot.hpp"
#include "ontoforge/reasoner.hpp"
#include "ontoforge/serializer.hpp"
#include "ontoforge/testkit.hpp"
#include "support.hpp"

using namespace ontoforge;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << " s";
  return out.str();
}

std::set<Axiom> axiom_set(const Ontology& ont) { return {ont.axioms().begin(), ont.axioms().end()}; }

// 1 -------------------------------------------------------------------------

const std::string kExpectedFrames =
    "Class: piz:ThinAndCrispyBase\n"
    "    Annotations: \n"
    "        rdfs:label \"BaseFinaEQuebradica\"@pt\n"
    "    SubClassOf: \n"
    "        piz:PizzaBase\n"
    "    DisjointWith: \n"
    "        piz:DeepPanBase\n"
    "\n"
    "Class: piz:DeepPanBase\n"
    "    Annotations: \n"
    "        rdfs:label \"BaseEspessa\"@pt,\n"
    "    SubClassOf: \n"
    "        piz:PizzaBase\n"
    "    DisjointWith: \n"
    "        piz:ThinAndCrispyBase\n";

Outcome frames() {
  auto start = Clock::now();
  Session session({testsupport::kPizzaRoot});
  auto omn = render_omn(session.load("pizza")->ontology());
  double elapsed = seconds_since(start);
  auto from = omn.find("Class: piz:ThinAndCrispyBase\n");
  auto deep = omn.find("Class: piz:DeepPanBase\n");
  if (from == std::string::npos || deep == std::string::npos) return {false, "frames not found"};
  auto to = omn.find("\n\n", deep);
  std::string actual = omn.substr(from, to == std::string::npos ? std::string::npos : to - from + 1);
  if (elapsed >= 1.0) return {false, "took " + fmt_seconds(elapsed)};
  if (actual == kExpectedFrames) return {true, fmt_seconds(elapsed)};
  std::string without_comma = kExpectedFrames;
  without_comma.erase(without_comma.find("@pt,\n") + 3, 1);
  if (actual == without_comma) {
    return {false,
            "differs only by the trailing comma after the single DeepPanBase annotation, which no "
            "consistent list separator produces while the ThinAndCrispyBase frame has none"};
  }
  return {false, "frame text differs:\n" + actual};
}

// 2 -------------------------------------------------------------------------

Outcome suite() {
  auto start = Clock::now();
  Session session({testsupport::kPizzaRoot, testsupport::kSuiteRoot});
  auto env = session.load("pizza.test");
  auto report = testkit::run_tests(*env);
  double elapsed = seconds_since(start);
  std::string detail = std::to_string(report.tests) + " tests, " + std::to_string(report.assertions) +
                       " assertions, " + std::to_string(report.failures.size()) + " failures, " +
                       fmt_seconds(elapsed);
  bool ok = report.tests == 2 && report.assertions == 5 && report.failures.empty() && elapsed < 2.0;
  return {ok, detail};
}

// 3 -------------------------------------------------------------------------

Outcome oracle() {
  auto start = Clock::now();
  std::mt19937 rng(500);
  const int runs = 500;
  int mismatches = 0;
  std::string first;
  for (int i = 0; i < runs; ++i) {
    testsupport::RandomShape shape{std::uniform_int_distribution<int>(1, 12)(rng),
                                   std::uniform_int_distribution<int>(1, 3)(rng),
                                   std::uniform_int_distribution<int>(0, 25)(rng)};
    auto ont = testsupport::random_el_ontology(rng, shape);
    auto taxonomy = el::classify(ont);
    auto expected = testsupport::oracle_classify(ont);
    testsupport::OracleResult actual;
    for (const auto& cls : taxonomy.classes()) {
      auto& subs = actual.subsumers[cls.iri.str()];
      for (const auto& s : taxonomy.subsumers(cls)) {
        if (s.iri.str() == std::string(vocab::kOwl) + "Nothing") {
          actual.unsatisfiable.insert(cls.iri.str());
        } else if (s.iri.str() != std::string(vocab::kOwl) + "Thing") {
          subs.insert(s.iri.str());
        }
      }
    }
    if (actual.subsumers != expected.subsumers || actual.unsatisfiable != expected.unsatisfiable) {
      if (mismatches++ == 0) first = "run " + std::to_string(i);
    }
  }
  double elapsed = seconds_since(start);
  std::string detail = std::to_string(runs) + " ontologies, " + std::to_string(mismatches) + " mismatches";
  if (!first.empty()) detail += " (first: " + first + ")";
  detail += ", " + fmt_seconds(elapsed);
  return {mismatches == 0 && elapsed < 60.0, detail};
}

// 4 -------------------------------------------------------------------------

Outcome probes() {
  std::mt19937 rng(4);
  Session session({testsupport::kPizzaRoot});
  auto env = session.load("pizza");
  auto classes = env->named_classes();
  const std::vector<std::string> properties{"hasTopping", "hasBase", "hasIngredient"};
  auto pick = [&](const std::vector<std::string>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  auto roll = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  testkit::TaxonomyCache cache;
  const std::string before = render_functional(env->ontology());
  int changed = 0, errors = 0;
  const int blocks = 100;
  for (int i = 0; i < blocks; ++i) {
    std::vector<std::string> names;
    std::string bindings = "[";
    int count = 1 + roll(3);
    for (int k = 0; k < count; ++k) {
      std::string name = "probe" + std::to_string(k);
      auto operand = [&] {
        std::vector<std::string> pool = classes;
        pool.insert(pool.end(), names.begin(), names.end());
        switch (roll(4)) {
          case 0:
            return "(owlsome " + pick(properties) + " " + pick(pool) + ")";
          case 1:
            return "(owland " + pick(pool) + " " + pick(pool) + ")";
          case 2:
            return "(owlonly " + pick(properties) + " " + pick(pool) + ")";
          default:
            return pick(pool);
        }
      };
      bindings += name + " (owlclass \"p" + std::to_string(i) + "_" + std::to_string(k) + "\"";
      if (roll(2)) bindings += " :subclass " + operand() + " " + operand();
      if (roll(3) == 0) bindings += " :equivalent " + operand();
      if (roll(4) == 0) bindings += " :disjoint " + pick(classes);
      if (roll(3) == 0) bindings += " :label \"probe label\"";
      bindings += ") ";
      names.push_back(name);
    }
    bindings += "]";
    std::string body;
    switch (roll(4)) {
      case 0:
        body = "(coherent?)";
        break;
      case 1:
        body = "(not (isuperclass? " + pick(names) + " " + pick(classes) + "))";
        break;
      case 2:
        body = "(isuperclass? " + pick(names) + " Unbound" + std::to_string(i) + ")";  // throws
        break;
      default:
        body = "(isuperclass? " + pick(classes) + " " + pick(names) + ")";
    }
    try {
      testkit::run_probe_block(*env, cache, read_forms(bindings, "probe")[0], read_forms(body, "probe")[0]);
    } catch (const Error&) {
      ++errors;
    }
    if (render_functional(env->ontology()) != before) ++changed;
  }
  return {changed == 0, std::to_string(blocks) + " blocks (" + std::to_string(errors) + " raised), " +
                            std::to_string(changed) + " left a trace"};
}

// 5 -------------------------------------------------------------------------

Outcome round_trip() {
  int failures = 0;
  Session session({testsupport::kPizzaRoot});
  const auto& sample = session.load("pizza")->ontology();
  if (axiom_set(importer::parse_functional(render_functional(sample))) != axiom_set(sample)) ++failures;
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto ont = testsupport::random_ontology(rng, {});
    if (axiom_set(importer::parse_functional(render_functional(ont))) != axiom_set(ont)) ++failures;
  }
  return {failures == 0, "sample + 100 random, " + std::to_string(failures) + " differ"};
}

// 6 -------------------------------------------------------------------------

Outcome identifiers() {
  auto a = importer::label_to_identifier("has part");
  auto b = importer::label_to_identifier("provides service consumer with");
  return {a == "has_part" && b == "provides_service_consumer_with", a + ", " + b};
}

// 7 -------------------------------------------------------------------------

std::string relation_ontology(const std::string& label) {
  return "Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n"
         "Ontology(<http://example.org/relations>\n"
         "Declaration(ObjectProperty(<http://example.org/relations#R_0001>))\n"
         "Declaration(ObjectProperty(<http://example.org/relations#R_0002>))\n"
         "AnnotationAssertion(rdfs:label <http://example.org/relations#R_0001> \"" + label + "\")\n"
         "AnnotationAssertion(rdfs:label <http://example.org/relations#R_0002> \"part of\")\n"
         ")\n";
}

Outcome deprecation() {
  testsupport::TempDir dir;
  write_file(dir.path() / "app" / "relations.ofn", relation_ontology("has part"));
  write_file(dir.path() / "app.ont",
             "(defontology app :iri \"http://example.org/app#\")\n"
             "(read-external \"app/relations.ofn\" :naming :label :memo \"app/relations.memo\")\n");
  {
    Session session({dir.path()});
    auto env = session.load("app");
    write_file(dir.path() / "app" / "relations.memo",
               importer::format_memo(importer::memorise_save(*env, Iri("http://example.org/relations"))));
  }
  write_file(dir.path() / "app" / "relations.ofn", relation_ontology("has proper part"));
  Session session({dir.path()});
  auto env = session.load("app");
  auto report = importer::memorise_check(importer::memorise_save(*env, Iri("http://example.org/relations")),
                                         importer::parse_memo(read_file(dir.path() / "app" / "relations.memo")));
  if (report.deprecated.size() != 1) {
    return {false, std::to_string(report.deprecated.size()) + " deprecated aliases"};
  }
  auto warnings_before = env->diagnostics().size();
  Entity e = env->resolve("has_part", SourceLocation{"app.ont", 3, 1});
  auto new_diags = env->diagnostics().size() - warnings_before;
  bool names_replacement = new_diags == 1 && env->diagnostics().back().severity == Diagnostic::Severity::Warning &&
                           env->diagnostics().back().message.find("has_proper_part") != std::string::npos;
  bool ok = e.iri.str() == "http://example.org/relations#R_0001" && names_replacement;
  return {ok, "1 alias has_part -> " + report.deprecated[0].new_name + ", " + std::to_string(new_diags) +
                  " warning on resolve"};
}

// 8 -------------------------------------------------------------------------

Outcome polyglot_round_trip() {
  Session session({testsupport::kPizzaRoot});
  auto env = session.load("pizza");
  auto skeleton = polyglot::emit_skeleton(*env, "de");
  std::string filled;
  for (const auto& [key, value] : polyglot::parse_properties(skeleton).entries) filled += key + "=" + key + " (de)\n";
  auto table = polyglot::parse_properties(filled);
  auto first = polyglot::apply_labels(*env, table, "de");
  auto second = polyglot::apply_labels(*env, table, "de");
  auto classes = env->named_classes().size();
  bool ok = first.missing.empty() && first.unknown.empty() && first.added == classes && second.added == 0;
  return {ok, "missing " + std::to_string(first.missing.size()) + ", unknown " + std::to_string(first.unknown.size()) +
                  ", added " + std::to_string(first.added) + "/" + std::to_string(classes) + ", second pass added " +
                  std::to_string(second.added)};
}

// 9 -------------------------------------------------------------------------

Outcome scale() {
  const int count = 50000;
  auto text = testsupport::synthetic_forest(count, 10, 9);
  auto start = Clock::now();
  auto ont = std::make_shared<const Ontology>(importer::parse_functional(text, "synthetic.ofn"));
  double parsed = seconds_since(start);
  Environment env("synthetic", fs::path(), fs::path());
  env.set_ontology(Ontology(Iri("http://example.org/synthetic-client#")));
  auto interned = importer::intern_external(env, ont, importer::Naming::Label);
  double named = seconds_since(start);
  auto taxonomy = el::classify(*ont);
  double elapsed = seconds_since(start);
  bool ok = taxonomy.classes().size() == count && interned == count && elapsed < 60.0 &&
            env.is_bound("synthetic_process_49999_layer_9");
  return {ok, std::to_string(count) + " classes: parse " + fmt_seconds(parsed) + ", intern " +
                  fmt_seconds(named - parsed) + ", classify " + fmt_seconds(elapsed - named)};
}

// 10 ------------------------------------------------------------------------

Outcome determinism() {
  testsupport::TempDir dir;
  std::ostringstream sink;
  for (const char* run : {"a", "b"}) {
    int code = cli::run({"compile", "--src", testsupport::kPizzaRoot.string(), "--out", (dir.path() / run).string()},
                        sink, sink);
    if (code != cli::kOk) return {false, "compile exited " + std::to_string(code)};
  }
  for (const char* file : {"pizza.omn", "pizza.ofn"}) {
    if (read_file(dir.path() / "a" / file) != read_file(dir.path() / "b" / file)) {
      return {false, std::string(file) + " differs"};
    }
  }
  return {true, "pizza.omn, pizza.ofn identical"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "frame fidelity", frames},         {2, "sample test suite", suite},
      {3, "reasoner oracle", oracle},        {4, "probe restoration", probes},
      {5, "round trip", round_trip},         {6, "identifier mapping", identifiers},
      {7, "deprecation flow", deprecation},  {8, "polyglot round trip", polyglot_round_trip},
      {9, "scale", scale},                   {10, "determinism", determinism},
  };
  // Criteria that cannot pass as stated; each has a ledger entry explaining why.
  const std::set<int> known_unattainable{1};

  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << outcome.detail << "\n";
    if (!outcome.pass && !known_unattainable.contains(c.id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
