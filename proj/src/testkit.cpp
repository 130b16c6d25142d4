#include "ontoforge/testkit.hpp"

#include "ontoforge/evaluator.hpp"

namespace ontoforge::testkit {

namespace {

[[noreturn]] void syntax(const Form& form, const std::string& message) {
  throw Error(ErrorCode::TestSyntax, message, form.where);
}

std::string line_ref(const SourceLocation& where) {
  return (where.file.empty() ? std::string("<input>") : where.file) + ":" + std::to_string(where.line);
}

}  // namespace

const el::Taxonomy& TaxonomyCache::get(const Environment& env) {
  auto revision = env.ontology().revision();
  if (!taxonomy_ || revision_ != revision) {
    auto closure = env.imports_closure();
    taxonomy_ = std::make_shared<const el::Taxonomy>(el::classify(closure));
    revision_ = revision;
    ++computations_;
  }
  return *taxonomy_;
}

void TaxonomyCache::restore(const Snapshot& snapshot, std::uint64_t current_revision) {
  if (!snapshot.taxonomy) return;
  taxonomy_ = snapshot.taxonomy;
  revision_ = current_revision;
}

void validate_assertion(const Form& form) {
  if (!form.is_list() || form.head().empty()) syntax(form, "expected an assertion form");
  auto head = form.head();
  const auto& c = form.children;
  if (head == "isuperclass?") {
    if (c.size() != 3 || !c[1].is_identifier() || !c[2].is_identifier()) {
      syntax(form, "expected (isuperclass? Sub Super)");
    }
  } else if (head == "coherent?") {
    if (c.size() != 1) syntax(form, "coherent? takes no arguments");
  } else if (head == "not") {
    if (c.size() != 2) syntax(form, "not takes exactly one assertion");
    validate_assertion(c[1]);
  } else if (head == "with-probe-entities") {
    if (c.size() != 3 || !c[1].is_bracket() || c[1].children.size() % 2 != 0 || c[1].children.empty()) {
      syntax(form, "expected (with-probe-entities [name (owlclass \"text\" ...) ...] assertion)");
    }
    for (std::size_t i = 0; i < c[1].children.size(); i += 2) {
      const Form& name = c[1].children[i];
      const Form& value = c[1].children[i + 1];
      if (!name.is_identifier()) syntax(name, "probe names must be identifiers");
      if (value.head() != "owlclass") syntax(value, "probe values must be owlclass forms");
    }
    validate_assertion(c[2]);
  } else {
    syntax(form, "unknown assertion '" + c.front().text + "'");
  }
}

bool eval_assertion(Environment& env, TaxonomyCache& cache, const Form& form) {
  validate_assertion(form);
  auto head = form.head();
  const auto& c = form.children;
  if (head == "isuperclass?") {
    Entity sub = env.resolve(c[1].text, c[1].where);
    Entity sup = env.resolve(c[2].text, c[2].where);
    try {
      return cache.get(env).is_superclass(sub, sup);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), form.where);
    }
  }
  if (head == "coherent?") return cache.get(env).coherence_report().coherent;
  if (head == "not") return !eval_assertion(env, cache, c[1]);
  return run_probe_block(env, cache, c[1], c[2]);
}

bool run_probe_block(Environment& env, TaxonomyCache& cache, const Form& bindings, const Form& body) {
  Ontology& ont = env.ontology();
  const auto snapshot = cache.snapshot();
  const auto size_before = ont.size();
  const bool snapshot_current = snapshot.taxonomy && snapshot.revision == ont.revision();
  std::vector<std::pair<std::string, Entity>> probes;

  auto cleanup = [&] {
    for (const auto& [name, entity] : probes) ont.remove(ont.axioms_referencing(entity));
    if (ont.size() > size_before) {
      std::vector<Axiom> added(ont.axioms().begin() + static_cast<std::ptrdiff_t>(size_before), ont.axioms().end());
      ont.remove(added);
    }
    for (const auto& [name, entity] : probes) env.unbind(name);
    if (snapshot_current) cache.restore(snapshot, ont.revision());
  };

  bool result = false;
  try {
    Evaluator evaluator(env);
    for (std::size_t i = 0; i < bindings.children.size(); i += 2) {
      const Form& name = bindings.children[i];
      Entity probe = evaluator.create_class(bindings.children[i + 1]);
      env.bind(name.text, probe, name.where);
      probes.emplace_back(name.text, probe);
    }
    result = eval_assertion(env, cache, body);
  } catch (...) {
    cleanup();
    throw;
  }
  cleanup();
  return result;
}

TestReport run_tests(Environment& env) {
  TestReport report;
  TaxonomyCache cache;
  for (const auto& test : env.tests()) {
    TestResult result{test.name, test.assertions.size(), {}};
    for (std::size_t i = 0; i < test.assertions.size(); ++i) {
      bool ok = false;
      try {
        ok = eval_assertion(env, cache, test.assertions[i]);
      } catch (const Error& e) {
        env.warn(std::string("assertion raised an error: ") + e.what(), e.where() ? e.where() : test.locations[i]);
      }
      if (!ok) result.failures.push_back({test.name, i + 1, test.locations[i]});
    }
    ++report.tests;
    report.assertions += result.assertions;
    report.failures.insert(report.failures.end(), result.failures.begin(), result.failures.end());
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string format_tap(const TestReport& report) {
  std::string out = "1.." + std::to_string(report.tests) + "\n";
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& r = report.results[i];
    if (r.failures.empty()) {
      out += "ok " + std::to_string(i + 1) + " " + r.name + "\n";
      continue;
    }
    out += "not ok " + std::to_string(i + 1) + " " + r.name + " (";
    for (std::size_t j = 0; j < r.failures.size(); ++j) {
      if (j) out += "; ";
      out += "assertion " + std::to_string(r.failures[j].assertion) + " at " + line_ref(r.failures[j].where);
    }
    out += ")\n";
  }
  out += "# tests " + std::to_string(report.tests) + ", assertions " + std::to_string(report.assertions) +
         ", failures " + std::to_string(report.failures.size()) + "\n";
  return out;
}

}  // namespace ontoforge::testkit
