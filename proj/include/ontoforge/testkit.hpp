#pragma once

// Ontology unit tests: deftest / is / isuperclass? / coherent? and probe
// entities that are removed again after the assertion.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ontoforge/environment.hpp"
#include "ontoforge/reasoner.hpp"

namespace ontoforge::testkit {

/// Classification of the namespace's imports closure, recomputed only when
/// the namespace ontology has changed since the last request.
class TaxonomyCache {
 public:
  const el::Taxonomy& get(const Environment& env);

  struct Snapshot {
    std::shared_ptr<const el::Taxonomy> taxonomy;
    std::uint64_t revision = 0;
  };
  Snapshot snapshot() const { return {taxonomy_, revision_}; }
  /// Reinstates a taxonomy computed for content that is equal to the
  /// current content under a newer revision number.
  void restore(const Snapshot& snapshot, std::uint64_t current_revision);

  std::size_t computations() const { return computations_; }

 private:
  std::shared_ptr<const el::Taxonomy> taxonomy_;
  std::uint64_t revision_ = 0;
  std::size_t computations_ = 0;
};

/// Throws TestSyntax unless `form` is a well-formed assertion.
void validate_assertion(const Form& form);

bool eval_assertion(Environment& env, TaxonomyCache& cache, const Form& form);

/// `bindings` is the bracket `[name (owlclass "text" ...) ...]`. The ontology
/// is returned to its previous axiom set even when `body` throws.
bool run_probe_block(Environment& env, TaxonomyCache& cache, const Form& bindings,
                     const Form& body);

struct Failure {
  std::string test;
  std::size_t assertion = 0;  // 1-based within the test
  SourceLocation where;
};

struct TestResult {
  std::string name;
  std::size_t assertions = 0;
  std::vector<Failure> failures;
};

struct TestReport {
  std::size_t tests = 0;
  std::size_t assertions = 0;
  std::vector<Failure> failures;
  std::vector<TestResult> results;
};

TestReport run_tests(Environment& env);

/// `1..N`, then `ok N name` / `not ok N name (assertion K at file:line)`.
std::string format_tap(const TestReport& report);

}  // namespace ontoforge::testkit
