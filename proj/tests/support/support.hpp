#pragma once

#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>

#include "ontoforge/model.hpp"

namespace testsupport {

inline const std::filesystem::path kSourceDir = ONTOFORGE_SOURCE_DIR;
inline const std::filesystem::path kPizzaRoot = kSourceDir / "samples" / "pizza";
inline const std::filesystem::path kSuiteRoot = kSourceDir / "tests" / "data" / "suite";

/// Naive completion over the subexpressions of the ontology, without
/// normalization or indexing. Slow and simple on purpose.
struct OracleResult {
  std::set<std::string> unsatisfiable;                     // named class IRIs
  std::map<std::string, std::set<std::string>> subsumers;  // named -> named (incl. self), owl:Thing omitted
};

OracleResult oracle_classify(const ontoforge::Ontology& ontology);

struct RandomShape {
  int classes = 12;
  int roles = 3;
  int axioms = 25;
};

/// EL⊥ content only: And, Some, Thing, Nothing, named classes;
/// SubClassOf, EquivalentClasses, DisjointClasses.
ontoforge::Ontology random_el_ontology(std::mt19937& rng, RandomShape shape);

/// Every axiom and expression kind of the model, with awkward literal text.
ontoforge::Ontology random_ontology(std::mt19937& rng, RandomShape shape);

/// Temporary directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Text of a layered class forest: `count` classes over `depth` layers, one
/// label each, in functional syntax.
std::string synthetic_forest(int count, int depth, unsigned seed);

}  // namespace testsupport
