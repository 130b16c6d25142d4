#pragma once

// EL⊥ classification: normalization into four axiom shapes followed by a
// worklist saturation of subsumer sets.

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ontoforge/model.hpp"

namespace ontoforge::el {

using AtomId = std::uint32_t;
using RoleId = std::uint32_t;

inline constexpr AtomId kThing = 0;
inline constexpr AtomId kNothing = 1;

struct NormalAxiom {
  enum class Shape : std::uint8_t {
    Sub,         // lhs ⊑ rhs
    Conj,        // lhs ⊓ lhs2 ⊑ rhs
    Exists,      // lhs ⊑ ∃role.rhs
    ExistsLeft,  // ∃role.lhs ⊑ rhs
  };

  Shape shape = Shape::Sub;
  AtomId lhs = 0;
  AtomId lhs2 = 0;
  RoleId role = 0;
  AtomId rhs = 0;

  auto operator<=>(const NormalAxiom&) const = default;
};

struct SkippedAxiom {
  Axiom axiom;
  std::string reason;
};

struct Normalized {
  /// Atom names: owl:Thing, owl:Nothing, named class IRIs, then `_aux<N>`.
  std::vector<std::string> atoms;
  std::vector<Entity> classes;  // named classes; classes[i] is atom i + 2
  std::vector<Entity> roles;
  std::vector<NormalAxiom> axioms;
  std::vector<SkippedAxiom> skipped;
};

/// Normalizes the union of the given ontologies. Classes are numbered in
/// declaration order across the list, first occurrence wins.
Normalized normalize(std::span<const Ontology* const> ontologies);
Normalized normalize(const Ontology& ontology);

struct Saturation {
  /// Sorted subsumer set per atom.
  std::vector<std::vector<AtomId>> subsumers;
  /// Sorted (from, to) edges per role.
  std::vector<std::vector<std::pair<AtomId, AtomId>>> edges;
};

/// Least fixpoint of the completion rules. The result does not depend on the
/// order of `axioms`.
Saturation saturate(std::size_t atom_count, std::size_t role_count,
                    std::span<const NormalAxiom> axioms);

struct CoherenceReport {
  bool coherent = true;
  std::vector<Entity> unsatisfiable;  // sorted by IRI
};

class Taxonomy {
 public:
  Taxonomy(Normalized normalized, Saturation saturation);

  const std::vector<Entity>& classes() const { return normalized_.classes; }
  const Normalized& normalized() const { return normalized_; }
  const Saturation& saturation() const { return saturation_; }
  const std::vector<SkippedAxiom>& skipped() const { return normalized_.skipped; }

  bool knows(const Entity& cls) const;
  /// Subsumers of a named class, as entities (owl:Thing and owl:Nothing
  /// included when present). UnknownEntity for classes outside the signature.
  std::vector<Entity> subsumers(const Entity& cls) const;
  /// True when `sup` subsumes `sub`. An unsatisfiable `sub` is subsumed by
  /// every class. With reflexive=false a class is not its own superclass.
  bool is_superclass(const Entity& sub, const Entity& sup, bool reflexive = false) const;
  bool is_unsatisfiable(const Entity& cls) const;
  const std::vector<Entity>& unsatisfiable() const { return unsatisfiable_; }
  CoherenceReport coherence_report() const;
  /// Transitive reduction of the strict named subsumers (equivalents and
  /// owl:Thing excluded), sorted by IRI.
  std::vector<Entity> direct_superclasses(const Entity& cls) const;

 private:
  AtomId atom_of(const Entity& cls) const;
  bool has(AtomId context, AtomId atom) const;

  Normalized normalized_;
  Saturation saturation_;
  std::unordered_map<std::string, AtomId> by_iri_;
  std::vector<Entity> unsatisfiable_;
};

/// Normalize and saturate the given ontologies.
Taxonomy classify(std::span<const Ontology* const> ontologies);
Taxonomy classify(const Ontology& ontology);

}  // namespace ontoforge::el
