#include "ontoforge/reasoner.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

namespace ontoforge::el {

namespace {

const std::string kThingIri = std::string(vocab::kOwl) + "Thing";
const std::string kNothingIri = std::string(vocab::kOwl) + "Nothing";

using CE = ClassExpression;
using K = ClassExpression::Kind;

bool is_el_right(const CE& e) {
  switch (e.kind()) {
    case K::Thing:
    case K::Nothing:
    case K::Named:
      return true;
    case K::And:
      return std::all_of(e.operands().begin(), e.operands().end(), is_el_right);
    case K::Some:
      return is_el_right(e.filler());
    default:
      return false;
  }
}

constexpr std::size_t kMaxDisjuncts = 256;

// Disjunctive normal form of an expression whose only non-EL constructor is
// Or. Each returned disjunct is Or-free.
std::optional<std::vector<CE>> dnf(const CE& e) {
  switch (e.kind()) {
    case K::Thing:
    case K::Nothing:
    case K::Named:
      return std::vector<CE>{e};
    case K::Or: {
      std::vector<CE> out;
      for (const auto& op : e.operands()) {
        auto d = dnf(op);
        if (!d) return std::nullopt;
        out.insert(out.end(), d->begin(), d->end());
        if (out.size() > kMaxDisjuncts) return std::nullopt;
      }
      return out;
    }
    case K::And: {
      std::vector<std::vector<CE>> partial{{}};
      for (const auto& op : e.operands()) {
        auto d = dnf(op);
        if (!d) return std::nullopt;
        std::vector<std::vector<CE>> next;
        for (const auto& prefix : partial) {
          for (const auto& choice : *d) {
            next.push_back(prefix);
            next.back().push_back(choice);
          }
        }
        if (next.size() > kMaxDisjuncts) return std::nullopt;
        partial = std::move(next);
      }
      std::vector<CE> out;
      for (auto& ops : partial) out.push_back(CE::intersection_of(std::move(ops)));
      return out;
    }
    case K::Some: {
      auto d = dnf(e.filler());
      if (!d) return std::nullopt;
      std::vector<CE> out;
      for (auto& f : *d) out.push_back(CE::some(e.entity(), std::move(f)));
      return out;
    }
    default:
      return std::nullopt;
  }
}

class Normalizer {
 public:
  Normalizer() {
    out_.atoms = {kThingIri, kNothingIri};
  }

  void declare_classes(const Ontology& ont) {
    for (const auto& e : ont.declared_entities()) {
      if (e.kind == EntityKind::Class) class_atom(e);
      if (e.kind == EntityKind::ObjectProperty) role(e);
    }
  }

  void process(const Axiom& axiom) {
    if (!seen_.insert(axiom).second) return;
    std::visit([&](const auto& a) { handle(axiom, a); }, axiom);
  }

  Normalized finish() { return std::move(out_); }

 private:
  template <typename T>
  void handle(const Axiom&, const T&) {}

  void handle(const Axiom& axiom, const SubClassOf& a) { subsumption(axiom, a.sub, a.sup); }

  void handle(const Axiom& axiom, const EquivalentClasses& a) {
    const auto& first = a.members.front();
    for (std::size_t i = 1; i < a.members.size(); ++i) {
      subsumption(axiom, first, a.members[i]);
      subsumption(axiom, a.members[i], first);
    }
  }

  void handle(const Axiom&, const DisjointClasses& a) {
    for (std::size_t i = 0; i < a.members.size(); ++i) {
      for (std::size_t j = i + 1; j < a.members.size(); ++j) {
        emit({NormalAxiom::Shape::Conj, class_atom(a.members[i]), class_atom(a.members[j]), 0, kNothing});
      }
    }
  }

  void handle(const Axiom& axiom, const SubObjectPropertyOf&) { skip(axiom, "sub-property axiom"); }
  void handle(const Axiom& axiom, const ObjectPropertyDomain&) { skip(axiom, "property domain"); }
  void handle(const Axiom& axiom, const ObjectPropertyRange&) { skip(axiom, "property range"); }
  void handle(const Axiom& axiom, const FunctionalObjectProperty&) { skip(axiom, "functional property"); }
  void handle(const Axiom& axiom, const TransitiveObjectProperty&) { skip(axiom, "transitive property"); }

  void skip(const Axiom& axiom, std::string reason) {
    out_.skipped.push_back({axiom, std::move(reason)});
  }

  void subsumption(const Axiom& axiom, const CE& sub, const CE& sup) {
    if (!is_el_right(sup)) {
      skip(axiom, "superclass expression outside EL");
      return;
    }
    auto disjuncts = dnf(sub);
    if (!disjuncts) {
      skip(axiom, "subclass expression outside EL");
      return;
    }
    for (const auto& d : *disjuncts) emit(d, sup);
  }

  void emit(const CE& lhs, const CE& rhs) {
    if (rhs.kind() == K::Thing) return;
    if (rhs.is_atomic()) {
      left(lhs, atom(rhs));
    } else {
      right(left_atom(lhs), rhs);
    }
  }

  void right(AtomId x, const CE& rhs) {
    switch (rhs.kind()) {
      case K::Thing:
        return;
      case K::Nothing:
      case K::Named:
        emit({NormalAxiom::Shape::Sub, x, 0, 0, atom(rhs)});
        return;
      case K::And:
        for (const auto& op : rhs.operands()) right(x, op);
        return;
      case K::Some:
        emit({NormalAxiom::Shape::Exists, x, 0, role(rhs.entity()), right_atom(rhs.filler())});
        return;
      default:
        return;
    }
  }

  AtomId right_atom(const CE& e) {
    if (e.is_atomic()) return atom(e);
    AtomId a = aux();
    right(a, e);
    return a;
  }

  AtomId left_atom(const CE& e) {
    if (e.is_atomic()) return atom(e);
    AtomId a = aux();
    left(e, a);
    return a;
  }

  void left(const CE& lhs, AtomId b) {
    switch (lhs.kind()) {
      case K::Nothing:
      case K::Thing:
      case K::Named:
        emit({NormalAxiom::Shape::Sub, atom(lhs), 0, 0, b});
        return;
      case K::Some: {
        AtomId f = left_atom(lhs.filler());
        emit({NormalAxiom::Shape::ExistsLeft, f, 0, role(lhs.entity()), b});
        return;
      }
      case K::And: {
        std::vector<AtomId> ops;
        for (const auto& op : lhs.operands()) ops.push_back(left_atom(op));
        AtomId current = ops.front();
        for (std::size_t i = 1; i + 1 < ops.size(); ++i) {
          AtomId next = aux();
          emit({NormalAxiom::Shape::Conj, current, ops[i], 0, next});
          current = next;
        }
        emit({NormalAxiom::Shape::Conj, current, ops.back(), 0, b});
        return;
      }
      default:
        return;
    }
  }

  void emit(NormalAxiom n) { out_.axioms.push_back(n); }

  AtomId atom(const CE& e) {
    if (e.kind() == K::Thing) return kThing;
    if (e.kind() == K::Nothing) return kNothing;
    return class_atom(e.entity());
  }

  AtomId class_atom(const Entity& cls) {
    const auto& iri = cls.iri.str();
    if (iri == kThingIri) return kThing;
    if (iri == kNothingIri) return kNothing;
    auto [it, inserted] = classes_.try_emplace(iri, static_cast<AtomId>(out_.atoms.size()));
    if (inserted) {
      if (!aux_.empty()) {
        throw Error(ErrorCode::InvalidAxiom, "class '" + iri + "' is not declared in the classified ontologies");
      }
      out_.atoms.push_back(iri);
      out_.classes.push_back(cls);
    }
    return it->second;
  }

  RoleId role(const Entity& prop) {
    auto [it, inserted] = roles_.try_emplace(prop.iri.str(), static_cast<RoleId>(out_.roles.size()));
    if (inserted) out_.roles.push_back(prop);
    return it->second;
  }

  AtomId aux() {
    AtomId id = static_cast<AtomId>(out_.atoms.size());
    out_.atoms.push_back("_aux" + std::to_string(aux_.size()));
    aux_.push_back(id);
    return id;
  }

  Normalized out_;
  std::unordered_map<std::string, AtomId> classes_;
  std::unordered_map<std::string, RoleId> roles_;
  std::vector<AtomId> aux_;
  std::unordered_set<Axiom, AxiomHash> seen_;
};

}  // namespace

Normalized normalize(std::span<const Ontology* const> ontologies) {
  Normalizer n;
  for (const Ontology* ont : ontologies) n.declare_classes(*ont);
  for (const Ontology* ont : ontologies) {
    for (const auto& axiom : ont->axioms()) n.process(axiom);
  }
  return n.finish();
}

Normalized normalize(const Ontology& ontology) {
  const Ontology* list[] = {&ontology};
  return normalize(list);
}

// ---------------------------------------------------------------------------
// saturation

namespace {

class Saturator {
 public:
  Saturator(std::size_t atoms, std::size_t roles, std::span<const NormalAxiom> axioms)
      : atoms_(atoms), roles_(roles), sub_(atoms), conj_(atoms), exists_(atoms), subsumers_(atoms),
        preds_(atoms) {
    if (atoms >= (1u << 24) || roles >= (1u << 16)) {
      throw Error(ErrorCode::InvalidAxiom, "ontology too large to classify");
    }
    for (const auto& n : axioms) {
      switch (n.shape) {
        case NormalAxiom::Shape::Sub:
          sub_[n.lhs].push_back(n.rhs);
          break;
        case NormalAxiom::Shape::Conj:
          conj_[n.lhs].push_back({n.lhs2, n.rhs});
          if (n.lhs2 != n.lhs) conj_[n.lhs2].push_back({n.lhs, n.rhs});
          break;
        case NormalAxiom::Shape::Exists:
          exists_[n.lhs].push_back({n.role, n.rhs});
          break;
        case NormalAxiom::Shape::ExistsLeft:
          exists_left_[key(n.role, n.lhs)].push_back(n.rhs);
          break;
      }
    }
  }

  Saturation run() {
    for (AtomId c = 0; c < atoms_; ++c) {
      push(c, c);
      push(c, kThing);
    }
    drain();
    Saturation out;
    out.subsumers = std::move(subsumers_);
    for (auto& s : out.subsumers) std::sort(s.begin(), s.end());
    out.edges.resize(roles_);
    for (AtomId b = 0; b < atoms_; ++b) {
      for (auto [r, a] : preds_[b]) out.edges[r].push_back({a, b});
    }
    for (auto& e : out.edges) std::sort(e.begin(), e.end());
    return out;
  }

 private:
  struct Item {
    bool edge;
    RoleId role;
    AtomId a;  // context (or edge source)
    AtomId b;  // subsumer (or edge target)
  };

  static std::uint64_t key(std::uint64_t hi, std::uint64_t lo) { return (hi << 32) | lo; }

  void push(AtomId context, AtomId atom) { queue_.push_back({false, 0, context, atom}); }
  void push_edge(RoleId r, AtomId from, AtomId to) { queue_.push_back({true, r, from, to}); }

  bool in_s(AtomId context, AtomId atom) const { return members_.contains(key(context, atom)); }

  void drain() {
    while (!queue_.empty()) {
      Item item = queue_.back();
      queue_.pop_back();
      if (item.edge) {
        add_edge(item.role, item.a, item.b);
      } else {
        add_subsumer(item.a, item.b);
      }
    }
  }

  void add_subsumer(AtomId c, AtomId x) {
    if (!members_.insert(key(c, x)).second) return;
    subsumers_[c].push_back(x);
    for (AtomId b : sub_[x]) push(c, b);
    for (auto [other, result] : conj_[x]) {
      if (in_s(c, other)) push(c, result);
    }
    for (auto [r, b] : exists_[x]) push_edge(r, c, b);
    for (auto [r, a] : preds_[c]) {
      if (x == kNothing) push(a, kNothing);
      if (auto it = exists_left_.find(key(r, x)); it != exists_left_.end()) {
        for (AtomId d : it->second) push(a, d);
      }
    }
  }

  void add_edge(RoleId r, AtomId a, AtomId b) {
    std::uint64_t k = (static_cast<std::uint64_t>(r) << 48) | (static_cast<std::uint64_t>(a) << 24) | b;
    if (!edges_.insert(k).second) return;
    preds_[b].push_back({r, a});
    for (AtomId x : subsumers_[b]) {
      if (x == kNothing) push(a, kNothing);
      if (auto it = exists_left_.find(key(r, x)); it != exists_left_.end()) {
        for (AtomId d : it->second) push(a, d);
      }
    }
  }

  std::size_t atoms_;
  std::size_t roles_;
  std::vector<std::vector<AtomId>> sub_;
  std::vector<std::vector<std::pair<AtomId, AtomId>>> conj_;
  std::vector<std::vector<std::pair<RoleId, AtomId>>> exists_;
  std::unordered_map<std::uint64_t, std::vector<AtomId>> exists_left_;
  std::vector<std::vector<AtomId>> subsumers_;
  std::vector<std::vector<std::pair<RoleId, AtomId>>> preds_;
  std::unordered_set<std::uint64_t> members_;
  std::unordered_set<std::uint64_t> edges_;
  std::vector<Item> queue_;
};

}  // namespace

Saturation saturate(std::size_t atom_count, std::size_t role_count, std::span<const NormalAxiom> axioms) {
  return Saturator(atom_count, role_count, axioms).run();
}

// ---------------------------------------------------------------------------
// taxonomy

Taxonomy::Taxonomy(Normalized normalized, Saturation saturation)
    : normalized_(std::move(normalized)), saturation_(std::move(saturation)) {
  by_iri_.emplace(kThingIri, kThing);
  by_iri_.emplace(kNothingIri, kNothing);
  for (std::size_t i = 0; i < normalized_.classes.size(); ++i) {
    by_iri_.emplace(normalized_.classes[i].iri.str(), static_cast<AtomId>(i + 2));
  }
  for (std::size_t i = 0; i < normalized_.classes.size(); ++i) {
    if (has(static_cast<AtomId>(i + 2), kNothing)) unsatisfiable_.push_back(normalized_.classes[i]);
  }
  std::sort(unsatisfiable_.begin(), unsatisfiable_.end(),
            [](const Entity& a, const Entity& b) { return a.iri < b.iri; });
}

bool Taxonomy::knows(const Entity& cls) const {
  return cls.kind == EntityKind::Class && by_iri_.contains(cls.iri.str());
}

AtomId Taxonomy::atom_of(const Entity& cls) const {
  auto it = by_iri_.find(cls.iri.str());
  if (cls.kind != EntityKind::Class || it == by_iri_.end()) {
    throw Error(ErrorCode::UnknownEntity, "'" + cls.iri.str() + "' is not a class of the classified ontology");
  }
  return it->second;
}

bool Taxonomy::has(AtomId context, AtomId atom) const {
  const auto& s = saturation_.subsumers[context];
  return std::binary_search(s.begin(), s.end(), atom);
}

std::vector<Entity> Taxonomy::subsumers(const Entity& cls) const {
  std::vector<Entity> out;
  for (AtomId a : saturation_.subsumers[atom_of(cls)]) {
    if (a == kThing || a == kNothing) {
      out.push_back({EntityKind::Class, Iri(a == kThing ? kThingIri : kNothingIri)});
    } else if (a < normalized_.classes.size() + 2) {
      out.push_back(normalized_.classes[a - 2]);
    }
  }
  return out;
}

bool Taxonomy::is_superclass(const Entity& sub, const Entity& sup, bool reflexive) const {
  AtomId a = atom_of(sub);
  AtomId b = atom_of(sup);
  if (a == b) return reflexive;
  if (has(a, kNothing)) return true;
  return has(a, b);
}

bool Taxonomy::is_unsatisfiable(const Entity& cls) const { return has(atom_of(cls), kNothing); }

CoherenceReport Taxonomy::coherence_report() const {
  return {unsatisfiable_.empty(), unsatisfiable_};
}

std::vector<Entity> Taxonomy::direct_superclasses(const Entity& cls) const {
  AtomId c = atom_of(cls);
  const AtomId named_end = static_cast<AtomId>(normalized_.classes.size() + 2);
  std::vector<AtomId> strict;
  for (AtomId a : saturation_.subsumers[c]) {
    if (a < 2 || a >= named_end || a == c) continue;
    if (has(a, c)) continue;  // equivalent
    strict.push_back(a);
  }
  std::vector<Entity> out;
  for (AtomId d : strict) {
    bool covered = std::any_of(strict.begin(), strict.end(), [&](AtomId e) {
      return e != d && has(e, d) && !has(d, e);
    });
    if (!covered) out.push_back(normalized_.classes[d - 2]);
  }
  std::sort(out.begin(), out.end(), [](const Entity& a, const Entity& b) { return a.iri < b.iri; });
  return out;
}

Taxonomy classify(std::span<const Ontology* const> ontologies) {
  auto normalized = normalize(ontologies);
  auto saturation = saturate(normalized.atoms.size(), normalized.roles.size(), normalized.axioms);
  return Taxonomy(std::move(normalized), std::move(saturation));
}

Taxonomy classify(const Ontology& ontology) {
  const Ontology* list[] = {&ontology};
  return classify(list);
}

}  // namespace ontoforge::el
