#pragma once

#include <set>
#include <variant>
#include <vector>

#include "dlq/concept.hpp"
#include "dlq/iri.hpp"

namespace dlq {

struct SubClassOf {
  Concept sub;
  Concept super;
  friend bool operator==(const SubClassOf&, const SubClassOf&) = default;
};

struct EquivalentTo {
  Concept lhs;
  Concept rhs;
  friend bool operator==(const EquivalentTo&, const EquivalentTo&) = default;
};

struct ConceptAssertion {
  Iri object;
  Concept type;
  friend bool operator==(const ConceptAssertion&, const ConceptAssertion&) = default;
};

// Always over an atomic role; see role_assertion() for inverse roles.
struct RoleAssertion {
  Iri subject;
  Iri role;
  Iri object;
  friend bool operator==(const RoleAssertion&, const RoleAssertion&) = default;
};

using Axiom = std::variant<SubClassOf, EquivalentTo, ConceptAssertion, RoleAssertion>;

// (a, b) : R, with (a, b) : R- stored as (b, a) : R.
RoleAssertion role_assertion(const Iri& a, const Role& r, const Iri& b);

bool is_tbox_axiom(const Axiom& ax);

struct KnowledgeBase {
  std::vector<Axiom> tbox;
  std::vector<Axiom> abox;
  PrefixTable prefixes;

  // Appends to the T-Box or A-Box depending on the axiom kind.
  void add(Axiom ax);
  KnowledgeBase with(Axiom ax) const;
  // Copy without assertional axioms.
  KnowledgeBase tbox_only() const;

  friend bool operator==(const KnowledgeBase&, const KnowledgeBase&) = default;
};

struct Signature {
  std::set<Iri> atomic_concepts;
  std::set<Iri> atomic_roles;
  std::set<Iri> objects;

  void merge(const Signature& other);
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const KnowledgeBase& k);
Signature signature(const Concept& c);
Signature signature(const Axiom& ax);

}  // namespace dlq
