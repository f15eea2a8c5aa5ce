#pragma once

#include <compare>
#include <memory>

#include "dlq/iri.hpp"

namespace dlq {

// An atomic role or the inverse of one. Double inversion is normalized away
// at construction, so role equality is syntactic.
class Role {
 public:
  static Role named(Iri name) { return Role(std::move(name), false); }
  static Role inverse_of(Iri name) { return Role(std::move(name), true); }

  const Iri& name() const { return name_; }
  bool is_inverse() const { return inverse_; }
  Role inverse() const { return Role(name_, !inverse_); }

  friend bool operator==(const Role&, const Role&) = default;
  friend std::strong_ordering operator<=>(const Role&, const Role&) = default;

 private:
  Role(Iri name, bool inverse) : name_(std::move(name)), inverse_(inverse) {}

  Iri name_;
  bool inverse_;
};

// Immutable ALCOI concept expression. Copies share structure.
class Concept {
 public:
  enum class Kind { Top, Bottom, Atomic, Nominal, Not, And, Or, Exists, Forall };

  static Concept top();
  static Concept bottom();
  static Concept atomic(Iri name);
  static Concept nominal(Iri object);
  static Concept negation(Concept operand);
  static Concept conjunction(Concept lhs, Concept rhs);
  static Concept disjunction(Concept lhs, Concept rhs);
  static Concept some(Role role, Concept filler);
  static Concept only(Role role, Concept filler);

  Kind kind() const;
  // Atomic concept name or the nominal's object.
  const Iri& name() const;
  // Exists / Forall role.
  const Role& role() const;
  // Not operand, or Exists / Forall filler.
  const Concept& operand() const;
  // And / Or operands.
  const Concept& lhs() const;
  const Concept& rhs() const;

  bool is(Kind k) const { return kind() == k; }

  // Structural comparison: no commutativity or associativity normalization.
  friend bool operator==(const Concept& a, const Concept& b);
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b);

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline bool structurally_equal(const Concept& a, const Concept& b) { return a == b; }

// Negation normal form: negation occurs only in front of atomic concepts and
// nominals. Top/Bottom under negation are folded.
Concept nnf(const Concept& c);

// Number of constructors in the tree.
std::size_t concept_size(const Concept& c);

}  // namespace dlq
