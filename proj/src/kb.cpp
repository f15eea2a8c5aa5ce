#include "dlq/kb.hpp"

namespace dlq {

RoleAssertion role_assertion(const Iri& a, const Role& r, const Iri& b) {
  if (r.is_inverse()) return RoleAssertion{b, r.name(), a};
  return RoleAssertion{a, r.name(), b};
}

bool is_tbox_axiom(const Axiom& ax) {
  return std::holds_alternative<SubClassOf>(ax) || std::holds_alternative<EquivalentTo>(ax);
}

void KnowledgeBase::add(Axiom ax) {
  if (is_tbox_axiom(ax))
    tbox.push_back(std::move(ax));
  else
    abox.push_back(std::move(ax));
}

KnowledgeBase KnowledgeBase::with(Axiom ax) const {
  KnowledgeBase copy = *this;
  copy.add(std::move(ax));
  return copy;
}

KnowledgeBase KnowledgeBase::tbox_only() const {
  KnowledgeBase copy;
  copy.tbox = tbox;
  copy.prefixes = prefixes;
  return copy;
}

void Signature::merge(const Signature& other) {
  atomic_concepts.insert(other.atomic_concepts.begin(), other.atomic_concepts.end());
  atomic_roles.insert(other.atomic_roles.begin(), other.atomic_roles.end());
  objects.insert(other.objects.begin(), other.objects.end());
}

namespace {

void collect(const Concept& c, Signature& sig) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
      return;
    case K::Atomic:
      sig.atomic_concepts.insert(c.name());
      return;
    case K::Nominal:
      sig.objects.insert(c.name());
      return;
    case K::Not:
      collect(c.operand(), sig);
      return;
    case K::And:
    case K::Or:
      collect(c.lhs(), sig);
      collect(c.rhs(), sig);
      return;
    case K::Exists:
    case K::Forall:
      sig.atomic_roles.insert(c.role().name());
      collect(c.operand(), sig);
      return;
  }
}

}  // namespace

Signature signature(const Concept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

Signature signature(const Axiom& ax) {
  Signature sig;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SubClassOf>) {
          collect(a.sub, sig);
          collect(a.super, sig);
        } else if constexpr (std::is_same_v<T, EquivalentTo>) {
          collect(a.lhs, sig);
          collect(a.rhs, sig);
        } else if constexpr (std::is_same_v<T, ConceptAssertion>) {
          sig.objects.insert(a.object);
          collect(a.type, sig);
        } else {
          sig.objects.insert(a.subject);
          sig.objects.insert(a.object);
          sig.atomic_roles.insert(a.role);
        }
      },
      ax);
  return sig;
}

Signature signature(const KnowledgeBase& k) {
  Signature sig;
  for (const auto& ax : k.tbox) sig.merge(signature(ax));
  for (const auto& ax : k.abox) sig.merge(signature(ax));
  return sig;
}

}  // namespace dlq
