#include "dlq/concept.hpp"

#include <optional>
#include <stdexcept>

namespace dlq {

struct Concept::Node {
  Kind kind;
  std::optional<Iri> name;
  std::optional<Role> role;
  std::optional<Concept> a;
  std::optional<Concept> b;
};

Concept Concept::top() {
  static const Concept t(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}, {}}));
  return t;
}

Concept Concept::bottom() {
  static const Concept b(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}, {}}));
  return b;
}

Concept Concept::atomic(Iri name) {
  return Concept(std::make_shared<const Node>(Node{Kind::Atomic, std::move(name), {}, {}, {}}));
}

Concept Concept::nominal(Iri object) {
  return Concept(std::make_shared<const Node>(Node{Kind::Nominal, std::move(object), {}, {}, {}}));
}

Concept Concept::negation(Concept operand) {
  return Concept(std::make_shared<const Node>(Node{Kind::Not, {}, {}, std::move(operand), {}}));
}

Concept Concept::conjunction(Concept lhs, Concept rhs) {
  return Concept(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(lhs), std::move(rhs)}));
}

Concept Concept::disjunction(Concept lhs, Concept rhs) {
  return Concept(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(lhs), std::move(rhs)}));
}

Concept Concept::some(Role role, Concept filler) {
  return Concept(std::make_shared<const Node>(Node{Kind::Exists, {}, std::move(role), std::move(filler), {}}));
}

Concept Concept::only(Role role, Concept filler) {
  return Concept(std::make_shared<const Node>(Node{Kind::Forall, {}, std::move(role), std::move(filler), {}}));
}

Concept::Kind Concept::kind() const { return node_->kind; }

const Iri& Concept::name() const {
  if (!node_->name) throw std::logic_error("concept has no name");
  return *node_->name;
}

const Role& Concept::role() const {
  if (!node_->role) throw std::logic_error("concept has no role");
  return *node_->role;
}

const Concept& Concept::operand() const {
  if (node_->kind != Kind::Not && node_->kind != Kind::Exists && node_->kind != Kind::Forall)
    throw std::logic_error("concept has no single operand");
  return *node_->a;
}

const Concept& Concept::lhs() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or) throw std::logic_error("concept is not binary");
  return *node_->a;
}

const Concept& Concept::rhs() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or) throw std::logic_error("concept is not binary");
  return *node_->b;
}

std::strong_ordering operator<=>(const Concept& x, const Concept& y) {
  if (x.node_ == y.node_) return std::strong_ordering::equal;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.role <=> b.role; c != 0) return c;
  if (a.a.has_value()) {
    if (auto c = *a.a <=> *b.a; c != 0) return c;
  }
  if (a.b.has_value()) {
    if (auto c = *a.b <=> *b.b; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Concept& a, const Concept& b) { return (a <=> b) == 0; }

namespace {

Concept negated_nnf(const Concept& c);

Concept to_nnf(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
    case K::Bottom:
    case K::Atomic:
    case K::Nominal:
      return c;
    case K::Not:
      return negated_nnf(c.operand());
    case K::And:
      return Concept::conjunction(to_nnf(c.lhs()), to_nnf(c.rhs()));
    case K::Or:
      return Concept::disjunction(to_nnf(c.lhs()), to_nnf(c.rhs()));
    case K::Exists:
      return Concept::some(c.role(), to_nnf(c.operand()));
    case K::Forall:
      return Concept::only(c.role(), to_nnf(c.operand()));
  }
  throw std::logic_error("unreachable");
}

// nnf(not c)
Concept negated_nnf(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
      return Concept::bottom();
    case K::Bottom:
      return Concept::top();
    case K::Atomic:
    case K::Nominal:
      return Concept::negation(c);
    case K::Not:
      return to_nnf(c.operand());
    case K::And:
      return Concept::disjunction(negated_nnf(c.lhs()), negated_nnf(c.rhs()));
    case K::Or:
      return Concept::conjunction(negated_nnf(c.lhs()), negated_nnf(c.rhs()));
    case K::Exists:
      return Concept::only(c.role(), negated_nnf(c.operand()));
    case K::Forall:
      return Concept::some(c.role(), negated_nnf(c.operand()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Concept nnf(const Concept& c) { return to_nnf(c); }

std::size_t concept_size(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Not:
    case K::Exists:
    case K::Forall:
      return 1 + concept_size(c.operand());
    case K::And:
    case K::Or:
      return 1 + concept_size(c.lhs()) + concept_size(c.rhs());
    default:
      return 1;
  }
}

}  // namespace dlq
