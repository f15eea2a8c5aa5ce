#include "dlq/query_typer.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

#include "dlq/kb_text.hpp"

namespace dlq {

struct InfConcept::Node {
  Kind kind;
  std::optional<Concept> leaf;
  std::optional<Role> role;
  std::optional<Var> target;
  std::optional<InfConcept> lhs, rhs;
};

InfConcept InfConcept::leaf(Concept c) {
  return InfConcept(std::make_shared<const Node>(Node{Kind::Leaf, std::move(c), std::nullopt, std::nullopt, std::nullopt, std::nullopt}));
}

InfConcept InfConcept::ref(Role r, Var target) {
  return InfConcept(std::make_shared<const Node>(Node{Kind::Ref, std::nullopt, std::move(r), std::move(target), std::nullopt, std::nullopt}));
}

InfConcept InfConcept::conj(InfConcept a, InfConcept b) {
  return InfConcept(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::nullopt, std::nullopt, std::move(a), std::move(b)}));
}

InfConcept InfConcept::disj(InfConcept a, InfConcept b) {
  return InfConcept(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::nullopt, std::nullopt, std::move(a), std::move(b)}));
}

InfConcept::Kind InfConcept::kind() const { return node_->kind; }

const Concept& InfConcept::concept_leaf() const {
  if (!node_->leaf) throw std::logic_error("not a concept leaf");
  return *node_->leaf;
}

const Role& InfConcept::role() const {
  if (!node_->role) throw std::logic_error("not a reference");
  return *node_->role;
}

const Var& InfConcept::target() const {
  if (!node_->target) throw std::logic_error("not a reference");
  return *node_->target;
}

const InfConcept& InfConcept::lhs() const {
  if (!node_->lhs) throw std::logic_error("not a binary concept");
  return *node_->lhs;
}

const InfConcept& InfConcept::rhs() const {
  if (!node_->rhs) throw std::logic_error("not a binary concept");
  return *node_->rhs;
}

bool InfConcept::has_refs() const {
  switch (kind()) {
    case Kind::Leaf:
      return false;
    case Kind::Ref:
      return true;
    default:
      return lhs().has_refs() || rhs().has_refs();
  }
}

bool operator==(const InfConcept& a, const InfConcept& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  using K = InfConcept::Kind;
  switch (a.kind()) {
    case K::Leaf:
      return a.concept_leaf() == b.concept_leaf();
    case K::Ref:
      return a.role() == b.role() && a.target() == b.target();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

Var splice_var(const SpliceId& s) { return Var{"$" + s.name}; }

namespace {

std::optional<Var> as_var(const PatternElem& e) {
  if (const auto* v = std::get_if<Var>(&e)) return *v;
  if (const auto* s = std::get_if<SpliceId>(&e)) return splice_var(*s);
  return std::nullopt;
}

void add_conj(Phi& phi, const Var& v, InfConcept c) {
  auto it = phi.find(v);
  if (it == phi.end())
    phi.emplace(v, std::move(c));
  else
    it->second = InfConcept::conj(it->second, std::move(c));
}

PatternElem elem_to_var(const PatternElem& e) {
  if (const auto* s = std::get_if<SpliceId>(&e)) return splice_var(*s);
  return e;
}

Concept expand(const Phi& phi, const InfConcept& c, std::vector<Var>& path) {
  using K = InfConcept::Kind;
  switch (c.kind()) {
    case K::Leaf:
      return c.concept_leaf();
    case K::And:
      return Concept::conjunction(expand(phi, c.lhs(), path), expand(phi, c.rhs(), path));
    case K::Or:
      return Concept::disjunction(expand(phi, c.lhs(), path), expand(phi, c.rhs(), path));
    case K::Ref: {
      const Var& w = c.target();
      auto it = phi.find(w);
      if (it == phi.end() || std::find(path.begin(), path.end(), w) != path.end())
        return Concept::some(c.role(), Concept::top());
      path.push_back(w);
      Concept inner = expand(phi, it->second, path);
      path.pop_back();
      return Concept::some(c.role(), inner);
    }
  }
  throw std::logic_error("unhandled inferred concept kind");
}

}  // namespace

Phi infer_pattern(const QueryPattern& p) {
  Phi phi;
  if (const auto* cp = std::get_if<ConceptPattern>(&p)) {
    if (auto x = as_var(cp->subject)) phi.emplace(*x, InfConcept::leaf(cp->type));
    return phi;
  }
  const auto& rp = std::get<RolePattern>(p);
  auto x = as_var(rp.subject), y = as_var(rp.object);
  if (x && y) {
    add_conj(phi, *x, InfConcept::ref(rp.role, *y));
    add_conj(phi, *y, InfConcept::ref(rp.role.inverse(), *x));
  } else if (x) {
    phi.emplace(*x, InfConcept::leaf(Concept::some(rp.role, Concept::nominal(std::get<Iri>(rp.object)))));
  } else if (y) {
    phi.emplace(*y, InfConcept::leaf(Concept::some(rp.role.inverse(), Concept::nominal(std::get<Iri>(rp.subject)))));
  }
  return phi;
}

Phi combine(const Phi& p1, const Phi& p2, Connective c) {
  Phi out;
  for (const auto& [v, c1] : p1) {
    auto it = p2.find(v);
    if (it == p2.end())
      out.emplace(v, c1);
    else
      out.emplace(v, c == Connective::And ? InfConcept::conj(c1, it->second) : InfConcept::disj(c1, it->second));
  }
  for (const auto& [v, c2] : p2)
    if (!p1.count(v)) out.emplace(v, c2);
  return out;
}

Phi infer_query(const Query& q) {
  using K = Query::Kind;
  switch (q.kind()) {
    case K::Pattern:
      return infer_pattern(q.as_pattern());
    case K::Join:
      return combine(infer_query(q.lhs()), infer_query(q.rhs()), Connective::And);
    case K::Union:
      return combine(infer_query(q.lhs()), infer_query(q.rhs()), Connective::Or);
    case K::Minus:
      return infer_query(q.lhs());
    case K::Optional: {
      Phi p1 = infer_query(q.lhs());
      return combine(p1, combine(p1, infer_query(q.rhs()), Connective::And), Connective::Or);
    }
  }
  return {};
}

ResolvedPhi resolve_references(const Phi& p) {
  ResolvedPhi out;
  for (const auto& [v, c] : p) {
    std::vector<Var> path{v};
    out.emplace(v, expand(p, c, path));
  }
  return out;
}

Query splices_to_vars(const Query& q) {
  if (q.is(Query::Kind::Pattern)) {
    return Query::pattern(std::visit(
        [](const auto& pat) -> QueryPattern {
          using T = std::decay_t<decltype(pat)>;
          if constexpr (std::is_same_v<T, ConceptPattern>)
            return ConceptPattern{elem_to_var(pat.subject), pat.type};
          else
            return RolePattern{elem_to_var(pat.subject), pat.role, elem_to_var(pat.object)};
        },
        q.as_pattern()));
  }
  return Query::make(q.kind(), splices_to_vars(q.lhs()), splices_to_vars(q.rhs()));
}

ValidationOutcome validate_query(Reasoner& r, const SelectQuery& sq, const std::map<SpliceId, Concept>& splice_types,
                                 ValidationMode mode) {
  Phi phi = infer_query(splices_to_vars(sq.body));
  for (const Var& v : sq.select_vars)
    if (!phi.count(v)) return UntypedSelectVar{v};

  ResolvedPhi resolved = resolve_references(phi);
  for (const auto& [v, c] : resolved)
    if (!r.is_satisfiable(c).satisfiable) return Unsatisfiable{v, c};

  std::map<SpliceId, Concept> declared;
  for (const SpliceId& s : splice_terms(sq)) {
    auto it = splice_types.find(s);
    Concept c = it == splice_types.end() ? Concept::top() : it->second;
    if (!r.is_satisfiable(c).satisfiable) return Unsatisfiable{splice_var(s), c};
    declared.emplace(s, c);
  }

  std::map<SpliceId, Concept> finals;
  for (const auto& [s, c] : declared) {
    auto it = resolved.find(splice_var(s));
    Concept inferred = it == resolved.end() ? Concept::top() : it->second;
    if (mode == ValidationMode::NonStrict) {
      if (!r.is_satisfiable(Concept::conjunction(inferred, c)).satisfiable)
        return SpliceMismatch{s, mode, c, inferred};
      finals.emplace(s, inferred);
    } else {
      if (!r.entails_subsumption(c, inferred)) return SpliceMismatch{s, mode, c, inferred};
      finals.emplace(s, c);
    }
  }

  if (mode == ValidationMode::Strict && !declared.empty()) {
    for (const auto& [s, c] : declared) phi.insert_or_assign(splice_var(s), InfConcept::leaf(c));
    resolved = resolve_references(phi);
  }
  return Valid{std::move(resolved), std::move(finals)};
}

std::variant<Concept, ValidationOutcome> type_role_projection(Reasoner& r, const Concept& subject_type, const Role& role) {
  SpliceId t{"t"};
  Var x{"x"};
  SelectQuery sq{{x}, Query::pattern(RolePattern{t, role, x}), {t}};
  ValidationOutcome o = validate_query(r, sq, {{t, subject_type}}, ValidationMode::Strict);
  if (const auto* ok = std::get_if<Valid>(&o)) return ok->phi.at(x);
  return o;
}

std::string print_inf(const InfConcept& c, const PrefixTable& prefixes) {
  using K = InfConcept::Kind;
  switch (c.kind()) {
    case K::Leaf:
      return print_concept(c.concept_leaf(), prefixes);
    case K::Ref:
      return print_role(c.role(), prefixes) + " some ?" + c.target().name;
    case K::And:
      return "(" + print_inf(c.lhs(), prefixes) + ") and (" + print_inf(c.rhs(), prefixes) + ")";
    case K::Or:
      return "(" + print_inf(c.lhs(), prefixes) + ") or (" + print_inf(c.rhs(), prefixes) + ")";
  }
  return {};
}

std::string describe_outcome(const ValidationOutcome& o, const PrefixTable& px) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Valid>) {
          std::string out;
          for (const auto& [var, c] : v.phi) out += "?" + var.name + " : " + print_concept(c, px) + "\n";
          return out;
        } else if constexpr (std::is_same_v<T, Unsatisfiable>) {
          return "the concept inferred for ?" + v.var.name + " is unsatisfiable: " + print_concept(v.concept_expr, px);
        } else if constexpr (std::is_same_v<T, SpliceMismatch>) {
          if (v.mode == ValidationMode::Strict)
            return "argument $" + v.splice.name + " of type " + print_concept(v.splice_type, px) +
                   " is not subsumed by the inferred constraint " + print_concept(v.inferred, px);
          return "argument $" + v.splice.name + " of type " + print_concept(v.splice_type, px) +
                 " is disjoint from the inferred constraint " + print_concept(v.inferred, px);
        } else {
          return "SELECT variable ?" + v.var.name + " only occurs on the right of MINUS and has no type";
        }
      },
      o);
}

}  // namespace dlq
