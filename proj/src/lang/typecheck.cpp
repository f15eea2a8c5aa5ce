#include <map>

#include "dlq/kb_text.hpp"
#include "dlq/lang/lang.hpp"
#include "dlq/query_typer.hpp"

namespace dlq::lang {

TypeError::TypeError(std::string category, SourcePos pos, const std::string& message)
    : std::runtime_error(category + " " + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      category_(std::move(category)),
      pos_(pos),
      message_(message) {}

RuntimeError::RuntimeError(SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

bool subtype(Reasoner& r, const LangType& t1, const LangType& t2) {
  if (t1.kind != t2.kind) return false;
  switch (t1.kind) {
    case LangType::Kind::Concept:
      return r.entails_subsumption(t1.concept_of(), t2.concept_of());
    case LangType::Kind::List:
      return subtype(r, t1.elem(), t2.elem());
    case LangType::Kind::Tuple:
      if (t1.elems.size() != t2.elems.size()) return false;
      for (std::size_t i = 0; i < t1.elems.size(); ++i)
        if (!subtype(r, t1.elems[i], t2.elems[i])) return false;
      return true;
    case LangType::Kind::Bool:
      return true;
  }
  return false;
}

bool subtype(const KnowledgeBase& k, const LangType& t1, const LangType& t2) {
  Reasoner r(k);
  return subtype(r, t1, t2);
}

LangType lub(const LangType& t1, const LangType& t2, SourcePos pos) {
  auto mismatch = [&] {
    return TypeError("E-TYPE", pos, "branches have incompatible types " + print_type(t1) + " and " + print_type(t2));
  };
  if (t1.kind != t2.kind) throw mismatch();
  switch (t1.kind) {
    case LangType::Kind::Concept:
      return LangType::of(Concept::disjunction(t1.concept_of(), t2.concept_of()));
    case LangType::Kind::List:
      return LangType::list(lub(t1.elem(), t2.elem(), pos));
    case LangType::Kind::Tuple: {
      if (t1.elems.size() != t2.elems.size()) throw mismatch();
      std::vector<LangType> elems;
      for (std::size_t i = 0; i < t1.elems.size(); ++i) elems.push_back(lub(t1.elems[i], t2.elems[i], pos));
      return LangType::tuple(std::move(elems));
    }
    case LangType::Kind::Bool:
      return t1;
  }
  throw mismatch();
}

namespace {

using Env = std::map<std::string, LangType>;

class Checker {
 public:
  Checker(Reasoner& r, const Program& p, CheckMode mode) : r_(r), p_(p), mode_(mode) {}

  void definition(const Definition& d) {
    Env env;
    for (const auto& param : d.params) {
      if (param.type.is(LangType::Kind::Concept)) require_satisfiable(param.type.concept_of(), d.pos, "parameter " + param.name);
      env.insert_or_assign(param.name, param.type);
    }
    LangType body = check(*d.body, env);
    if (!subtype(r_, body, d.result))
      throw TypeError("E-SUB", d.body->pos,
                      "body of '" + d.name + "' has type " + show(body) + ", which is not a subtype of the declared " +
                          show(d.result));
  }

  LangType check(Term& t, const Env& env) {
    LangType ty = infer(t, env);
    t.type = ty;
    return ty;
  }

 private:
  std::string show(const LangType& t) const { return print_type(t, p_.prefixes); }
  std::string show(const Concept& c) const { return print_concept(c, p_.prefixes); }

  void require_satisfiable(const Concept& c, SourcePos pos, const std::string& what) {
    if (!r_.is_satisfiable(c).satisfiable) throw TypeError("E-SAT", pos, what + " has unsatisfiable type " + show(c));
  }

  const Concept& concept_operand(const Term& t, const LangType& ty, const std::string& what) {
    if (!ty.is(LangType::Kind::Concept))
      throw TypeError("E-TYPE", t.pos, what + " must have a concept type, found " + show(ty));
    return ty.concept_of();
  }

  LangType infer(Term& t, const Env& env) {
    using K = Term::Kind;
    switch (t.kind) {
      case K::Var: {
        auto it = env.find(t.name);
        if (it == env.end()) throw TypeError("E-TYPE", t.pos, "unbound variable '" + t.name + "'");
        return it->second;
      }
      case K::BoolLit:
        return LangType::boolean();
      case K::IriLit:
        return iri_literal(t);
      case K::Call:
        return call(t, env);
      case K::Query:
        return query(t, env);
      case K::RoleProj: {
        LangType subject = check(*t.args[0], env);
        const Concept& c = concept_operand(*t.args[0], subject, "the subject of a role projection");
        auto typed = type_role_projection(r_, c, *t.role);
        if (auto* ok = std::get_if<Concept>(&typed)) return LangType::list(LangType::of(*ok));
        throw TypeError("E-ACCESS", t.pos,
                        "role " + print_role(*t.role, p_.prefixes) + " is not known to exist for every " + show(c));
      }
      case K::Match:
        return match(t, env);
      case K::If: {
        LangType cond = check(*t.args[0], env);
        if (!cond.is(LangType::Kind::Bool))
          throw TypeError("E-TYPE", t.args[0]->pos, "condition must be Bool, found " + show(cond));
        return lub(check(*t.args[1], env), check(*t.args[2], env), t.pos);
      }
      case K::Let: {
        LangType bound = check(*t.args[0], env);
        Env inner = env;
        inner.insert_or_assign(t.name, bound);
        return check(*t.args[1], inner);
      }
      case K::TupleIndex: {
        LangType subject = check(*t.args[0], env);
        if (!subject.is(LangType::Kind::Tuple))
          throw TypeError("E-TYPE", t.pos, "tuple index on a value of type " + show(subject));
        if (t.index < 1 || t.index > static_cast<int>(subject.elems.size()))
          throw TypeError("E-TYPE", t.pos, "index " + std::to_string(t.index) + " out of range for " + show(subject));
        return subject.elems[t.index - 1];
      }
      case K::NonEmpty:
      case K::Head: {
        LangType subject = check(*t.args[0], env);
        if (!subject.is(LangType::Kind::List))
          throw TypeError("E-TYPE", t.args[0]->pos, "expected a list, found " + show(subject));
        return t.kind == K::NonEmpty ? LangType::boolean() : subject.elem();
      }
      case K::Nil:
        return LangType::list(*t.nil_type);
    }
    throw TypeError("E-TYPE", t.pos, "unsupported term");
  }

  LangType iri_literal(const Term& t) {
    if (mode_ == CheckMode::TboxOnly) return LangType::of(t.ascription ? *t.ascription : Concept::top());
    if (t.ascription) {
      if (!r_.entails_instance(*t.iri, *t.ascription))
        throw TypeError("E-SUB", t.pos,
                        p_.prefixes.compact(*t.iri) + " is not known to be an instance of " + show(*t.ascription));
      return LangType::of(*t.ascription);
    }
    return LangType::of(Concept::nominal(*t.iri));
  }

  LangType call(Term& t, const Env& env) {
    const Definition* d = p_.find(t.name);
    if (!d) throw TypeError("E-TYPE", t.pos, "unknown function '" + t.name + "'");
    if (d->params.size() != t.args.size())
      throw TypeError("E-TYPE", t.pos,
                      "'" + t.name + "' takes " + std::to_string(d->params.size()) + " argument(s), " +
                          std::to_string(t.args.size()) + " given");
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      LangType arg = check(*t.args[i], env);
      if (!subtype(r_, arg, d->params[i].type))
        throw TypeError("E-SUB", t.args[i]->pos,
                        "argument " + d->params[i].name + " of '" + t.name + "' expects " + show(d->params[i].type) +
                            ", found " + show(arg));
    }
    return d->result;
  }

  LangType query(Term& t, const Env& env) {
    const SelectQuery& sq = *t.query;
    std::map<SpliceId, Concept> types;
    for (const SpliceId& s : sq.splices) {
      auto it = env.find(s.name);
      if (it == env.end()) throw TypeError("E-TYPE", t.pos, "splice $" + s.name + " names no variable in scope");
      types.emplace(s, concept_operand(t, it->second, "spliced variable " + s.name));
    }
    ValidationMode mode = t.flag ? ValidationMode::Strict : ValidationMode::NonStrict;
    ValidationOutcome o = validate_query(r_, sq, types, mode);
    std::string why = describe_outcome(o, p_.prefixes);
    if (std::holds_alternative<Unsatisfiable>(o)) throw TypeError("E-SAT", t.pos, why);
    if (const auto* m = std::get_if<SpliceMismatch>(&o))
      throw TypeError(m->mode == ValidationMode::Strict ? "E-SUB" : "E-SAT", t.pos, why);
    if (std::holds_alternative<UntypedSelectVar>(o)) throw TypeError("E-TYPE", t.pos, why);
    const auto& phi = std::get<Valid>(o).phi;
    std::vector<LangType> cols;
    for (const Var& v : sq.select_vars) cols.push_back(LangType::of(phi.at(v)));
    if (cols.size() == 1) return LangType::list(cols.front());
    return LangType::list(LangType::tuple(std::move(cols)));
  }

  LangType match(Term& t, const Env& env) {
    LangType subject = check(*t.args[0], env);
    concept_operand(*t.args[0], subject, "the subject of match");
    std::optional<LangType> result;
    for (auto& c : t.cases) {
      require_satisfiable(c.type, c.pos, "case " + c.binder);
      Env inner = env;
      inner.insert_or_assign(c.binder, LangType::of(c.type));
      LangType branch = check(*c.body, inner);
      result = result ? lub(*result, branch, c.pos) : branch;
    }
    LangType fallback = check(*t.args[1], env);
    return result ? lub(*result, fallback, t.args[1]->pos) : fallback;
  }

  Reasoner& r_;
  const Program& p_;
  CheckMode mode_;
};

}  // namespace

void typecheck(const KnowledgeBase& k, Program& p, CheckMode mode) {
  Reasoner r(mode == CheckMode::TboxOnly ? k.tbox_only() : k);
  Checker checker(r, p, mode);
  for (auto& d : p.defs) checker.definition(d);
  if (p.main) checker.check(*p.main, {});
}

}  // namespace dlq::lang
