#include <map>

#include "dlq/lang/lang.hpp"
#include "dlq/query_eval.hpp"

namespace dlq::lang {

namespace {

using Env = std::map<std::string, Value>;

constexpr int kMaxDepth = 10000;

class Evaluator {
 public:
  Evaluator(Reasoner& r, const Program& p) : r_(r), p_(p) {}

  Value eval(const Term& t, const Env& env) {
    using K = Term::Kind;
    switch (t.kind) {
      case K::Var:
        return env.at(t.name);
      case K::IriLit:
        return Value::of(*t.iri);
      case K::BoolLit:
        return Value::of(t.flag);
      case K::Call:
        return call(t, env);
      case K::Query:
        return query(t, env);
      case K::RoleProj: {
        Value subject = eval(*t.args[0], env);
        Query q = Query::pattern(RolePattern{*subject.iri, *t.role, Var{"x"}});
        std::vector<Value> out;
        for (const auto& row : project(eval_algebraic(r_, q), {Var{"x"}}).rows) out.push_back(Value::of(*row[0]));
        return Value::list(std::move(out));
      }
      case K::Match: {
        Value subject = eval(*t.args[0], env);
        for (const auto& c : t.cases) {
          if (!r_.entails_instance(*subject.iri, c.type)) continue;
          Env inner = env;
          inner.insert_or_assign(c.binder, subject);
          return eval(*c.body, inner);
        }
        return eval(*t.args[1], env);
      }
      case K::If:
        return eval(*t.args[eval(*t.args[0], env).boolean ? 1 : 2], env);
      case K::Let: {
        Env inner = env;
        inner.insert_or_assign(t.name, eval(*t.args[0], env));
        return eval(*t.args[1], inner);
      }
      case K::TupleIndex:
        return eval(*t.args[0], env).items.at(t.index - 1);
      case K::NonEmpty:
        return Value::of(!eval(*t.args[0], env).items.empty());
      case K::Head: {
        Value list = eval(*t.args[0], env);
        if (list.items.empty()) throw RuntimeError(t.pos, "head of an empty list");
        return list.items.front();
      }
      case K::Nil:
        return Value::list({});
    }
    throw RuntimeError(t.pos, "unsupported term");
  }

 private:
  Value call(const Term& t, const Env& env) {
    const Definition* d = p_.find(t.name);
    if (!d) throw RuntimeError(t.pos, "unknown function '" + t.name + "'");
    Env frame;
    for (std::size_t i = 0; i < t.args.size(); ++i) frame.insert_or_assign(d->params[i].name, eval(*t.args[i], env));
    if (++depth_ > kMaxDepth) throw RuntimeError(t.pos, "recursion depth limit exceeded");
    Value v = eval(*d->body, frame);
    --depth_;
    return v;
  }

  Value query(const Term& t, const Env& env) {
    const SelectQuery& sq = *t.query;
    std::map<SpliceId, Iri> values;
    for (const SpliceId& s : sq.splices) {
      const Value& v = env.at(s.name);
      if (v.kind != Value::Kind::Iri) throw RuntimeError(t.pos, "splice $" + s.name + " is not bound to an IRI");
      values.emplace(s, *v.iri);
    }
    ResultTable table = project(eval_algebraic(r_, substitute(sq.body, values)), sq.select_vars);
    std::vector<Value> out;
    for (const auto& row : table.rows) {
      std::vector<Value> cells;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!row[i]) throw RuntimeError(t.pos, "?" + table.columns[i].name + " is unbound in an answer");
        cells.push_back(Value::of(*row[i]));
      }
      out.push_back(cells.size() == 1 ? cells.front() : Value::tuple(std::move(cells)));
    }
    return Value::list(std::move(out));
  }

  Reasoner& r_;
  const Program& p_;
  int depth_ = 0;
};

}  // namespace

Value evaluate(Reasoner& r, const Program& p) {
  Evaluator e(r, p);
  return e.eval(*p.main, {});
}

Value evaluate(const KnowledgeBase& k, const Program& p) {
  Reasoner r(k);
  return evaluate(r, p);
}

}  // namespace dlq::lang
