#include "dlq/query.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "dlq/kb_text.hpp"
#include "dlq/reasoner.hpp"

namespace dlq {

Query Query::make(Kind k, Query a, Query b) {
  if (k == Kind::Pattern) throw std::logic_error("Query::make needs a binary connective");
  return Query(std::make_shared<const Node>(Node{k, std::nullopt, std::move(a), std::move(b)}));
}

Query Query::pattern(QueryPattern p) {
  return Query(std::make_shared<const Node>(Node{Kind::Pattern, std::move(p), std::nullopt, std::nullopt}));
}
Query Query::join(Query a, Query b) { return make(Kind::Join, std::move(a), std::move(b)); }
Query Query::union_of(Query a, Query b) { return make(Kind::Union, std::move(a), std::move(b)); }
Query Query::minus(Query a, Query b) { return make(Kind::Minus, std::move(a), std::move(b)); }
Query Query::optional(Query a, Query b) { return make(Kind::Optional, std::move(a), std::move(b)); }

Query::Kind Query::kind() const { return node_->kind; }

const QueryPattern& Query::as_pattern() const {
  if (!node_->pattern) throw std::logic_error("query is not a pattern");
  return *node_->pattern;
}

const Query& Query::lhs() const {
  if (!node_->lhs) throw std::logic_error("query is a pattern");
  return *node_->lhs;
}

const Query& Query::rhs() const {
  if (!node_->rhs) throw std::logic_error("query is a pattern");
  return *node_->rhs;
}

bool operator==(const Query& a, const Query& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is(Query::Kind::Pattern)) return a.as_pattern() == b.as_pattern();
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

namespace {

class QueryParser {
 public:
  QueryParser(std::string_view text, const PrefixTable& prefixes, SourcePos start, bool allow_splices)
      : ts_(lex(text, LexOptions{false, start})), px_(prefixes), allow_splices_(allow_splices) {}

  SelectQuery run() {
    while (accept_keyword("PREFIX")) {
      const Token& alias = ts_.next();
      std::string name;
      if (alias.kind == Tok::PName && alias.text.empty()) {
        name = alias.alias;
      } else if (!alias.is_punct(':')) {
        ts_.fail_at(alias, "expected a prefix alias but found " + describe(alias));
      }
      const Token& iri = ts_.expect(Tok::IriRef, "an IRI reference");
      if (px_.contains(name) && px_.lookup(name) != iri.text) {
        // Local declarations shadow inherited ones.
        PrefixTable copy;
        for (const auto& [a, p] : px_.entries())
          if (a != name) copy.add(a, p);
        px_ = std::move(copy);
      }
      if (!px_.contains(name)) px_.add(name, iri.text);
    }
    if (!accept_keyword("SELECT")) ts_.fail("expected SELECT but found " + describe(ts_.peek()));
    SelectQuery out{{}, Query::pattern(ConceptPattern{Var{"_"}, Concept::top()}), {}};
    while (ts_.peek().kind == Tok::Var) {
      const Token& v = ts_.next();
      Var var{v.text};
      if (std::find(out.select_vars.begin(), out.select_vars.end(), var) != out.select_vars.end())
        ts_.fail_at(v, "duplicate SELECT variable ?" + v.text);
      out.select_vars.push_back(var);
      select_pos_.push_back(v);
    }
    if (out.select_vars.empty()) ts_.fail("expected a ?variable after SELECT but found " + describe(ts_.peek()));
    if (!accept_keyword("WHERE")) ts_.fail("expected WHERE but found " + describe(ts_.peek()));
    out.body = group();
    if (!ts_.at_end()) ts_.fail("unexpected " + describe(ts_.peek()) + " after the query");
    std::set<Var> vs = vars(out.body);
    for (std::size_t i = 0; i < out.select_vars.size(); ++i)
      if (!vs.count(out.select_vars[i]))
        ts_.fail_at(select_pos_[i], "SELECT variable ?" + out.select_vars[i].name + " does not occur in WHERE");
    out.splices = splice_terms(out.body);
    return out;
  }

 private:
  bool accept_keyword(std::string_view kw) {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Word) return false;
    std::string upper = t.text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper != kw) return false;
    ts_.next();
    return true;
  }

  bool peek_keyword(std::string_view kw) const {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Word) return false;
    std::string upper = t.text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    return upper == kw;
  }

  // { GGP }
  Query group() {
    const Token& open = ts_.expect_punct('{');
    std::optional<Query> acc;
    while (!ts_.peek().is_punct('}')) {
      if (ts_.at_end()) ts_.fail_at(open, "unclosed '{'");
      if (peek_keyword("MINUS") || peek_keyword("OPTIONAL")) {
        const Token kw = ts_.next();
        if (!acc) ts_.fail_at(kw, kw.text + " needs a preceding pattern");
        Query rhs = group();
        acc = Query::make(peek_is(kw, "MINUS") ? Query::Kind::Minus : Query::Kind::Optional, *acc, rhs);
      } else {
        Query e = element();
        acc = acc ? Query::join(*acc, e) : e;
      }
      ts_.accept_punct('.');
    }
    if (!acc) ts_.fail("empty group pattern");
    ts_.expect_punct('}');
    return *acc;
  }

  static bool peek_is(const Token& t, std::string_view kw) {
    std::string upper = t.text;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    return upper == kw;
  }

  Query element() {
    if (ts_.peek().is_punct('{')) {
      Query q = group();
      while (accept_keyword("UNION")) q = Query::union_of(q, group());
      return q;
    }
    const Token start = ts_.peek();
    PatternElem subject = node();
    Query q = [&] {
      if (ts_.peek().is_word("a")) {
        ts_.next();
        return Query::pattern(ConceptPattern{subject, cref()});
      }
      Role r = predicate();
      PatternElem object = node();
      return Query::pattern(RolePattern{subject, r, object});
    }();
    if (vars(q.as_pattern()).empty() && splice_terms(q).empty())
      ts_.fail_at(start, "pattern mentions no variable");
    return q;
  }

  PatternElem node() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Var) return Var{ts_.next().text};
    if (t.kind == Tok::Splice) {
      if (!allow_splices_) ts_.fail("splice $" + t.text + " outside an embedded query");
      return SpliceId{ts_.next().text};
    }
    if (t.is_name()) return resolve_name(ts_.next(), px_);
    ts_.fail("expected ?variable, $splice or IRI but found " + describe(t));
  }

  Role predicate() {
    const Token& t = ts_.peek();
    if (t.is_word("inv") || t.is_name()) return parse_role_expr(ts_, px_);
    ts_.fail("expected 'a' or a role IRI but found " + describe(t));
  }

  Concept cref() {
    if (ts_.accept_punct('[')) {
      Concept c = parse_concept_expr(ts_, px_);
      ts_.expect_punct(']');
      return c;
    }
    const Token& t = ts_.peek();
    if (t.is_name()) return Concept::atomic(resolve_name(ts_.next(), px_));
    ts_.fail("expected a concept IRI or [concept] but found " + describe(t));
  }

  TokenStream ts_;
  PrefixTable px_;
  bool allow_splices_;
  std::vector<Token> select_pos_;
};

void collect_vars(const PatternElem& e, std::set<Var>& out) {
  if (const auto* v = std::get_if<Var>(&e)) out.insert(*v);
}

void collect_splices(const PatternElem& e, std::vector<SpliceId>& out) {
  if (const auto* s = std::get_if<SpliceId>(&e))
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
}

void walk_patterns(const Query& q, const std::function<void(const QueryPattern&)>& f) {
  if (q.is(Query::Kind::Pattern)) {
    f(q.as_pattern());
    return;
  }
  walk_patterns(q.lhs(), f);
  walk_patterns(q.rhs(), f);
}

PatternElem subst(const PatternElem& e, const std::map<SpliceId, Iri>& values) {
  if (const auto* s = std::get_if<SpliceId>(&e))
    if (auto it = values.find(*s); it != values.end()) return it->second;
  return e;
}

bool subset(const SolutionMapping& mu, const std::set<Var>& vs) {
  return std::all_of(mu.begin(), mu.end(), [&](const auto& b) { return vs.count(b.first) > 0; });
}

// Value of a pattern element under mu, or nullopt when unbound.
std::optional<Iri> value(const PatternElem& e, const SolutionMapping& mu) {
  if (const auto* v = std::get_if<Var>(&e)) {
    auto it = mu.find(*v);
    if (it == mu.end()) return std::nullopt;
    return it->second;
  }
  if (const auto* i = std::get_if<Iri>(&e)) return *i;
  throw std::logic_error("cannot evaluate a query with unresolved splices");
}

}  // namespace

SelectQuery parse_query(std::string_view text, const PrefixTable& prefixes, SourcePos start, bool allow_splices) {
  return QueryParser(text, prefixes, start, allow_splices).run();
}

std::set<Var> vars(const QueryPattern& p) {
  std::set<Var> out;
  std::visit(
      [&](const auto& pat) {
        using T = std::decay_t<decltype(pat)>;
        collect_vars(pat.subject, out);
        if constexpr (std::is_same_v<T, RolePattern>) collect_vars(pat.object, out);
      },
      p);
  return out;
}

std::set<Var> vars(const Query& q) {
  std::set<Var> out;
  walk_patterns(q, [&](const QueryPattern& p) {
    auto vs = vars(p);
    out.insert(vs.begin(), vs.end());
  });
  return out;
}

std::vector<SpliceId> splice_terms(const Query& q) {
  std::vector<SpliceId> out;
  walk_patterns(q, [&](const QueryPattern& p) {
    std::visit(
        [&](const auto& pat) {
          using T = std::decay_t<decltype(pat)>;
          collect_splices(pat.subject, out);
          if constexpr (std::is_same_v<T, RolePattern>) collect_splices(pat.object, out);
        },
        p);
  });
  return out;
}

std::vector<SpliceId> splice_terms(const SelectQuery& q) { return splice_terms(q.body); }

bool has_splices(const Query& q) { return !splice_terms(q).empty(); }

Query substitute(const Query& q, const std::map<SpliceId, Iri>& values) {
  if (q.is(Query::Kind::Pattern)) {
    return Query::pattern(std::visit(
        [&](const auto& pat) -> QueryPattern {
          using T = std::decay_t<decltype(pat)>;
          if constexpr (std::is_same_v<T, ConceptPattern>)
            return ConceptPattern{subst(pat.subject, values), pat.type};
          else
            return RolePattern{subst(pat.subject, values), pat.role, subst(pat.object, values)};
        },
        q.as_pattern()));
  }
  return Query::make(q.kind(), substitute(q.lhs(), values), substitute(q.rhs(), values));
}

SolutionMapping restrict(const SolutionMapping& mu, const std::set<Var>& vs) {
  SolutionMapping out;
  for (const auto& [v, i] : mu)
    if (vs.count(v)) out.emplace(v, i);
  return out;
}

bool holds(Reasoner& r, const Query& q, const SolutionMapping& mu) {
  using K = Query::Kind;
  switch (q.kind()) {
    case K::Pattern: {
      const QueryPattern& p = q.as_pattern();
      if (mu.size() != vars(p).size()) return false;
      if (const auto* cp = std::get_if<ConceptPattern>(&p)) {
        auto a = value(cp->subject, mu);
        return a && r.entails_instance(*a, cp->type);
      }
      const auto& rp = std::get<RolePattern>(p);
      auto a = value(rp.subject, mu), b = value(rp.object, mu);
      return a && b && r.entails_role(*a, rp.role, *b);
    }
    case K::Join: {
      return holds(r, q.lhs(), restrict(mu, vars(q.lhs()))) && holds(r, q.rhs(), restrict(mu, vars(q.rhs())));
    }
    case K::Union: {
      std::set<Var> v1 = vars(q.lhs()), v2 = vars(q.rhs());
      return (subset(mu, v1) && holds(r, q.lhs(), mu)) || (subset(mu, v2) && holds(r, q.rhs(), mu));
    }
    case K::Minus: {
      std::set<Var> v1 = vars(q.lhs());
      return subset(mu, v1) && holds(r, q.lhs(), mu) && !holds(r, q.rhs(), restrict(mu, vars(q.rhs())));
    }
    case K::Optional: {
      std::set<Var> v1 = vars(q.lhs()), v2 = vars(q.rhs());
      bool extends = std::any_of(mu.begin(), mu.end(), [&](const auto& b) { return v2.count(b.first) && !v1.count(b.first); });
      if (extends) return holds(r, Query::join(q.lhs(), q.rhs()), mu);
      return subset(mu, v1) && holds(r, q.lhs(), mu);
    }
  }
  return false;
}

SolutionSet denotational_eval(Reasoner& r, const Query& q) {
  std::set<Var> all = vars(q);
  std::vector<Var> vs(all.begin(), all.end());
  std::vector<Iri> objects(r.signature().objects.begin(), r.signature().objects.end());
  SolutionSet out;
  SolutionMapping mu;
  // choice[i] == objects.size() leaves vs[i] unbound.
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == vs.size()) {
      if (holds(r, q, mu)) out.insert(mu);
      return;
    }
    go(i + 1);
    for (const Iri& o : objects) {
      mu.insert_or_assign(vs[i], o);
      go(i + 1);
      mu.erase(vs[i]);
    }
  };
  go(0);
  return out;
}

SolutionSet denotational_eval(const KnowledgeBase& k, const Query& q) {
  Reasoner r(k);
  return denotational_eval(r, q);
}

namespace {

std::string print_elem(const PatternElem& e, const PrefixTable& px) {
  if (const auto* v = std::get_if<Var>(&e)) return "?" + v->name;
  if (const auto* s = std::get_if<SpliceId>(&e)) return "$" + s->name;
  return px.compact(std::get<Iri>(e));
}

std::string print_pattern(const QueryPattern& p, const PrefixTable& px) {
  if (const auto* cp = std::get_if<ConceptPattern>(&p)) {
    std::string c = cp->type.is(Concept::Kind::Atomic) ? px.compact(cp->type.name()) : "[" + print_concept(cp->type, px) + "]";
    return print_elem(cp->subject, px) + " a " + c;
  }
  const auto& rp = std::get<RolePattern>(p);
  return print_elem(rp.subject, px) + " " + print_role(rp.role, px) + " " + print_elem(rp.object, px);
}

std::string print_ggp(const Query& q, const PrefixTable& px);

std::string print_element(const Query& q, const PrefixTable& px) {
  if (q.is(Query::Kind::Pattern)) return print_pattern(q.as_pattern(), px);
  if (q.is(Query::Kind::Union)) return print_ggp(q, px);
  return "{ " + print_ggp(q, px) + " }";
}

std::string print_ggp(const Query& q, const PrefixTable& px) {
  using K = Query::Kind;
  switch (q.kind()) {
    case K::Pattern:
      return print_pattern(q.as_pattern(), px);
    case K::Join:
      return print_ggp(q.lhs(), px) + " . " + print_element(q.rhs(), px);
    case K::Union:
      return "{ " + print_ggp(q.lhs(), px) + " } UNION { " + print_ggp(q.rhs(), px) + " }";
    case K::Minus:
      return print_ggp(q.lhs(), px) + " MINUS { " + print_ggp(q.rhs(), px) + " }";
    case K::Optional:
      return print_ggp(q.lhs(), px) + " OPTIONAL { " + print_ggp(q.rhs(), px) + " }";
  }
  return {};
}

}  // namespace

std::string print_query(const Query& q, const PrefixTable& prefixes) { return "{ " + print_ggp(q, prefixes) + " }"; }

std::string print_select(const SelectQuery& q, const PrefixTable& prefixes) {
  std::string out = "SELECT";
  for (const Var& v : q.select_vars) out += " ?" + v.name;
  return out + " WHERE " + print_query(q.body, prefixes);
}

}  // namespace dlq
