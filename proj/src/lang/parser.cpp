#include <fstream>
#include <set>
#include <sstream>

#include "dlq/lang/lang.hpp"

// Recursive-descent parser for `.dlq` programs. Newlines are insignificant.
namespace dlq::lang {

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "prefix", "def",  "main",  "let",         "in",       "if",   "then", "else", "match", "case",
    "iri",    "query", "strictquery", "nonEmpty", "head", "nil",  "true", "false", "List", "Bool",
};

class Parser {
 public:
  explicit Parser(std::string_view text) : ts_(lex(text)) {}

  Program run() {
    Program p;
    std::optional<SourcePos> main_pos;
    while (!ts_.at_end()) {
      const Token& t = ts_.peek();
      if (t.is_word("prefix")) {
        prefix_decl(p.prefixes);
      } else if (t.is_word("def")) {
        px_ = &p.prefixes;
        Definition d = definition();
        for (const auto& other : p.defs)
          if (other.name == d.name) throw ParseError(d.pos, "duplicate definition of '" + d.name + "'");
        p.defs.push_back(std::move(d));
      } else if (t.is_word("main")) {
        px_ = &p.prefixes;
        if (main_pos) ts_.fail("duplicate 'main'");
        main_pos = ts_.next().pos;
        ts_.expect_punct('=');
        p.main = expr();
      } else {
        ts_.fail("expected 'prefix', 'def' or 'main' but found " + describe(t));
      }
    }
    if (!p.main) ts_.fail("program has no 'main = ...'");
    return p;
  }

 private:
  void prefix_decl(PrefixTable& prefixes) {
    const Token kw = ts_.next();
    std::string alias;
    if (ts_.peek().kind == Tok::PName && ts_.peek().text.empty())
      alias = ts_.next().alias;
    else if (!ts_.accept_punct(':'))
      ts_.fail("expected 'alias:' after 'prefix' but found " + describe(ts_.peek()));
    const Token& ns = ts_.expect(Tok::IriRef, "'<namespace>'");
    if (prefixes.contains(alias)) ts_.fail_at(kw, "duplicate prefix alias '" + alias + ":'");
    prefixes.add(alias, ns.text);
  }

  std::string ident(std::string_view what) {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Word || kKeywords.count(t.text)) ts_.fail("expected " + std::string(what) + " but found " + describe(t));
    return ts_.next().text;
  }

  // `name:` arrives either as a PName with an empty local part or as a word
  // followed by ':'.
  std::string ident_colon(std::string_view what) {
    const Token& t = ts_.peek();
    if (t.kind == Tok::PName && t.text.empty() && !t.alias.empty()) {
      if (kKeywords.count(t.alias)) ts_.fail("expected " + std::string(what) + " but found keyword '" + t.alias + "'");
      return ts_.next().alias;
    }
    std::string name = ident(what);
    ts_.expect_punct(':');
    return name;
  }

  Concept backquoted_concept() {
    const Token& t = ts_.expect(Tok::Backquoted, "a back-quoted concept");
    TokenStream inner(lex(t.text, LexOptions{false, t.content_pos}));
    Concept c = parse_concept_expr(inner, *px_);
    if (!inner.at_end()) inner.fail("unexpected " + describe(inner.peek()) + " in concept");
    return c;
  }

  Role backquoted_role() {
    const Token& t = ts_.expect(Tok::Backquoted, "a back-quoted role");
    TokenStream inner(lex(t.text, LexOptions{false, t.content_pos}));
    Role r = parse_role_expr(inner, *px_);
    if (!inner.at_end()) inner.fail("unexpected " + describe(inner.peek()) + " in role");
    return r;
  }

  LangType type() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Backquoted) return LangType::of(backquoted_concept());
    if (ts_.accept_word("Bool")) return LangType::boolean();
    if (ts_.accept_word("List")) {
      ts_.expect_punct('[');
      LangType elem = type();
      ts_.expect_punct(']');
      return LangType::list(std::move(elem));
    }
    if (ts_.accept_punct('(')) {
      std::vector<LangType> elems{type()};
      while (ts_.accept_punct(',')) elems.push_back(type());
      ts_.expect_punct(')');
      if (elems.size() == 1) return elems.front();
      return LangType::tuple(std::move(elems));
    }
    ts_.fail("expected a type but found " + describe(t));
  }

  Definition definition() {
    Definition d;
    d.pos = ts_.next().pos;
    d.name = ident("a definition name");
    ts_.expect_punct('(');
    if (!ts_.peek().is_punct(')')) {
      do {
        std::string name = ident_colon("a parameter name");
        for (const auto& p : d.params)
          if (p.name == name) ts_.fail("duplicate parameter '" + name + "'");
        d.params.push_back(Param{name, type()});
      } while (ts_.accept_punct(','));
    }
    ts_.expect_punct(')');
    ts_.expect_punct(':');
    d.result = type();
    ts_.expect_punct('=');
    d.body = expr();
    return d;
  }

  TermPtr make(Term::Kind k, SourcePos pos) {
    auto t = std::make_shared<Term>();
    t->kind = k;
    t->pos = pos;
    return t;
  }

  TermPtr expr() {
    const Token& t = ts_.peek();
    if (t.is_word("let")) {
      auto term = make(Term::Kind::Let, ts_.next().pos);
      term->name = ident("a variable name");
      ts_.expect_punct('=');
      term->args.push_back(expr());
      ts_.expect_word("in");
      term->args.push_back(expr());
      return term;
    }
    if (t.is_word("if")) {
      auto term = make(Term::Kind::If, ts_.next().pos);
      term->args.push_back(expr());
      ts_.expect_word("then");
      term->args.push_back(expr());
      ts_.expect_word("else");
      term->args.push_back(expr());
      return term;
    }
    if (t.is_word("match")) return match();
    return postfix();
  }

  TermPtr match() {
    auto term = make(Term::Kind::Match, ts_.next().pos);
    term->args.push_back(expr());
    const Token& open = ts_.expect_punct('{');
    while (true) {
      if (ts_.at_end()) ts_.fail_at(open, "unclosed '{' in match");
      const Token kw = ts_.expect_word("case");
      if (ts_.peek().is_word("_")) {
        ts_.next();
        ts_.expect(Tok::Arrow, "'=>'");
        term->args.push_back(expr());
        break;
      }
      std::string binder = ident_colon("a binder or '_'");
      Concept type = backquoted_concept();
      ts_.expect(Tok::Arrow, "'=>'");
      term->cases.push_back(MatchCase{binder, type, expr(), kw.pos});
    }
    ts_.expect_punct('}');
    return term;
  }

  TermPtr postfix() {
    TermPtr term = primary();
    while (ts_.peek().is_punct('.')) {
      const Token dot = ts_.next();
      if (ts_.peek().kind == Tok::Backquoted) {
        auto proj = make(Term::Kind::RoleProj, dot.pos);
        proj->role = backquoted_role();
        proj->args.push_back(term);
        term = proj;
      } else if (ts_.peek().kind == Tok::Int) {
        auto idx = make(Term::Kind::TupleIndex, dot.pos);
        idx->index = std::stoi(ts_.next().text);
        idx->args.push_back(term);
        term = idx;
      } else {
        ts_.fail("expected a back-quoted role or a tuple index after '.' but found " + describe(ts_.peek()));
      }
    }
    return term;
  }

  TermPtr unary(Term::Kind k) {
    auto term = make(k, ts_.next().pos);
    ts_.expect_punct('(');
    term->args.push_back(expr());
    ts_.expect_punct(')');
    return term;
  }

  TermPtr primary() {
    const Token& t = ts_.peek();
    if (t.is_word("iri")) {
      auto term = make(Term::Kind::IriLit, ts_.next().pos);
      ts_.expect_punct('(');
      if (!ts_.peek().is_name()) ts_.fail("expected an IRI but found " + describe(ts_.peek()));
      term->iri = resolve_name(ts_.next(), *px_);
      ts_.expect_punct(')');
      if (ts_.accept_punct(':')) term->ascription = backquoted_concept();
      return term;
    }
    if (t.is_word("query") || t.is_word("strictquery")) {
      auto term = make(Term::Kind::Query, t.pos);
      term->flag = ts_.next().text == "strictquery";
      const Token& s = ts_.expect(Tok::String, "a query string");
      term->query = parse_query(s.text, *px_, s.content_pos);
      return term;
    }
    if (t.is_word("nonEmpty")) return unary(Term::Kind::NonEmpty);
    if (t.is_word("head")) return unary(Term::Kind::Head);
    if (t.is_word("nil")) {
      auto term = make(Term::Kind::Nil, ts_.next().pos);
      ts_.expect_punct('[');
      term->nil_type = type();
      ts_.expect_punct(']');
      return term;
    }
    if (t.is_word("true") || t.is_word("false")) {
      auto term = make(Term::Kind::BoolLit, t.pos);
      term->flag = ts_.next().text == "true";
      return term;
    }
    if (ts_.accept_punct('(')) {
      TermPtr inner = expr();
      ts_.expect_punct(')');
      return inner;
    }
    if (t.kind == Tok::Word && !kKeywords.count(t.text)) {
      const Token name = ts_.next();
      if (ts_.accept_punct('(')) {
        auto call = make(Term::Kind::Call, name.pos);
        call->name = name.text;
        if (!ts_.peek().is_punct(')')) {
          do {
            call->args.push_back(expr());
          } while (ts_.accept_punct(','));
        }
        ts_.expect_punct(')');
        return call;
      }
      auto var = make(Term::Kind::Var, name.pos);
      var->name = name.text;
      return var;
    }
    ts_.fail("expected an expression but found " + describe(t));
  }

  TokenStream ts_;
  const PrefixTable* px_ = nullptr;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

Program load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open program file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

}  // namespace dlq::lang
