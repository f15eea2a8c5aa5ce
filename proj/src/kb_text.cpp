#include "dlq/kb_text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dlq {

namespace {

bool at_statement_end(const TokenStream& ts) {
  return ts.peek().kind == Tok::Newline || ts.peek().kind == Tok::End;
}

void expect_statement_end(TokenStream& ts) {
  if (!at_statement_end(ts)) ts.fail("expected end of statement but found " + describe(ts.peek()));
}

void parse_prefix_decl(TokenStream& ts, PrefixTable& prefixes) {
  const Token& kw = ts.next();
  std::string alias;
  if (ts.peek().kind == Tok::PName && ts.peek().text.empty()) {
    alias = ts.next().alias;
  } else if (!ts.accept_punct(':')) {
    ts.fail("expected 'alias:' after 'prefix' but found " + describe(ts.peek()));
  }
  const Token& ns = ts.expect(Tok::IriRef, "'<namespace>'");
  if (prefixes.contains(alias)) ts.fail_at(kw, "duplicate prefix alias '" + alias + ":'");
  prefixes.add(alias, ns.text);
}

Axiom parse_statement(TokenStream& ts, const PrefixTable& prefixes) {
  if (ts.peek().is_name() && (ts.peek(1).is_word("Type") || ts.peek(1).is_word("Fact"))) {
    Iri subject = resolve_name(ts.next(), prefixes);
    if (ts.accept_word("Type")) return ConceptAssertion{subject, parse_concept_expr(ts, prefixes)};
    ts.expect_word("Fact");
    Role r = parse_role_expr(ts, prefixes);
    if (!ts.peek().is_name()) ts.fail("expected an object name but found " + describe(ts.peek()));
    Iri object = resolve_name(ts.next(), prefixes);
    return role_assertion(subject, r, object);
  }
  Concept lhs = parse_concept_expr(ts, prefixes);
  if (ts.accept_word("SubClassOf")) return SubClassOf{lhs, parse_concept_expr(ts, prefixes)};
  if (ts.accept_word("EquivalentTo")) return EquivalentTo{lhs, parse_concept_expr(ts, prefixes)};
  ts.fail("expected 'SubClassOf' or 'EquivalentTo' but found " + describe(ts.peek()));
}

template <typename T, typename F>
T parse_whole(std::string_view text, F&& body) {
  TokenStream ts(lex(text));
  T result = body(ts);
  if (!ts.at_end()) ts.fail("unexpected " + describe(ts.peek()));
  return result;
}

// Binding strength used to decide where parentheses are required.
int level(const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Or:
      return 1;
    case K::And:
      return 2;
    case K::Exists:
    case K::Forall:
      return 3;
    case K::Not:
      return 4;
    default:
      return 5;
  }
}

void render(std::ostream& os, const Concept& c, int required, const PrefixTable& px) {
  using K = Concept::Kind;
  bool parens = level(c) < required;
  if (parens) os << '(';
  switch (c.kind()) {
    case K::Top:
      os << "Thing";
      break;
    case K::Bottom:
      os << "Nothing";
      break;
    case K::Atomic:
      os << px.compact(c.name());
      break;
    case K::Nominal:
      os << '{' << px.compact(c.name()) << '}';
      break;
    case K::Not:
      os << "not ";
      render(os, c.operand(), 4, px);
      break;
    case K::And:
      render(os, c.lhs(), 2, px);
      os << " and ";
      render(os, c.rhs(), 3, px);
      break;
    case K::Or:
      render(os, c.lhs(), 1, px);
      os << " or ";
      render(os, c.rhs(), 2, px);
      break;
    case K::Exists:
    case K::Forall:
      os << print_role(c.role(), px) << (c.is(K::Exists) ? " some " : " only ");
      render(os, c.operand(), 3, px);
      break;
  }
  if (parens) os << ')';
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) {
  TokenStream ts(lex(text, LexOptions{.newlines = true}));
  KnowledgeBase kb;
  while (!ts.at_end()) {
    if (ts.peek().kind == Tok::Newline) {
      ts.next();
      continue;
    }
    if (ts.peek().is_word("prefix")) {
      parse_prefix_decl(ts, kb.prefixes);
    } else {
      kb.add(parse_statement(ts, kb.prefixes));
    }
    expect_statement_end(ts);
  }
  return kb;
}

Concept parse_concept(std::string_view text, const PrefixTable& prefixes) {
  return parse_whole<Concept>(text, [&](TokenStream& ts) { return parse_concept_expr(ts, prefixes); });
}

Role parse_role(std::string_view text, const PrefixTable& prefixes) {
  return parse_whole<Role>(text, [&](TokenStream& ts) { return parse_role_expr(ts, prefixes); });
}

Iri parse_iri(std::string_view text, const PrefixTable& prefixes) {
  return parse_whole<Iri>(text, [&](TokenStream& ts) {
    if (!ts.peek().is_name()) ts.fail("expected an IRI or prefixed name but found " + describe(ts.peek()));
    return resolve_name(ts.next(), prefixes);
  });
}

std::string print_concept(const Concept& c, const PrefixTable& prefixes) {
  std::ostringstream os;
  render(os, c, 0, prefixes);
  return os.str();
}

std::string print_role(const Role& r, const PrefixTable& prefixes) {
  std::string name = prefixes.compact(r.name());
  return r.is_inverse() ? "inv(" + name + ")" : name;
}

std::string print_axiom(const Axiom& ax, const PrefixTable& px) {
  return std::visit(
      [&](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SubClassOf>) {
          return print_concept(a.sub, px) + " SubClassOf " + print_concept(a.super, px);
        } else if constexpr (std::is_same_v<T, EquivalentTo>) {
          return print_concept(a.lhs, px) + " EquivalentTo " + print_concept(a.rhs, px);
        } else if constexpr (std::is_same_v<T, ConceptAssertion>) {
          return px.compact(a.object) + " Type " + print_concept(a.type, px);
        } else {
          return px.compact(a.subject) + " Fact " + px.compact(a.role) + " " + px.compact(a.object);
        }
      },
      ax);
}

std::string print_kb(const KnowledgeBase& k) {
  std::ostringstream os;
  for (const auto& [alias, ns] : k.prefixes.entries()) os << "prefix " << alias << ": <" << ns << ">\n";
  for (const auto& ax : k.tbox) os << print_axiom(ax, k.prefixes) << '\n';
  for (const auto& ax : k.abox) os << print_axiom(ax, k.prefixes) << '\n';
  return os.str();
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knowledge base file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kb(buf.str());
}

}  // namespace dlq
