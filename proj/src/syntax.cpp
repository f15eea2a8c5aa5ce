#include "dlq/syntax.hpp"

#include <cctype>

namespace dlq {

ParseError::ParseError(SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  Lexer(std::string_view text, LexOptions opts) : text_(text), opts_(opts), pos_(opts.start) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (i_ >= text_.size()) break;
      out.push_back(scan());
    }
    Token end;
    end.kind = Tok::End;
    end.pos = pos_;
    out.push_back(end);
    return out;
  }

 private:
  char cur() const { return i_ < text_.size() ? text_[i_] : '\0'; }
  char at(std::size_t k) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_blank() {
    while (i_ < text_.size()) {
      char c = cur();
      if (c == '#') {
        while (i_ < text_.size() && cur() != '\n') advance();
      } else if (c == '\n' && opts_.newlines) {
        return;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string take_while(bool (*pred)(char)) {
    std::string s;
    while (i_ < text_.size() && pred(cur())) {
      s += cur();
      advance();
    }
    return s;
  }

  static bool local_char(char c) { return is_local_name_char(c); }

  Token scan() {
    Token t;
    t.pos = pos_;
    char c = cur();
    if (c == '\n') {
      t.kind = Tok::Newline;
      advance();
      return t;
    }
    if (c == '<') {
      advance();
      std::string body;
      while (i_ < text_.size() && cur() != '>') {
        if (std::isspace(static_cast<unsigned char>(cur()))) throw ParseError(pos_, "whitespace inside IRI reference");
        body += cur();
        advance();
      }
      if (i_ >= text_.size()) throw ParseError(t.pos, "unterminated IRI reference");
      advance();
      if (body.empty()) throw ParseError(t.pos, "empty IRI reference");
      t.kind = Tok::IriRef;
      t.text = std::move(body);
      return t;
    }
    if (c == '?' || c == '$') {
      advance();
      if (!is_ident_start(cur())) throw ParseError(t.pos, std::string("expected a name after '") + c + "'");
      t.kind = c == '?' ? Tok::Var : Tok::Splice;
      t.text = take_while(is_ident_char);
      return t;
    }
    if (c == '"' || c == '`') {
      advance();
      t.content_pos = pos_;
      std::string body;
      while (i_ < text_.size() && cur() != c) {
        body += cur();
        advance();
      }
      if (i_ >= text_.size())
        throw ParseError(t.pos, c == '"' ? "unterminated string literal" : "unterminated back-quoted type");
      advance();
      t.kind = c == '"' ? Tok::String : Tok::Backquoted;
      t.text = std::move(body);
      return t;
    }
    if (c == ':' && local_char(at(1))) {
      advance();
      t.kind = Tok::PName;
      t.text = take_while(local_char);
      return t;
    }
    if (is_ident_start(c)) {
      std::string word = take_while(is_ident_char);
      if (cur() == ':' && at(1) != ':') {
        advance();
        t.kind = Tok::PName;
        t.alias = std::move(word);
        t.text = take_while(local_char);
        return t;
      }
      t.kind = Tok::Word;
      t.text = std::move(word);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      t.text = take_while([](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; });
      return t;
    }
    if (c == '=' && at(1) == '>') {
      advance();
      advance();
      t.kind = Tok::Arrow;
      t.text = "=>";
      return t;
    }
    static constexpr std::string_view punct = "(){}[],.=:";
    if (punct.find(c) != std::string_view::npos) {
      advance();
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  LexOptions opts_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

std::vector<Token> lex(std::string_view text, LexOptions opts) { return Lexer(text, opts).run(); }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Word:
      return "'" + t.text + "'";
    case Tok::PName:
      return "'" + t.alias + ":" + t.text + "'";
    case Tok::IriRef:
      return "'<" + t.text + ">'";
    case Tok::Var:
      return "'?" + t.text + "'";
    case Tok::Splice:
      return "'$" + t.text + "'";
    case Tok::Int:
      return "'" + t.text + "'";
    case Tok::String:
      return "string literal";
    case Tok::Backquoted:
      return "back-quoted type";
    case Tok::Punct:
    case Tok::Arrow:
      return "'" + t.text + "'";
    case Tok::Newline:
      return "end of line";
    case Tok::End:
      return "end of input";
  }
  return "token";
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t i = index_ + ahead;
  if (i >= tokens_.size()) return tokens_.back();
  return tokens_[i];
}

const Token& TokenStream::next() {
  const Token& t = peek();
  if (index_ < tokens_.size() - 1) ++index_;
  return t;
}

bool TokenStream::accept_word(std::string_view w) {
  if (!peek().is_word(w)) return false;
  next();
  return true;
}

bool TokenStream::accept_punct(char c) {
  if (!peek().is_punct(c)) return false;
  next();
  return true;
}

const Token& TokenStream::expect_word(std::string_view w) {
  if (!peek().is_word(w)) fail("expected '" + std::string(w) + "' but found " + describe(peek()));
  return next();
}

const Token& TokenStream::expect_punct(char c) {
  if (!peek().is_punct(c)) fail(std::string("expected '") + c + "' but found " + describe(peek()));
  return next();
}

const Token& TokenStream::expect(Tok kind, std::string_view what) {
  if (peek().kind != kind) fail("expected " + std::string(what) + " but found " + describe(peek()));
  return next();
}

void TokenStream::fail(const std::string& message) const { throw ParseError(peek().pos, message); }

void TokenStream::fail_at(const Token& t, const std::string& message) const { throw ParseError(t.pos, message); }

Iri resolve_name(const Token& t, const PrefixTable& prefixes) {
  if (t.kind == Tok::IriRef) return Iri(t.text);
  if (t.kind != Tok::PName) throw ParseError(t.pos, "expected a name but found " + describe(t));
  auto ns = prefixes.lookup(t.alias);
  if (!ns) throw ParseError(t.pos, "unknown prefix '" + t.alias + ":'");
  std::string full = *ns + t.text;
  if (full.empty()) throw ParseError(t.pos, "empty IRI");
  return Iri(std::move(full));
}

namespace {

bool is_quantifier(const Token& t) { return t.is_word("some") || t.is_word("only"); }

Concept parse_or(TokenStream& ts, const PrefixTable& px);
Concept parse_quant(TokenStream& ts, const PrefixTable& px);

Concept parse_atom(TokenStream& ts, const PrefixTable& px) {
  const Token& t = ts.peek();
  if (t.is_word("Thing")) {
    ts.next();
    return Concept::top();
  }
  if (t.is_word("Nothing")) {
    ts.next();
    return Concept::bottom();
  }
  if (t.is_name()) {
    Iri name = resolve_name(ts.next(), px);
    return Concept::atomic(std::move(name));
  }
  if (t.is_punct('{')) {
    ts.next();
    if (!ts.peek().is_name()) ts.fail("expected an object name inside '{ }' but found " + describe(ts.peek()));
    Iri obj = resolve_name(ts.next(), px);
    if (ts.peek().is_punct(',')) ts.fail("nominals hold exactly one object; write {a} or {b}");
    ts.expect_punct('}');
    return Concept::nominal(std::move(obj));
  }
  if (t.is_punct('(')) {
    ts.next();
    Concept inner = parse_or(ts, px);
    ts.expect_punct(')');
    return inner;
  }
  ts.fail("expected a concept expression but found " + describe(t));
}

Concept parse_unary(TokenStream& ts, const PrefixTable& px) {
  if (ts.accept_word("not")) return Concept::negation(parse_unary(ts, px));
  return parse_atom(ts, px);
}

Concept parse_quant(TokenStream& ts, const PrefixTable& px) {
  const Token& t = ts.peek();
  bool role_ahead = t.is_word("inv") || (t.is_name() && is_quantifier(ts.peek(1)));
  if (!role_ahead) return parse_unary(ts, px);
  Role r = parse_role_expr(ts, px);
  if (ts.accept_word("some")) return Concept::some(r, parse_quant(ts, px));
  if (ts.accept_word("only")) return Concept::only(r, parse_quant(ts, px));
  ts.fail("expected 'some' or 'only' after role but found " + describe(ts.peek()));
}

Concept parse_and(TokenStream& ts, const PrefixTable& px) {
  Concept c = parse_quant(ts, px);
  while (ts.accept_word("and")) c = Concept::conjunction(c, parse_quant(ts, px));
  return c;
}

Concept parse_or(TokenStream& ts, const PrefixTable& px) {
  Concept c = parse_and(ts, px);
  while (ts.accept_word("or")) c = Concept::disjunction(c, parse_and(ts, px));
  return c;
}

}  // namespace

Role parse_role_expr(TokenStream& ts, const PrefixTable& px) {
  if (ts.accept_word("inv")) {
    ts.expect_punct('(');
    Role inner = parse_role_expr(ts, px);
    ts.expect_punct(')');
    return inner.inverse();
  }
  if (!ts.peek().is_name()) ts.fail("expected a role name but found " + describe(ts.peek()));
  return Role::named(resolve_name(ts.next(), px));
}

Concept parse_concept_expr(TokenStream& ts, const PrefixTable& prefixes) { return parse_or(ts, prefixes); }

}  // namespace dlq
