#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlq/concept.hpp"
#include "dlq/iri.hpp"

// Lexing and concept-expression parsing shared by the KB, query and program
// front ends.
namespace dlq {

struct SourcePos {
  int line = 1;
  int column = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& message);

  SourcePos pos() const { return pos_; }
  int line() const { return pos_.line; }
  int column() const { return pos_.column; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

enum class Tok { Word, PName, IriRef, Var, Splice, Int, String, Backquoted, Punct, Arrow, Newline, End };

struct Token {
  Tok kind = Tok::End;
  // Word / Var / Splice name, PName local part, IriRef body, string or
  // back-quoted contents, punctuation character.
  std::string text;
  // PName alias (may be empty for the default prefix).
  std::string alias;
  SourcePos pos;
  // Position of the first character of String / Backquoted contents.
  SourcePos content_pos;

  bool is_word(std::string_view w) const { return kind == Tok::Word && text == w; }
  bool is_punct(char c) const { return kind == Tok::Punct && text.size() == 1 && text[0] == c; }
  bool is_name() const { return kind == Tok::PName || kind == Tok::IriRef; }
};

struct LexOptions {
  bool newlines = false;
  SourcePos start{};
};

// Throws ParseError on an unexpected character or an unterminated literal.
// The final token is always Tok::End, positioned just after the input.
std::vector<Token> lex(std::string_view text, LexOptions opts = {});

std::string describe(const Token& t);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Tok::End; }

  bool accept_word(std::string_view w);
  bool accept_punct(char c);
  const Token& expect_word(std::string_view w);
  const Token& expect_punct(char c);
  const Token& expect(Tok kind, std::string_view what);

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& t, const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

Iri resolve_name(const Token& t, const PrefixTable& prefixes);

// Concept grammar, loosest first:  or  <  and  <  some/only  <  not.
// Quantifiers are infix with the role on the left (`R some C`).
Concept parse_concept_expr(TokenStream& ts, const PrefixTable& prefixes);
Role parse_role_expr(TokenStream& ts, const PrefixTable& prefixes);

}  // namespace dlq
