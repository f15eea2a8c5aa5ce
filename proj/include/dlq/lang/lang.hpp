#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "dlq/kb.hpp"
#include "dlq/lang/ast.hpp"
#include "dlq/reasoner.hpp"

namespace dlq::lang {

// Categories: E-SAT, E-SUB, E-ACCESS for the reasoner-backed rules, E-TYPE
// for ordinary shape and scoping errors.
class TypeError : public std::runtime_error {
 public:
  TypeError(std::string category, SourcePos pos, const std::string& message);

  const std::string& category() const { return category_; }
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  std::string category_;
  SourcePos pos_;
  std::string message_;
};

class RuntimeError : public std::runtime_error {
 public:
  RuntimeError(SourcePos pos, const std::string& message);

  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

enum class CheckMode { Full, TboxOnly };

Program parse_program(std::string_view text);
Program load_program_file(const std::string& path);

bool subtype(Reasoner& r, const LangType& t1, const LangType& t2);
bool subtype(const KnowledgeBase& k, const LangType& t1, const LangType& t2);
// Throws TypeError (E-TYPE) on a shape mismatch. `pos` locates the error.
LangType lub(const LangType& t1, const LangType& t2, SourcePos pos = {});

// Annotates every term of `p` with its type. In TboxOnly mode the reasoner
// sees only the T-Box and unascribed IRI literals are typed Thing.
void typecheck(const KnowledgeBase& k, Program& p, CheckMode mode = CheckMode::Full);

// Runs main against the full KB. Expects a type-checked program.
Value evaluate(const KnowledgeBase& k, const Program& p);
Value evaluate(Reasoner& r, const Program& p);

}  // namespace dlq::lang
