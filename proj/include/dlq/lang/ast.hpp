#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlq/concept.hpp"
#include "dlq/query.hpp"
#include "dlq/syntax.hpp"

namespace dlq::lang {

struct LangType {
  enum class Kind { Concept, List, Tuple, Bool };

  Kind kind = Kind::Bool;
  std::optional<Concept> concept_type;  // Concept only
  std::vector<LangType> elems;          // List: one element type; Tuple: two or more

  static LangType of(Concept c);
  static LangType list(LangType elem);
  static LangType tuple(std::vector<LangType> elems);
  static LangType boolean();

  bool is(Kind k) const { return kind == k; }
  const Concept& concept_of() const;
  const LangType& elem() const;

  friend bool operator==(const LangType&, const LangType&) = default;
};

std::string print_type(const LangType& t, const PrefixTable& prefixes = {});

struct Term;
using TermPtr = std::shared_ptr<Term>;

struct MatchCase {
  std::string binder;
  Concept type;
  TermPtr body;
  SourcePos pos;
};

struct Term {
  enum class Kind {
    Var,
    IriLit,
    BoolLit,
    Call,
    Query,
    RoleProj,
    Match,
    If,
    Let,
    TupleIndex,
    NonEmpty,
    Head,
    Nil,
  };

  Kind kind = Kind::Var;
  SourcePos pos;

  std::string name;                  // Var, Call, Let binder
  std::optional<Iri> iri;            // IriLit
  std::optional<Concept> ascription; // IriLit
  bool flag = false;                 // BoolLit value; Query strictness
  std::optional<SelectQuery> query;  // Query
  std::optional<Role> role;          // RoleProj
  int index = 0;                     // TupleIndex, 1-based
  std::optional<LangType> nil_type;  // Nil element type
  std::vector<TermPtr> args;         // operands in source order
  std::vector<MatchCase> cases;      // Match; args[0] is the subject, args[1] the default

  // Filled in by the type checker.
  std::optional<LangType> type;
};

struct Param {
  std::string name;
  LangType type;
};

struct Definition {
  std::string name;
  std::vector<Param> params;
  LangType result;
  TermPtr body;
  SourcePos pos;
};

struct Program {
  PrefixTable prefixes;
  std::vector<Definition> defs;
  TermPtr main;

  const Definition* find(const std::string& name) const;
};

struct Value {
  enum class Kind { Iri, Bool, List, Tuple };

  Kind kind = Kind::Bool;
  std::optional<Iri> iri;
  bool boolean = false;
  std::vector<Value> items;

  static Value of(Iri i);
  static Value of(bool b);
  static Value list(std::vector<Value> items);
  static Value tuple(std::vector<Value> items);

  friend bool operator==(const Value&, const Value&) = default;
};

std::string print_value(const Value& v, const PrefixTable& prefixes = {});
// IRIs as full strings, lists and tuples as arrays, booleans as JSON booleans.
std::string value_to_json(const Value& v);

}  // namespace dlq::lang
