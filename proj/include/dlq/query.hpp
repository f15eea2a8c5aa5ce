#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlq/kb.hpp"
#include "dlq/syntax.hpp"

namespace dlq {

class Reasoner;

struct Var {
  std::string name;
  auto operator<=>(const Var&) const = default;
};

struct SpliceId {
  std::string name;
  auto operator<=>(const SpliceId&) const = default;
};

using PatternElem = std::variant<Var, Iri, SpliceId>;

struct ConceptPattern {
  PatternElem subject;
  Concept type;
  friend bool operator==(const ConceptPattern&, const ConceptPattern&) = default;
};

struct RolePattern {
  PatternElem subject;
  Role role;
  PatternElem object;
  friend bool operator==(const RolePattern&, const RolePattern&) = default;
};

using QueryPattern = std::variant<ConceptPattern, RolePattern>;

// Query algebra tree. Immutable and cheap to copy.
class Query {
 public:
  enum class Kind { Pattern, Join, Union, Minus, Optional };

  static Query pattern(QueryPattern p);
  static Query join(Query a, Query b);
  static Query union_of(Query a, Query b);
  static Query minus(Query a, Query b);
  static Query optional(Query a, Query b);
  static Query make(Kind k, Query a, Query b);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  // Pattern only.
  const QueryPattern& as_pattern() const;
  // Binary connectives only.
  const Query& lhs() const;
  const Query& rhs() const;

  friend bool operator==(const Query& a, const Query& b);

 private:
  struct Node;
  explicit Query(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Query::Node {
  Kind kind;
  std::optional<QueryPattern> pattern;
  std::optional<Query> lhs, rhs;
};

struct SelectQuery {
  std::vector<Var> select_vars;
  Query body;
  // Distinct splice ids in order of first occurrence.
  std::vector<SpliceId> splices;
};

using SolutionMapping = std::map<Var, Iri>;
using SolutionSet = std::set<SolutionMapping>;

// Surface syntax:  [PREFIX a: <iri>]*  SELECT ?v+ WHERE { GGP }
// `start` is the source position of text[0], for queries embedded in
// larger files. `allow_splices` admits `$id` pattern elements.
SelectQuery parse_query(std::string_view text, const PrefixTable& prefixes, SourcePos start = {},
                        bool allow_splices = true);

std::set<Var> vars(const Query& q);
std::set<Var> vars(const QueryPattern& p);
std::vector<SpliceId> splice_terms(const Query& q);
std::vector<SpliceId> splice_terms(const SelectQuery& q);

// Replaces splices by constants. Splices missing from `values` stay.
Query substitute(const Query& q, const std::map<SpliceId, Iri>& values);
bool has_splices(const Query& q);

// Restriction of a mapping to a set of variables.
SolutionMapping restrict(const SolutionMapping& mu, const std::set<Var>& vs);

// Reference semantics: every partial map from vars(q) into the named
// objects of the KB, kept when the query holds under it. Exponential in
// |vars(q)|; a test oracle.
SolutionSet denotational_eval(Reasoner& r, const Query& q);
SolutionSet denotational_eval(const KnowledgeBase& k, const Query& q);

// Truth of q under a single mapping with d(mu) within vars(q).
bool holds(Reasoner& r, const Query& q, const SolutionMapping& mu);

std::string print_query(const Query& q, const PrefixTable& prefixes = {});
std::string print_select(const SelectQuery& q, const PrefixTable& prefixes = {});

}  // namespace dlq
