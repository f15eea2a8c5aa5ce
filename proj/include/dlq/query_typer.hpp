#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "dlq/query.hpp"
#include "dlq/reasoner.hpp"

namespace dlq {

// A concept that may still contain references R.x to the concept of another
// query variable x.
class InfConcept {
 public:
  enum class Kind { Leaf, Ref, And, Or };

  static InfConcept leaf(Concept c);
  static InfConcept ref(Role r, Var target);
  static InfConcept conj(InfConcept a, InfConcept b);
  static InfConcept disj(InfConcept a, InfConcept b);

  Kind kind() const;
  const Concept& concept_leaf() const;
  const Role& role() const;
  const Var& target() const;
  const InfConcept& lhs() const;
  const InfConcept& rhs() const;

  bool has_refs() const;
  friend bool operator==(const InfConcept& a, const InfConcept& b);

 private:
  struct Node;
  explicit InfConcept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Phi = std::map<Var, InfConcept>;
using ResolvedPhi = std::map<Var, Concept>;

enum class Connective { And, Or };
enum class ValidationMode { NonStrict, Strict };

Phi infer_pattern(const QueryPattern& p);
Phi combine(const Phi& p1, const Phi& p2, Connective c);
// Splices must have been replaced by variables (see splice_var).
Phi infer_query(const Query& q);
// Depth-first expansion per variable; a reference back to a variable already
// on the expansion path becomes Thing.
ResolvedPhi resolve_references(const Phi& p);

// The fresh variable standing for a splice during typing.
Var splice_var(const SpliceId& s);
Query splices_to_vars(const Query& q);

struct Valid {
  ResolvedPhi phi;
  std::map<SpliceId, Concept> splices;
};

struct Unsatisfiable {
  Var var;  // a splice variable when the declared splice type is unsatisfiable
  Concept concept_expr;
};

struct SpliceMismatch {
  SpliceId splice;
  ValidationMode mode;
  Concept splice_type;
  Concept inferred;
};

// A SELECT variable that only occurs under a MINUS right-hand side.
struct UntypedSelectVar {
  Var var;
};

using ValidationOutcome = std::variant<Valid, Unsatisfiable, SpliceMismatch, UntypedSelectVar>;

// Splices without an entry in `splice_types` are typed Thing.
ValidationOutcome validate_query(Reasoner& r, const SelectQuery& sq, const std::map<SpliceId, Concept>& splice_types,
                                 ValidationMode mode);

// Strict typing of ($t, ?x):R with t : subject_type. Returns the concept for
// ?x, or the SpliceMismatch / Unsatisfiable outcome.
std::variant<Concept, ValidationOutcome> type_role_projection(Reasoner& r, const Concept& subject_type, const Role& role);

std::string print_inf(const InfConcept& c, const PrefixTable& prefixes = {});
std::string describe_outcome(const ValidationOutcome& o, const PrefixTable& prefixes = {});

}  // namespace dlq
