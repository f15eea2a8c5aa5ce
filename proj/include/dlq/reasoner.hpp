#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "dlq/interpretation.hpp"
#include "dlq/kb.hpp"

namespace dlq {

struct SatResult {
  bool satisfiable = false;
  // Present exactly when satisfiable; a model of the KB in which the tested
  // concept has a non-empty extension.
  std::optional<Interpretation> witness;
};

// Completion-graph tableau for ALCOI over one knowledge base.
//
// A session memoizes entailment results; it is not safe for concurrent use.
// Independent sessions over the same KB may run in parallel.
class Reasoner {
 public:
  explicit Reasoner(KnowledgeBase kb);

  const KnowledgeBase& kb() const { return kb_; }
  const Signature& signature() const { return signature_; }

  bool is_consistent();
  SatResult is_satisfiable(const Concept& c);
  // K |= C SubClassOf D, decided as unsatisfiability of C and not D.
  bool entails_subsumption(const Concept& c, const Concept& d);
  // K |= a : C, decided as inconsistency of K + {a : not C}.
  bool entails_instance(const Iri& a, const Concept& c);
  // K |= (a, b) : R, decided as inconsistency of K + {a : R only not {b}}.
  bool entails_role(const Iri& a, const Role& r, const Iri& b);
  // Named objects of the signature that are entailed instances of `c`.
  std::set<Iri> named_instances(const Concept& c);

  std::size_t tableau_runs() const { return runs_; }

 private:
  std::optional<Interpretation> model_with(const std::vector<ConceptAssertion>& extra);
  Iri fresh_object() const;

  KnowledgeBase kb_;
  Signature signature_;
  std::size_t runs_ = 0;
  std::optional<bool> consistent_;
  std::map<Concept, SatResult> sat_cache_;
  std::map<std::pair<Iri, Concept>, bool> instance_cache_;
  std::map<std::tuple<Iri, Role, Iri>, bool> role_cache_;
};

bool is_consistent(const KnowledgeBase& k);
SatResult is_satisfiable(const KnowledgeBase& k, const Concept& c);
bool entails_subsumption(const KnowledgeBase& k, const Concept& c, const Concept& d);
bool entails_instance(const KnowledgeBase& k, const Iri& a, const Concept& c);
bool entails_role(const KnowledgeBase& k, const Iri& a, const Role& r, const Iri& b);
std::set<Iri> named_instances(const KnowledgeBase& k, const Concept& c);

// Exhaustive search (via a propositional encoding over domains of size
// 1..max_size) for a model of `k` giving `c` a non-empty extension. Every
// returned interpretation passes verify_model. Independent of the tableau.
std::optional<Interpretation> bounded_model_search(const KnowledgeBase& k, const Concept& c, int max_size);

}  // namespace dlq
