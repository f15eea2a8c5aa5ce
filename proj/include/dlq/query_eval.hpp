#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlq/query.hpp"
#include "dlq/reasoner.hpp"

namespace dlq {

struct ResultTable {
  std::vector<Var> columns;
  // Sorted by cell IRI text, absent cells first; no duplicates.
  std::vector<std::vector<std::optional<Iri>>> rows;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Certain answers over the named objects, computed bottom-up. Agrees with
// denotational_eval on every query without splices.
SolutionSet eval_algebraic(Reasoner& r, const Query& q);
SolutionSet eval_algebraic(const KnowledgeBase& k, const Query& q);

ResultTable project(const SolutionSet& s, const std::vector<Var>& select_vars);

// {"vars":[...],"solutions":[{...},...]} with unbound variables omitted.
std::string table_to_json(const ResultTable& t);
std::string table_to_text(const ResultTable& t, const PrefixTable& prefixes = {});

}  // namespace dlq
