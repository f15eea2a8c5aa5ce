#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "dlq/kb.hpp"

namespace dlq {

using Element = int;

// A finite interpretation. Names missing from the extension maps have empty
// extensions.
struct Interpretation {
  std::set<Element> domain;
  std::map<Iri, std::set<Element>> concept_ext;
  std::map<Iri, std::set<std::pair<Element, Element>>> role_ext;
  std::map<Iri, Element> object_map;

  // Throws std::out_of_range when `object` is unmapped.
  Element element_of(const Iri& object) const;
  bool has_edge(const Role& r, Element from, Element to) const;
};

// Extension of `c` under standard DL semantics. Nominals over unmapped
// objects denote the empty set.
std::set<Element> extension(const Interpretation& i, const Concept& c);

// Every axiom of `k` holds in `i`, all extensions lie within the domain, and
// every object of `k` is mapped into the domain.
bool verify_model(const Interpretation& i, const KnowledgeBase& k);

std::string describe_model(const Interpretation& i, const PrefixTable& prefixes = {});

}  // namespace dlq
