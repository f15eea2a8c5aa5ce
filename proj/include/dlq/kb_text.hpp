#pragma once

#include <string>
#include <string_view>

#include "dlq/kb.hpp"
#include "dlq/syntax.hpp"

// Line-oriented text format for knowledge bases (`.kb`):
//
//   prefix : <http://example.org/univ#>
//   :Person and :Organization SubClassOf Nothing
//   :Chair EquivalentTo :headOf some :Department and :Person
//   :alice Type :Chair
//   :bob Fact :worksFor :softlang
//
// `#` starts a comment (outside `<...>`).
namespace dlq {

KnowledgeBase parse_kb(std::string_view text);
Concept parse_concept(std::string_view text, const PrefixTable& prefixes);
Role parse_role(std::string_view text, const PrefixTable& prefixes);
// A prefixed name or `<iri>`.
Iri parse_iri(std::string_view text, const PrefixTable& prefixes);

std::string print_concept(const Concept& c, const PrefixTable& prefixes = {});
std::string print_role(const Role& r, const PrefixTable& prefixes = {});
std::string print_axiom(const Axiom& ax, const PrefixTable& prefixes = {});
std::string print_kb(const KnowledgeBase& k);

KnowledgeBase load_kb_file(const std::string& path);

}  // namespace dlq
