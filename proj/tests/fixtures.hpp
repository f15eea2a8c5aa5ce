#pragma once

#include <string>

#include "dlq/kb_text.hpp"

namespace dlq::test {

inline std::string source_path(const std::string& rel) { return std::string(DLQ_SOURCE_DIR) + "/" + rel; }

inline const KnowledgeBase& university() {
  static const KnowledgeBase kb = load_kb_file(source_path("fixtures/university.kb"));
  return kb;
}

inline const KnowledgeBase& university_extended() {
  static const KnowledgeBase kb = load_kb_file(source_path("fixtures/university_extended.kb"));
  return kb;
}

inline Concept C(const std::string& text) { return parse_concept(text, university().prefixes); }
inline Iri I(const std::string& text) { return parse_iri(text, university().prefixes); }
inline Role R(const std::string& text) { return parse_role(text, university().prefixes); }

}  // namespace dlq::test
