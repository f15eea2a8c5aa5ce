#pragma once

#include <optional>
#include <vector>

#include "dlq/interpretation.hpp"
#include "dlq/kb.hpp"

namespace dlq::tableau {

// Decides consistency of `kb` extended with `extra`. On success returns a
// finite model (checked with verify_model) built by folding the completed
// graph at its blocked nodes. Objects of `extra` are mapped as well.
std::optional<Interpretation> find_model(const KnowledgeBase& kb, const std::vector<ConceptAssertion>& extra);

}  // namespace dlq::tableau
