#include "dlq/reasoner.hpp"

#include <string>

#include "tableau.hpp"

namespace dlq {

Reasoner::Reasoner(KnowledgeBase kb) : kb_(std::move(kb)), signature_(dlq::signature(kb_)) {}

std::optional<Interpretation> Reasoner::model_with(const std::vector<ConceptAssertion>& extra) {
  ++runs_;
  return tableau::find_model(kb_, extra);
}

Iri Reasoner::fresh_object() const {
  // Any IRI outside the signature will do; concepts under test may mention
  // further objects, so a counter suffix keeps trying.
  for (int i = 0;; ++i) {
    Iri candidate("urn:dlq:fresh:" + std::to_string(i));
    if (!signature_.objects.count(candidate)) return candidate;
  }
}

bool Reasoner::is_consistent() {
  if (!consistent_) consistent_ = model_with({}).has_value();
  return *consistent_;
}

SatResult Reasoner::is_satisfiable(const Concept& c) {
  if (auto it = sat_cache_.find(c); it != sat_cache_.end()) return it->second;
  Iri x = fresh_object();
  while (dlq::signature(c).objects.count(x)) x = Iri(x.str() + "_");
  SatResult result;
  if (auto model = model_with({ConceptAssertion{x, c}})) {
    model->object_map.erase(x);
    result.satisfiable = true;
    result.witness = std::move(model);
  }
  sat_cache_.emplace(c, result);
  return result;
}

bool Reasoner::entails_subsumption(const Concept& c, const Concept& d) {
  return !is_satisfiable(Concept::conjunction(c, Concept::negation(d))).satisfiable;
}

bool Reasoner::entails_instance(const Iri& a, const Concept& c) {
  auto key = std::pair{a, c};
  if (auto it = instance_cache_.find(key); it != instance_cache_.end()) return it->second;
  bool entailed = !model_with({ConceptAssertion{a, Concept::negation(c)}}).has_value();
  instance_cache_.emplace(key, entailed);
  return entailed;
}

bool Reasoner::entails_role(const Iri& a, const Role& r, const Iri& b) {
  auto key = std::tuple{a, r, b};
  if (auto it = role_cache_.find(key); it != role_cache_.end()) return it->second;
  Concept excluded = Concept::only(r, Concept::negation(Concept::nominal(b)));
  bool entailed = !model_with({ConceptAssertion{a, excluded}}).has_value();
  role_cache_.emplace(key, entailed);
  return entailed;
}

std::set<Iri> Reasoner::named_instances(const Concept& c) {
  std::set<Iri> out;
  for (const Iri& o : signature_.objects)
    if (entails_instance(o, c)) out.insert(o);
  return out;
}

bool is_consistent(const KnowledgeBase& k) { return Reasoner(k).is_consistent(); }

SatResult is_satisfiable(const KnowledgeBase& k, const Concept& c) { return Reasoner(k).is_satisfiable(c); }

bool entails_subsumption(const KnowledgeBase& k, const Concept& c, const Concept& d) {
  return Reasoner(k).entails_subsumption(c, d);
}

bool entails_instance(const KnowledgeBase& k, const Iri& a, const Concept& c) {
  return Reasoner(k).entails_instance(a, c);
}

bool entails_role(const KnowledgeBase& k, const Iri& a, const Role& r, const Iri& b) {
  return Reasoner(k).entails_role(a, r, b);
}

std::set<Iri> named_instances(const KnowledgeBase& k, const Concept& c) { return Reasoner(k).named_instances(c); }

}  // namespace dlq
