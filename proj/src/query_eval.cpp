#include "dlq/query_eval.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace dlq {

namespace {

std::vector<Iri> named_objects(const Reasoner& r) { return {r.signature().objects.begin(), r.signature().objects.end()}; }

// Candidates for one pattern position: the constant itself or every object.
std::vector<Iri> candidates(const PatternElem& e, const std::vector<Iri>& objects) {
  if (const auto* i = std::get_if<Iri>(&e)) return {*i};
  if (std::holds_alternative<SpliceId>(e)) throw std::logic_error("cannot evaluate a query with unresolved splices");
  return objects;
}

// Binds e to value in mu; false on a conflicting earlier binding.
bool bind(SolutionMapping& mu, const PatternElem& e, const Iri& value) {
  const auto* v = std::get_if<Var>(&e);
  if (!v) return true;
  auto [it, fresh] = mu.emplace(*v, value);
  return fresh || it->second == value;
}

SolutionSet eval_pattern(Reasoner& r, const QueryPattern& p) {
  SolutionSet out;
  std::vector<Iri> objects = named_objects(r);
  if (const auto* cp = std::get_if<ConceptPattern>(&p)) {
    for (const Iri& a : candidates(cp->subject, objects)) {
      SolutionMapping mu;
      bind(mu, cp->subject, a);
      if (r.entails_instance(a, cp->type)) out.insert(mu);
    }
    return out;
  }
  const auto& rp = std::get<RolePattern>(p);
  for (const Iri& a : candidates(rp.subject, objects)) {
    for (const Iri& b : candidates(rp.object, objects)) {
      SolutionMapping mu;
      bind(mu, rp.subject, a);
      if (!bind(mu, rp.object, b)) continue;
      if (r.entails_role(a, rp.role, b)) out.insert(mu);
    }
  }
  return out;
}

// Pairs agreeing on the shared variables, both in value and in whether they
// are bound at all.
SolutionSet join(const SolutionSet& s1, const std::set<Var>& v1, const SolutionSet& s2, const std::set<Var>& v2) {
  SolutionSet out;
  for (const auto& m1 : s1) {
    SolutionMapping shared1 = restrict(m1, v2);
    for (const auto& m2 : s2) {
      if (restrict(m2, v1) != shared1) continue;
      SolutionMapping mu = m1;
      mu.insert(m2.begin(), m2.end());
      out.insert(std::move(mu));
    }
  }
  return out;
}

}  // namespace

SolutionSet eval_algebraic(Reasoner& r, const Query& q) {
  using K = Query::Kind;
  if (q.is(K::Pattern)) return eval_pattern(r, q.as_pattern());
  SolutionSet s1 = eval_algebraic(r, q.lhs());
  SolutionSet s2 = eval_algebraic(r, q.rhs());
  std::set<Var> v1 = vars(q.lhs()), v2 = vars(q.rhs());
  switch (q.kind()) {
    case K::Join:
      return join(s1, v1, s2, v2);
    case K::Union:
      s1.insert(s2.begin(), s2.end());
      return s1;
    case K::Minus: {
      SolutionSet out;
      for (const auto& mu : s1)
        if (!s2.count(restrict(mu, v2))) out.insert(mu);
      return out;
    }
    case K::Optional: {
      SolutionSet out = join(s1, v1, s2, v2);
      out.insert(s1.begin(), s1.end());
      return out;
    }
    case K::Pattern:
      break;
  }
  return {};
}

SolutionSet eval_algebraic(const KnowledgeBase& k, const Query& q) {
  Reasoner r(k);
  return eval_algebraic(r, q);
}

ResultTable project(const SolutionSet& s, const std::vector<Var>& select_vars) {
  std::set<std::vector<std::optional<Iri>>> rows;
  for (const auto& mu : s) {
    std::vector<std::optional<Iri>> row;
    for (const Var& v : select_vars) {
      auto it = mu.find(v);
      row.push_back(it == mu.end() ? std::nullopt : std::optional<Iri>(it->second));
    }
    rows.insert(std::move(row));
  }
  return ResultTable{select_vars, {rows.begin(), rows.end()}};
}

std::string table_to_json(const ResultTable& t) {
  nlohmann::ordered_json j;
  j["vars"] = nlohmann::ordered_json::array();
  for (const Var& v : t.columns) j["vars"].push_back(v.name);
  j["solutions"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json sol = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i]) sol[t.columns[i].name] = row[i]->str();
    j["solutions"].push_back(std::move(sol));
  }
  return j.dump();
}

std::string table_to_text(const ResultTable& t, const PrefixTable& prefixes) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (const Var& v : t.columns) header.push_back("?" + v.name);
  cells.push_back(header);
  for (const auto& row : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : row) line.push_back(c ? prefixes.compact(*c) : "-");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(t.columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::string out;
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out += line[i];
      if (i + 1 < line.size()) out += std::string(width[i] - line[i].size() + 2, ' ');
    }
    out += '\n';
  }
  out += "(" + std::to_string(t.rows.size()) + (t.rows.size() == 1 ? " row)\n" : " rows)\n");
  return out;
}

}  // namespace dlq
