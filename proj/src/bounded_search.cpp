#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dlq/reasoner.hpp"

// Finite model search by propositional encoding. For a fixed domain size n the
// interpretation of every atomic concept, role and object becomes a set of
// boolean variables; compound concepts get Tseitin definitions. The resulting
// CNF is solved by a small conflict-driven solver.
namespace dlq {

namespace {

// Literals are 2*var (positive) and 2*var+1 (negative).
using Lit = int;
inline Lit pos(int v) { return 2 * v; }
inline Lit neg(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }

class Solver {
 public:
  int new_var(bool decide_first = false, bool prefer_true = false) {
    int v = static_cast<int>(value_.size());
    value_.push_back(-1);
    level_.push_back(0);
    reason_.push_back(-1);
    activity_.push_back(decide_first ? 1.0 : 0.0);
    prefer_.push_back(prefer_true);
    watches_.emplace_back();
    watches_.emplace_back();
    return v;
  }

  void add_clause(std::vector<Lit> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (c[i + 1] == neg(c[i]) && var_of(c[i]) == var_of(c[i + 1])) return;  // tautology
    if (c.empty()) {
      unsat_ = true;
      return;
    }
    if (c.size() == 1) {
      units_.push_back(c[0]);
      return;
    }
    attach(std::move(c));
  }

  bool solve() {
    if (unsat_) return false;
    for (Lit u : units_) {
      if (lit_value(u) == 0) return false;
      if (lit_value(u) < 0) assign(u, -1);
    }
    if (propagate() >= 0) return false;
    while (true) {
      int conflict = propagate();
      if (conflict >= 0) {
        if (decision_level() == 0) return false;
        auto [learnt, back] = analyze(conflict);
        backtrack(back);
        if (learnt.size() == 1) {
          assign(learnt[0], -1);
        } else {
          int id = attach(learnt);
          assign(learnt[0], id);
        }
        decay();
        continue;
      }
      int v = pick();
      if (v < 0) return true;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      assign(prefer_[v] ? pos(v) : neg(pos(v)), -1);
    }
  }

  bool value(int v) const { return value_[v] == 1; }

 private:
  // 1 true, 0 false, -1 unassigned.
  int lit_value(Lit l) const {
    int v = value_[var_of(l)];
    if (v < 0) return -1;
    return (l & 1) ? 1 - v : v;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int attach(std::vector<Lit> c) {
    int id = static_cast<int>(clauses_.size());
    watches_[neg(c[0])].push_back(id);
    watches_[neg(c[1])].push_back(id);
    clauses_.push_back(std::move(c));
    return id;
  }

  void assign(Lit l, int reason) {
    int v = var_of(l);
    value_[v] = (l & 1) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  // Returns a conflicting clause id or -1.
  int propagate() {
    while (head_ < trail_.size()) {
      Lit p = trail_[head_++];
      // Clauses watching neg(p) are registered under watches_[p].
      std::vector<int>& ws = watches_[p];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        int id = ws[i];
        std::vector<Lit>& c = clauses_[id];
        Lit falsified = neg(p);
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ws[keep++] = id;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[neg(c[1])].push_back(id);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = id;
        if (lit_value(c[0]) == 0) {
          for (std::size_t r = i + 1; r < ws.size(); ++r) ws[keep++] = ws[r];
          ws.resize(keep);
          head_ = trail_.size();
          return id;
        }
        assign(c[0], id);
      }
      ws.resize(keep);
    }
    return -1;
  }

  std::pair<std::vector<Lit>, int> analyze(int conflict) {
    std::vector<Lit> learnt{0};
    std::vector<char> seen(value_.size(), 0);
    int counter = 0;
    Lit p = -1;
    std::size_t idx = trail_.size();
    int clause = conflict;
    do {
      const std::vector<Lit>& c = clauses_[clause];
      for (Lit q : c) {
        if (p >= 0 && q == p) continue;
        int v = var_of(q);
        if (seen[v] || level_[v] == 0) continue;
        seen[v] = 1;
        activity_[v] += bump_;
        if (level_[v] == decision_level())
          ++counter;
        else
          learnt.push_back(q);
      }
      do {
        --idx;
      } while (!seen[var_of(trail_[idx])]);
      p = trail_[idx];
      clause = reason_[var_of(p)];
      seen[var_of(p)] = 0;
      --counter;
    } while (counter > 0);
    learnt[0] = neg(p);
    int back = 0;
    std::size_t max_i = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      if (level_[var_of(learnt[i])] > back) {
        back = level_[var_of(learnt[i])];
        max_i = i;
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
    return {learnt, back};
  }

  void backtrack(int level) {
    if (decision_level() <= level) return;
    std::size_t keep = static_cast<std::size_t>(trail_lim_[level]);
    for (std::size_t i = keep; i < trail_.size(); ++i) value_[var_of(trail_[i])] = -1;
    trail_.resize(keep);
    trail_lim_.resize(level);
    head_ = keep;
  }

  void decay() {
    bump_ *= 1.05;
    if (bump_ > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      bump_ *= 1e-100;
    }
  }

  int pick() const {
    int best = -1;
    for (std::size_t v = 0; v < value_.size(); ++v) {
      if (value_[v] >= 0) continue;
      if (best < 0 || activity_[v] > activity_[best]) best = static_cast<int>(v);
    }
    return best;
  }

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<int> value_, level_, reason_;
  std::vector<double> activity_;
  std::vector<char> prefer_;
  std::vector<Lit> trail_, units_;
  std::vector<int> trail_lim_;
  std::size_t head_ = 0;
  double bump_ = 1.0;
  bool unsat_ = false;
};

class Encoding {
 public:
  Encoding(const Signature& sig, int n) : n_(n) {
    for (const Iri& o : sig.objects) {
      std::vector<Lit> at_least;
      for (int d = 0; d < n; ++d) {
        int v = s_.new_var(true, true);
        obj_[{o, d}] = v;
        at_least.push_back(pos(v));
      }
      s_.add_clause(at_least);
      for (int d = 0; d < n; ++d)
        for (int e = d + 1; e < n; ++e) s_.add_clause({neg(at_least[d]), neg(at_least[e])});
    }
    top_ = s_.new_var();
    s_.add_clause({pos(top_)});
  }

  Lit lit(const Concept& c, int d) {
    auto key = std::pair{c, d};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Lit l = define(c, d);
    memo_.emplace(key, l);
    return l;
  }

  Lit obj(const Iri& o, int d) const { return pos(obj_.at({o, d})); }

  Lit edge(const Iri& r, int d, int e) {
    auto key = std::tuple{r, d, e};
    if (auto it = role_.find(key); it != role_.end()) return pos(it->second);
    int v = s_.new_var();
    role_.emplace(key, v);
    return pos(v);
  }

  void add(std::vector<Lit> c) { s_.add_clause(std::move(c)); }

  bool solve() { return s_.solve(); }

  Interpretation decode() {
    Interpretation i;
    for (int d = 0; d < n_; ++d) i.domain.insert(d);
    for (const auto& [key, v] : atomic_)
      if (s_.value(v)) i.concept_ext[key.first].insert(key.second);
    for (const auto& [key, v] : role_)
      if (s_.value(v)) i.role_ext[std::get<0>(key)].insert({std::get<1>(key), std::get<2>(key)});
    for (const auto& [key, v] : obj_)
      if (s_.value(v)) i.object_map[key.first] = key.second;
    return i;
  }

  int size() const { return n_; }

 private:
  // Fresh variable t with t <-> AND(ls).
  Lit conj(const std::vector<Lit>& ls) {
    Lit t = pos(s_.new_var());
    std::vector<Lit> back{t};
    for (Lit l : ls) {
      s_.add_clause({neg(t), l});
      back.push_back(neg(l));
    }
    s_.add_clause(back);
    return t;
  }

  Lit disj(const std::vector<Lit>& ls) {
    std::vector<Lit> negs;
    for (Lit l : ls) negs.push_back(neg(l));
    return neg(conj(negs));
  }

  Lit define(const Concept& c, int d) {
    using K = Concept::Kind;
    switch (c.kind()) {
      case K::Top:
        return pos(top_);
      case K::Bottom:
        return neg(pos(top_));
      case K::Atomic: {
        auto key = std::pair{c.name(), d};
        auto it = atomic_.find(key);
        if (it == atomic_.end()) it = atomic_.emplace(key, s_.new_var()).first;
        return pos(it->second);
      }
      case K::Nominal:
        return obj(c.name(), d);
      case K::Not:
        return neg(lit(c.operand(), d));
      case K::And:
        return conj({lit(c.lhs(), d), lit(c.rhs(), d)});
      case K::Or:
        return disj({lit(c.lhs(), d), lit(c.rhs(), d)});
      case K::Exists: {
        std::vector<Lit> options;
        for (int e = 0; e < n_; ++e) {
          Lit r = c.role().is_inverse() ? edge(c.role().name(), e, d) : edge(c.role().name(), d, e);
          options.push_back(conj({r, lit(c.operand(), e)}));
        }
        return disj(options);
      }
      case K::Forall:
        return neg(lit(Concept::some(c.role(), Concept::negation(c.operand())), d));
    }
    throw std::logic_error("unhandled concept kind");
  }

  int n_;
  Solver s_;
  int top_ = -1;
  std::map<std::pair<Concept, int>, Lit> memo_;
  std::map<std::pair<Iri, int>, int> atomic_, obj_;
  std::map<std::tuple<Iri, int, int>, int> role_;
};

std::optional<Interpretation> search_size(const KnowledgeBase& k, const Signature& sig, const Concept& c, int n) {
  Encoding enc(sig, n);
  // Element 0 is an instance of c; any model can be renamed to satisfy this.
  enc.add({enc.lit(c, 0)});
  for (const auto& ax : k.tbox) {
    for (int d = 0; d < n; ++d) {
      if (const auto* s = std::get_if<SubClassOf>(&ax)) {
        enc.add({neg(enc.lit(s->sub, d)), enc.lit(s->super, d)});
      } else if (const auto* e = std::get_if<EquivalentTo>(&ax)) {
        Lit a = enc.lit(e->lhs, d), b = enc.lit(e->rhs, d);
        enc.add({neg(a), b});
        enc.add({a, neg(b)});
      }
    }
  }
  for (const auto& ax : k.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
      for (int d = 0; d < n; ++d) enc.add({neg(enc.obj(ca->object, d)), enc.lit(ca->type, d)});
    } else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e)
          enc.add({neg(enc.obj(ra->subject, d)), neg(enc.obj(ra->object, e)), enc.edge(ra->role, d, e)});
    }
  }
  if (!enc.solve()) return std::nullopt;
  Interpretation model = enc.decode();
  if (!verify_model(model, k) || extension(model, c).empty())
    throw std::logic_error("bounded search decoded an invalid model");
  return model;
}

}  // namespace

std::optional<Interpretation> bounded_model_search(const KnowledgeBase& k, const Concept& c, int max_size) {
  Signature sig = signature(k);
  sig.merge(signature(c));
  for (int n = 1; n <= max_size; ++n)
    if (auto m = search_size(k, sig, c, n)) return m;
  return std::nullopt;
}

}  // namespace dlq
