#include "tableau.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <variant>

// Completion-graph tableau for ALCOI.
//
// Nodes are either roots (one per named object, never blocked) or blockable
// tree nodes introduced by the some-rule. Every nominal {o} occurring in the
// input has a root, so the merge rule always folds a node into a root.
// Termination uses pairwise anywhere blocking. Disjunctions are explored depth
// first with dependency-directed backjumping: every label entry and edge
// carries the set of branch points it depends on.
namespace dlq::tableau {

namespace {

using DepSet = std::vector<int>;

DepSet join(const DepSet& a, const DepSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  DepSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const DepSet& d, int b) { return std::binary_search(d.begin(), d.end(), b); }

DepSet without(DepSet d, int b) {
  d.erase(std::remove(d.begin(), d.end(), b), d.end());
  return d;
}

enum class CK { Top, Bottom, Atomic, Nominal, Not, And, Or, Exists, Forall };

struct CInfo {
  CK kind = CK::Top;
  int name = -1;  // atomic concept or object index
  int role = -1;
  bool inverse = false;
  int a = -1;
  int b = -1;
  std::vector<int> disjuncts;  // flattened, for Or
  int complement = -1;         // Atomic/Nominal <-> Not
};

// Interned NNF concepts plus name tables.
class Table {
 public:
  int intern(const Concept& c) {
    if (auto it = ids_.find(c); it != ids_.end()) return it->second;
    using K = Concept::Kind;
    CInfo info;
    switch (c.kind()) {
      case K::Top:
        info.kind = CK::Top;
        break;
      case K::Bottom:
        info.kind = CK::Bottom;
        break;
      case K::Atomic:
        info.kind = CK::Atomic;
        info.name = index(concepts_, concept_names, c.name());
        break;
      case K::Nominal:
        info.kind = CK::Nominal;
        info.name = object(c.name());
        break;
      case K::Not:
        info.kind = CK::Not;
        info.a = intern(c.operand());
        break;
      case K::And:
        info.kind = CK::And;
        info.a = intern(c.lhs());
        info.b = intern(c.rhs());
        break;
      case K::Or:
        info.kind = CK::Or;
        info.a = intern(c.lhs());
        info.b = intern(c.rhs());
        for (int side : {info.a, info.b}) {
          if (infos[side].kind == CK::Or)
            info.disjuncts.insert(info.disjuncts.end(), infos[side].disjuncts.begin(), infos[side].disjuncts.end());
          else
            info.disjuncts.push_back(side);
        }
        break;
      case K::Exists:
      case K::Forall:
        info.kind = c.is(K::Exists) ? CK::Exists : CK::Forall;
        info.role = role(c.role().name());
        info.inverse = c.role().is_inverse();
        info.a = intern(c.operand());
        break;
    }
    int id = static_cast<int>(infos.size());
    infos.push_back(info);
    ids_.emplace(c, id);
    if (info.kind == CK::Not) {
      infos[id].complement = info.a;
      infos[info.a].complement = id;
    }
    return id;
  }

  int object(const Iri& o) { return index(objects_, object_names, o); }
  int role(const Iri& r) { return index(roles_, role_names, r); }

  std::vector<CInfo> infos;
  std::vector<Iri> concept_names, role_names, object_names;

 private:
  static int index(std::map<Iri, int>& m, std::vector<Iri>& names, const Iri& n) {
    auto [it, fresh] = m.emplace(n, static_cast<int>(names.size()));
    if (fresh) names.push_back(n);
    return it->second;
  }

  std::map<Concept, int> ids_;
  std::map<Iri, int> concepts_, roles_, objects_;
};

struct Edge {
  int from;
  int to;
  int role;
  DepSet deps;
  bool alive = true;
};

struct Node {
  std::map<int, DepSet> label;
  int parent = -1;
  bool root = false;
  bool alive = true;
  int merged_into = -1;
  DepSet deps;
  std::vector<int> edges;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

struct Blocking {
  std::vector<char> direct;
  std::vector<char> indirect;
  std::vector<int> blocker;

  bool blocked(int x) const { return direct[x] || indirect[x]; }
};

struct Clash {
  DepSet deps;
};

struct Branch {
  int node;
  std::vector<int> choices;
  DepSet base;
};

struct Applied {};
struct Complete {};

using Step = std::variant<Applied, Complete, Clash, Branch>;

constexpr long kStepLimit = 5'000'000;

class Expander {
 public:
  explicit Expander(Table& table, std::vector<int> gcis) : t_(table), gcis_(std::move(gcis)) {}

  // A complete clash-free graph, or the dependency set of the clash.
  std::variant<Graph, DepSet> expand(Graph g, int depth) {
    while (true) {
      if (++steps_ > kStepLimit) throw std::runtime_error("tableau step limit exceeded");
      Step s = step(g);
      if (std::holds_alternative<Applied>(s)) continue;
      if (std::holds_alternative<Complete>(s)) return g;
      if (auto* c = std::get_if<Clash>(&s)) return c->deps;
      Branch br = std::get<Branch>(std::move(s));
      int b = depth + 1;
      DepSet acc = br.base;
      for (std::size_t i = 0; i < br.choices.size(); ++i) {
        Graph g2 = i + 1 == br.choices.size() ? std::move(g) : g;
        std::variant<Graph, DepSet> r;
        if (auto clash = add(g2, br.node, br.choices[i], join(br.base, DepSet{b})))
          r = clash->deps;
        else
          r = expand(std::move(g2), b);
        if (std::holds_alternative<Graph>(r)) return r;
        const DepSet& cd = std::get<DepSet>(r);
        if (!contains(cd, b)) return cd;
        acc = join(acc, without(cd, b));
      }
      return acc;
    }
  }

  bool has(const Node& n, int c) const { return t_.infos[c].kind == CK::Top || n.label.count(c) > 0; }

  std::optional<Clash> add(Graph& g, int x, int c, const DepSet& deps) {
    const CInfo& info = t_.infos[c];
    if (info.kind == CK::Top) return std::nullopt;
    Node& n = g.nodes[x];
    if (n.label.count(c)) return std::nullopt;
    if (info.kind == CK::Bottom) return Clash{deps};
    if (info.complement >= 0) {
      if (auto it = n.label.find(info.complement); it != n.label.end()) return Clash{join(deps, it->second)};
    }
    n.label.emplace(c, deps);
    return std::nullopt;
  }

  void add_edge(Graph& g, int from, int to, int role, const DepSet& deps) {
    for (int eid : g.nodes[from].edges) {
      const Edge& e = g.edges[eid];
      if (e.alive && e.from == from && e.to == to && e.role == role) return;
    }
    int id = static_cast<int>(g.edges.size());
    g.edges.push_back(Edge{from, to, role, deps});
    g.nodes[from].edges.push_back(id);
    if (to != from) g.nodes[to].edges.push_back(id);
  }

  Blocking compute_blocking(const Graph& g) const {
    std::size_t n = g.nodes.size();
    Blocking b{std::vector<char>(n, 0), std::vector<char>(n, 0), std::vector<int>(n, -1)};
    for (std::size_t x = 0; x < n; ++x) {
      const Node& nx = g.nodes[x];
      if (!nx.alive || nx.root) continue;
      const Node& px = g.nodes[nx.parent];
      if (!px.root && b.blocked(nx.parent)) {
        b.indirect[x] = 1;
        continue;
      }
      auto ex = edge_label(g, nx.parent, static_cast<int>(x));
      for (std::size_t y = 0; y < x; ++y) {
        const Node& ny = g.nodes[y];
        if (!ny.alive || ny.root || b.blocked(y)) continue;
        if (!same_keys(ny.label, nx.label)) continue;
        if (!same_keys(g.nodes[ny.parent].label, px.label)) continue;
        if (edge_label(g, ny.parent, static_cast<int>(y)) != ex) continue;
        b.direct[x] = 1;
        b.blocker[x] = static_cast<int>(y);
        break;
      }
    }
    return b;
  }

  std::vector<int> gci_ids() const { return gcis_; }

 private:
  static bool same_keys(const std::map<int, DepSet>& a, const std::map<int, DepSet>& b) {
    if (a.size() != b.size()) return false;
    return std::equal(a.begin(), a.end(), b.begin(), [](const auto& l, const auto& r) { return l.first == r.first; });
  }

  // Roles connecting parent p and child x, tagged with direction.
  static std::vector<std::pair<int, bool>> edge_label(const Graph& g, int p, int x) {
    std::vector<std::pair<int, bool>> out;
    for (int eid : g.nodes[x].edges) {
      const Edge& e = g.edges[eid];
      if (!e.alive) continue;
      if (e.from == p && e.to == x) out.emplace_back(e.role, true);
      if (e.from == x && e.to == p) out.emplace_back(e.role, false);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Neighbor reached from x along an edge for (role, inverse), or -1.
  static int neighbor(const Edge& e, int x, int role, bool inverse) {
    if (!e.alive || e.role != role) return -1;
    if (!inverse && e.from == x) return e.to;
    if (inverse && e.to == x) return e.from;
    return -1;
  }

  Step step(Graph& g) {
    if (auto s = apply_merge(g)) return *s;
    Blocking blk = compute_blocking(g);
    if (auto s = apply_and(g, blk)) return *s;
    if (auto s = apply_forall(g, blk)) return *s;
    if (auto s = apply_gci(g, blk)) return *s;
    if (auto s = apply_or(g, blk)) return *s;
    if (auto s = apply_exists(g, blk)) return *s;
    return Complete{};
  }

  static Step done(std::optional<Clash> c) {
    if (c) return *c;
    return Applied{};
  }

  std::optional<Step> apply_merge(Graph& g) {
    std::map<int, int> holder;
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      if (!g.nodes[x].alive) continue;
      for (const auto& [c, d] : g.nodes[x].label) {
        if (t_.infos[c].kind != CK::Nominal) continue;
        auto [it, fresh] = holder.emplace(c, static_cast<int>(x));
        if (fresh) continue;
        int y = it->second;
        int from = static_cast<int>(x), into = y;
        if (!g.nodes[y].root && g.nodes[x].root) std::swap(from, into);
        DepSet md = join(d, g.nodes[y].label.at(c));
        return done(merge(g, from, into, md));
      }
    }
    return std::nullopt;
  }

  std::optional<Clash> merge(Graph& g, int x, int y, const DepSet& md) {
    std::vector<std::pair<int, DepSet>> moved(g.nodes[x].label.begin(), g.nodes[x].label.end());
    for (const auto& [c, d] : moved)
      if (auto clash = add(g, y, c, join(d, md))) return clash;
    std::vector<int> edges = g.nodes[x].edges;
    for (int eid : edges) {
      Edge e = g.edges[eid];
      if (!e.alive) continue;
      g.edges[eid].alive = false;
      int other = e.from == x ? e.to : e.from;
      bool child = other != x && !g.nodes[other].root && g.nodes[other].parent == x;
      if (child) continue;
      add_edge(g, e.from == x ? y : e.from, e.to == x ? y : e.to, e.role, join(e.deps, md));
    }
    prune_children(g, x);
    g.nodes[x].alive = false;
    g.nodes[x].merged_into = y;
    return std::nullopt;
  }

  void prune_children(Graph& g, int x) {
    for (std::size_t z = 0; z < g.nodes.size(); ++z) {
      Node& nz = g.nodes[z];
      if (nz.alive && !nz.root && nz.parent == x) prune(g, static_cast<int>(z));
    }
  }

  void prune(Graph& g, int z) {
    g.nodes[z].alive = false;
    for (int eid : g.nodes[z].edges) g.edges[eid].alive = false;
    prune_children(g, z);
  }

  std::optional<Step> apply_and(Graph& g, const Blocking& blk) {
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const Node& n = g.nodes[x];
      if (!n.alive || blk.indirect[x]) continue;
      for (const auto& [c, d] : n.label) {
        const CInfo& info = t_.infos[c];
        if (info.kind != CK::And || (has(n, info.a) && has(n, info.b))) continue;
        DepSet deps = d;
        int xi = static_cast<int>(x);
        if (auto clash = add(g, xi, info.a, deps)) return *clash;
        return done(add(g, xi, info.b, deps));
      }
    }
    return std::nullopt;
  }

  std::optional<Step> apply_forall(Graph& g, const Blocking& blk) {
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const Node& n = g.nodes[x];
      if (!n.alive || blk.indirect[x]) continue;
      for (const auto& [c, d] : n.label) {
        const CInfo& info = t_.infos[c];
        if (info.kind != CK::Forall) continue;
        for (int eid : n.edges) {
          const Edge& e = g.edges[eid];
          int z = neighbor(e, static_cast<int>(x), info.role, info.inverse);
          if (z < 0 || has(g.nodes[z], info.a)) continue;
          DepSet deps = join(d, e.deps);
          return done(add(g, z, info.a, deps));
        }
      }
    }
    return std::nullopt;
  }

  std::optional<Step> apply_gci(Graph& g, const Blocking& blk) {
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const Node& n = g.nodes[x];
      if (!n.alive || blk.indirect[x]) continue;
      for (int gci : gcis_) {
        if (has(n, gci)) continue;
        DepSet deps = n.deps;
        return done(add(g, static_cast<int>(x), gci, deps));
      }
    }
    return std::nullopt;
  }

  std::optional<Step> apply_or(Graph& g, const Blocking& blk) {
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const Node& n = g.nodes[x];
      if (!n.alive || blk.indirect[x]) continue;
      for (const auto& [c, d] : n.label) {
        const CInfo& info = t_.infos[c];
        if (info.kind != CK::Or) continue;
        const auto& ds = info.disjuncts;
        if (std::any_of(ds.begin(), ds.end(), [&](int dj) { return has(n, dj); })) continue;
        // Disjuncts already refuted by the label are skipped.
        DepSet base = d;
        std::vector<int> open;
        for (int dj : ds) {
          const CInfo& di = t_.infos[dj];
          if (di.kind == CK::Bottom) continue;
          if (di.complement >= 0) {
            if (auto it = n.label.find(di.complement); it != n.label.end()) {
              base = join(base, it->second);
              continue;
            }
          }
          open.push_back(dj);
        }
        if (open.empty()) return Clash{base};
        if (open.size() == 1) return done(add(g, static_cast<int>(x), open.front(), base));
        return Branch{static_cast<int>(x), std::move(open), std::move(base)};
      }
    }
    return std::nullopt;
  }

  std::optional<Step> apply_exists(Graph& g, const Blocking& blk) {
    for (std::size_t x = 0; x < g.nodes.size(); ++x) {
      const Node& n = g.nodes[x];
      if (!n.alive || blk.blocked(x)) continue;
      for (const auto& [c, d] : n.label) {
        const CInfo& info = t_.infos[c];
        if (info.kind != CK::Exists) continue;
        bool satisfied = false;
        for (int eid : n.edges) {
          int z = neighbor(g.edges[eid], static_cast<int>(x), info.role, info.inverse);
          if (z < 0 || !has(g.nodes[z], info.a)) continue;
          if (n.root && blk.blocked(z)) continue;
          satisfied = true;
          break;
        }
        if (satisfied) continue;
        DepSet deps = d;
        int filler = info.a, role = info.role;
        bool inverse = info.inverse;
        int xi = static_cast<int>(x);
        int child = static_cast<int>(g.nodes.size());
        Node fresh;
        fresh.parent = xi;
        fresh.deps = deps;
        g.nodes.push_back(std::move(fresh));
        if (inverse)
          add_edge(g, child, xi, role, deps);
        else
          add_edge(g, xi, child, role, deps);
        return done(add(g, child, filler, deps));
      }
    }
    return std::nullopt;
  }

  Table& t_;
  std::vector<int> gcis_;
  long steps_ = 0;
};

Interpretation fold(const Graph& g, const Blocking& blk, const Table& t, const std::vector<int>& roots) {
  Interpretation model;
  std::vector<int> element(g.nodes.size(), -1);
  int next = 0;
  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    if (!g.nodes[x].alive || blk.blocked(x)) continue;
    element[x] = next;
    model.domain.insert(next++);
  }
  for (std::size_t x = 0; x < g.nodes.size(); ++x)
    if (g.nodes[x].alive && blk.direct[x]) element[x] = element[blk.blocker[x]];

  for (std::size_t x = 0; x < g.nodes.size(); ++x) {
    if (!g.nodes[x].alive || blk.blocked(x)) continue;
    for (const auto& [c, d] : g.nodes[x].label) {
      const CInfo& info = t.infos[c];
      if (info.kind == CK::Atomic) model.concept_ext[t.concept_names[info.name]].insert(element[x]);
    }
  }
  for (const Edge& e : g.edges) {
    if (!e.alive || blk.indirect[e.from] || blk.indirect[e.to]) continue;
    model.role_ext[t.role_names[e.role]].insert({element[e.from], element[e.to]});
  }
  for (std::size_t o = 0; o < roots.size(); ++o) {
    int x = roots[o];
    while (!g.nodes[x].alive) x = g.nodes[x].merged_into;
    model.object_map.emplace(t.object_names[o], element[x]);
  }
  return model;
}

}  // namespace

std::optional<Interpretation> find_model(const KnowledgeBase& kb, const std::vector<ConceptAssertion>& extra) {
  Table table;
  Signature sig = signature(kb);
  for (const auto& a : extra) {
    sig.objects.insert(a.object);
    sig.merge(signature(a.type));
  }
  // Objects are numbered first so that object index == root node id.
  for (const Iri& o : sig.objects) table.object(o);

  std::vector<int> gcis;
  auto add_gci = [&](const Concept& sub, const Concept& super) {
    Concept axiom = sub.is(Concept::Kind::Top) ? nnf(super) : nnf(Concept::disjunction(Concept::negation(sub), super));
    int id = table.intern(axiom);
    if (table.infos[id].kind != CK::Top && std::find(gcis.begin(), gcis.end(), id) == gcis.end()) gcis.push_back(id);
  };
  for (const auto& ax : kb.tbox) {
    if (const auto* s = std::get_if<SubClassOf>(&ax)) {
      add_gci(s->sub, s->super);
    } else if (const auto* e = std::get_if<EquivalentTo>(&ax)) {
      add_gci(e->lhs, e->rhs);
      add_gci(e->rhs, e->lhs);
    }
  }

  std::vector<std::pair<int, int>> concept_facts;
  std::vector<std::tuple<int, int, int>> role_facts;
  auto assert_concept = [&](const Iri& o, const Concept& c) { concept_facts.emplace_back(table.object(o), table.intern(nnf(c))); };
  for (const auto& ax : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
      assert_concept(ca->object, ca->type);
    } else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
      role_facts.emplace_back(table.object(ra->subject), table.role(ra->role), table.object(ra->object));
    }
  }
  for (const auto& a : extra) assert_concept(a.object, a.type);

  std::vector<int> root_nominals;
  for (std::size_t o = 0; o < table.object_names.size(); ++o)
    root_nominals.push_back(table.intern(Concept::nominal(table.object_names[o])));

  Expander ex(table, gcis);
  Graph g;
  std::vector<int> roots;
  for (std::size_t o = 0; o < table.object_names.size(); ++o) {
    Node n;
    n.root = true;
    g.nodes.push_back(std::move(n));
    roots.push_back(static_cast<int>(o));
    if (ex.add(g, static_cast<int>(o), root_nominals[o], {})) return std::nullopt;
  }
  for (const auto& [node, c] : concept_facts)
    if (ex.add(g, node, c, {})) return std::nullopt;
  for (const auto& [a, r, b] : role_facts) ex.add_edge(g, a, b, r, {});

  auto result = ex.expand(std::move(g), 0);
  if (std::holds_alternative<DepSet>(result)) return std::nullopt;
  const Graph& done = std::get<Graph>(result);
  Interpretation model = fold(done, ex.compute_blocking(done), table, roots);

  KnowledgeBase check = kb;
  for (const auto& a : extra) check.add(a);
  if (!verify_model(model, check)) throw std::logic_error("tableau produced a structure that is not a model");
  return model;
}

}  // namespace dlq::tableau
