#include <doctest.h>

#include <cstdint>

#include "dlq/interpretation.hpp"
#include "properties.hpp"

using namespace dlq;

namespace {

// Extensions as bitmasks over a domain of at most three elements.
struct Bits {
  int size = 1;
  std::map<Iri, std::uint8_t> concepts;
  std::map<Iri, std::uint8_t> succ[3];  // succ[e][role]: successors of e
  std::map<Iri, int> objects;

  std::uint8_t all() const { return static_cast<std::uint8_t>((1u << size) - 1); }

  std::uint8_t step(const Role& r, int from) const {
    if (!r.is_inverse()) {
      auto it = succ[from].find(r.name());
      return it == succ[from].end() ? 0 : it->second;
    }
    std::uint8_t out = 0;
    for (int e = 0; e < size; ++e) {
      auto it = succ[e].find(r.name());
      if (it != succ[e].end() && (it->second >> from & 1)) out |= 1 << e;
    }
    return out;
  }

  std::uint8_t eval(const Concept& c) const {
    switch (c.kind()) {
      case Concept::Kind::Top:
        return all();
      case Concept::Kind::Bottom:
        return 0;
      case Concept::Kind::Atomic: {
        auto it = concepts.find(c.name());
        return it == concepts.end() ? 0 : it->second;
      }
      case Concept::Kind::Nominal: {
        auto it = objects.find(c.name());
        return it == objects.end() ? 0 : static_cast<std::uint8_t>(1 << it->second);
      }
      case Concept::Kind::Not:
        return all() & ~eval(c.operand());
      case Concept::Kind::And:
        return eval(c.lhs()) & eval(c.rhs());
      case Concept::Kind::Or:
        return eval(c.lhs()) | eval(c.rhs());
      case Concept::Kind::Exists:
      case Concept::Kind::Forall: {
        std::uint8_t filler = eval(c.operand()), out = 0;
        for (int e = 0; e < size; ++e) {
          std::uint8_t s = step(c.role(), e);
          bool holds = c.is(Concept::Kind::Exists) ? (s & filler) != 0 : (s & ~filler) == 0;
          if (holds) out |= 1 << e;
        }
        return out;
      }
    }
    return 0;
  }

  Interpretation to_interpretation() const {
    Interpretation i;
    for (int e = 0; e < size; ++e) i.domain.insert(e);
    for (const auto& [n, m] : concepts)
      for (int e = 0; e < size; ++e)
        if (m >> e & 1) i.concept_ext[n].insert(e);
    for (int from = 0; from < size; ++from)
      for (const auto& [n, m] : succ[from])
        for (int to = 0; to < size; ++to)
          if (m >> to & 1) i.role_ext[n].insert({from, to});
    i.object_map = objects;
    return i;
  }
};

Bits random_bits(gen::Generator& g) {
  Bits b;
  b.size = 1 + g.below(3);
  for (char n : std::string("ABC")) b.concepts[gen::name(std::string(1, n))] = g.below(1 << b.size);
  for (int e = 0; e < b.size; ++e)
    for (const char* r : {"r", "s"}) b.succ[e][gen::name(r)] = g.below(1 << b.size);
  for (int o = 0; o < 4; ++o) b.objects[gen::name("o" + std::to_string(o))] = g.below(b.size);
  return b;
}

bool negation_only_on_names(const Concept& c) {
  switch (c.kind()) {
    case Concept::Kind::Not:
      return c.operand().is(Concept::Kind::Atomic) || c.operand().is(Concept::Kind::Nominal);
    case Concept::Kind::And:
    case Concept::Kind::Or:
      return negation_only_on_names(c.lhs()) && negation_only_on_names(c.rhs());
    case Concept::Kind::Exists:
    case Concept::Kind::Forall:
      return negation_only_on_names(c.operand());
    default:
      return true;
  }
}

// The surface syntax rejects patterns without a variable.
bool every_pattern_open(const Query& q) {
  if (q.is(Query::Kind::Pattern)) return !vars(q).empty();
  return every_pattern_open(q.lhs()) && every_pattern_open(q.rhs());
}

std::uint8_t to_bits(const std::set<Element>& s) {
  std::uint8_t out = 0;
  for (Element e : s) out |= 1 << e;
  return out;
}

}  // namespace

TEST_CASE("nnf preserves extensions under a bitmask oracle") {
  gen::Generator g(11);
  for (int i = 0; i < 500; ++i) {
    Concept c = g.random_concept(4);
    Concept n = nnf(c);
    Bits b = random_bits(g);
    CAPTURE(print_concept(c, gen::prefixes()));
    CHECK(negation_only_on_names(n));
    CHECK(b.eval(c) == b.eval(n));
    CHECK(to_bits(extension(b.to_interpretation(), c)) == b.eval(c));
  }
}

TEST_CASE("printing round-trips through the parsers") {
  gen::Generator g(12);
  PrefixTable px = gen::prefixes();
  for (int i = 0; i < 300; ++i) {
    Concept c = g.random_concept(4);
    CHECK(parse_concept(print_concept(c, px), px) == c);
  }
  for (int i = 0; i < 100; ++i) {
    KnowledgeBase k = g.kb(3, 5);
    CHECK(parse_kb(print_kb(k)) == k);
  }
  for (int i = 0; i < 300; ++i) {
    Query q = g.open_query(3);
    if (!every_pattern_open(q)) continue;
    std::set<Var> vs = vars(q);
    SelectQuery sq{std::vector<Var>(vs.begin(), vs.end()), q, {}};
    std::string text = print_select(sq, px);
    CAPTURE(text);
    SelectQuery back = parse_query(text, px);
    CHECK(back.body == q);
    CHECK(back.select_vars == sq.select_vars);
  }
}

TEST_CASE("random reasoner properties") {
  auto check = [](const char* name, const props::Report& r) {
    CAPTURE(name);
    CAPTURE(r.first_failure);
    CHECK(r.ok());
  };
  int unsat = 0;
  check("witnesses", props::witnesses_verify(21, 200));
  check("bounded", props::bounded_agrees(22, 200, &unsat));
  CHECK(unsat > 0);
  check("coherence", props::definitional_coherence(23, 100));
  check("monotonicity", props::monotonicity(24, 100));
}

TEST_CASE("random queries: algebraic evaluation matches the denotational oracle") {
  props::Report r = props::oracle_equivalence(31, 200);
  CAPTURE(r.first_failure);
  CHECK(r.cases == 200);
  CHECK(r.ok());
  MESSAGE(r.interesting, " of 200 queries had answers");
  CHECK(r.interesting >= 60);
}

TEST_CASE("random queries: answers satisfy their inferred types") {
  int bindings = 0;
  props::Report r = props::inference_soundness(32, 200, &bindings);
  CAPTURE(r.first_failure);
  CHECK(r.ok());
  MESSAGE(r.interesting, " of 200 queries had answers, ", bindings, " bindings checked");
  CHECK(r.interesting >= 60);
}
