#include <doctest.h>

#include "dlq/query_eval.hpp"
#include "dlq/query_typer.hpp"
#include "fixtures.hpp"

using namespace dlq;
using namespace dlq::test;

namespace {

SelectQuery Q(const std::string& text) { return parse_query(text, university().prefixes); }

SolutionMapping M(std::initializer_list<std::pair<const char*, const char*>> bs) {
  SolutionMapping mu;
  for (const auto& [v, o] : bs) mu.emplace(Var{v}, I(o));
  return mu;
}

const char* kSection3 = "SELECT ?x ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup }";

}  // namespace

TEST_CASE("parsing builds the left-folded algebra") {
  SelectQuery q = Q(kSection3);
  CHECK(q.select_vars == std::vector<Var>{{"x"}, {"y"}});
  REQUIRE(q.body.is(Query::Kind::Join));
  CHECK(q.body.lhs() == Query::pattern(RolePattern{Var{"y"}, R(":worksFor"), Var{"x"}}));
  CHECK(q.body.rhs() == Query::pattern(ConceptPattern{Var{"x"}, C(":ResearchGroup")}));
  CHECK(vars(q.body) == std::set<Var>{{"x"}, {"y"}});

  SelectQuery m = Q("SELECT ?x WHERE { ?x a :Person MINUS { ?x a :Chair } OPTIONAL { ?x :worksFor ?o } }");
  REQUIRE(m.body.is(Query::Kind::Optional));
  CHECK(m.body.lhs().is(Query::Kind::Minus));

  SelectQuery u = Q("SELECT ?x WHERE { { ?x a :Chair } UNION { ?x a :ResearchGroup } UNION { ?x a [:Person or :Department] } }");
  REQUIRE(u.body.is(Query::Kind::Union));
  CHECK(u.body.lhs().is(Query::Kind::Union));
  CHECK(u.body.rhs() == Query::pattern(ConceptPattern{Var{"x"}, C(":Person or :Department")}));
}

TEST_CASE("parse errors carry positions") {
  auto fails_at = [](const std::string& text, int line, int col) {
    CAPTURE(text);
    try {
      Q(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == col);
    }
  };
  fails_at("SELECT ?x WHERE { ?x a :Person", 1, 17);
  fails_at("SELECT ?x WHERE { ?x a nope:Person }", 1, 24);
  fails_at("SELECT ?z WHERE { ?x a :Person }", 1, 8);
  fails_at("SELECT ?x WHERE {\n  :bob a :Person . ?x a :Person }", 2, 3);
  fails_at("SELECT ?x WHERE { MINUS { ?x a :Person } }", 1, 19);
  fails_at("SELECT ?x WHERE { }", 1, 19);
}

TEST_CASE("splices are listed once in occurrence order") {
  SelectQuery q = Q("SELECT ?rg WHERE { ?rg :subOrganizationOf $org . $b :headOf $org . ?rg a :ResearchGroup }");
  CHECK(q.splices == std::vector<SpliceId>{{"org"}, {"b"}});
  CHECK(splice_terms(Q("SELECT ?x WHERE { ?x a :Person }")).empty());
}

TEST_CASE("evaluation over the university KB") {
  Reasoner r(university());
  auto both = [&](const std::string& text) {
    Query body = Q(text).body;
    SolutionSet a = eval_algebraic(r, body);
    CHECK(a == denotational_eval(r, body));
    return a;
  };
  CHECK(both("SELECT ?x WHERE { ?x a :Person }") == SolutionSet{M({{"x", ":alice"}}), M({{"x", ":bob"}})});
  CHECK(both(kSection3) == SolutionSet{M({{"y", ":bob"}, {"x", ":softlang"}})});
  CHECK(both("SELECT ?x WHERE { ?x a :Person MINUS { ?x a :Chair } }") == SolutionSet{M({{"x", ":bob"}})});
  CHECK(both("SELECT ?x WHERE { ?x a :Organization OPTIONAL { ?y :subOrganizationOf ?x } }") ==
        SolutionSet{M({{"x", ":softlang"}})});
  CHECK(both("SELECT ?x WHERE { ?x a [:Person and :Organization] }").empty());
  CHECK(both("SELECT ?x WHERE { ?x a :Department }").empty());
  CHECK(both("SELECT ?x ?y WHERE { { ?x a :Chair } UNION { ?y a :ResearchGroup } }") ==
        SolutionSet{M({{"x", ":alice"}}), M({{"y", ":softlang"}})});

  ResultTable t = project(eval_algebraic(r, Q(kSection3).body), {Var{"y"}, Var{"x"}});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0] == std::vector<std::optional<Iri>>{I(":bob"), I(":softlang")});
}

TEST_CASE("projection sorts rows with absent cells first") {
  SolutionSet s{M({{"x", ":b"}}), M({{"y", ":a"}}), M({{"x", ":a"}, {"y", ":z"}}), M({{"x", ":a"}})};
  ResultTable t = project(s, {Var{"x"}});
  REQUIRE(t.rows.size() == 3);
  CHECK_FALSE(t.rows[0][0]);
  CHECK(t.rows[1][0] == I(":a"));
  CHECK(t.rows[2][0] == I(":b"));
  CHECK(table_to_json(project(s, {Var{"x"}, Var{"y"}})) ==
        R"({"vars":["x","y"],"solutions":[{"y":"http://swat.cse.lehigh.edu/onto/univ-bench.owl#a"},)"
        R"({"x":"http://swat.cse.lehigh.edu/onto/univ-bench.owl#a"},)"
        R"({"x":"http://swat.cse.lehigh.edu/onto/univ-bench.owl#a","y":"http://swat.cse.lehigh.edu/onto/univ-bench.owl#z"},)"
        R"({"x":"http://swat.cse.lehigh.edu/onto/univ-bench.owl#b"}]})");
}

TEST_CASE("inference on the worksFor / ResearchGroup query") {
  Phi phi = infer_query(Q(kSection3).body);
  Var x{"x"}, y{"y"};
  CHECK(phi.at(y) == InfConcept::ref(R(":worksFor"), x));
  CHECK(phi.at(x) == InfConcept::conj(InfConcept::ref(R("inv(:worksFor)"), y), InfConcept::leaf(C(":ResearchGroup"))));
  ResolvedPhi res = resolve_references(phi);
  CHECK(res.at(x) == C("inv(:worksFor) some (:worksFor some Thing) and :ResearchGroup"));
  CHECK(res.at(y) == C(":worksFor some (inv(:worksFor) some Thing and :ResearchGroup)"));

  CHECK(resolve_references({{x, InfConcept::ref(R(":r"), x)}}).at(x) == C(":r some Thing"));
  CHECK(infer_query(Q("SELECT ?x WHERE { ?x a :A MINUS { ?x a :B } }").body) ==
        Phi{{x, InfConcept::leaf(C(":A"))}});
  CHECK(infer_query(Q("SELECT ?x WHERE { ?x a :A OPTIONAL { ?x a :B } }").body).at(x) ==
        InfConcept::disj(InfConcept::leaf(C(":A")), InfConcept::conj(InfConcept::leaf(C(":A")), InfConcept::leaf(C(":B")))));
  CHECK(infer_query(Q("SELECT ?x WHERE { ?x :worksFor :softlang }").body).at(x) ==
        InfConcept::leaf(C(":worksFor some {:softlang}")));
}

TEST_CASE("validation matrix") {
  Reasoner r(university());
  SelectQuery q = Q("SELECT ?x WHERE { $t :worksFor ?x . ?x a :ResearchGroup }");
  SpliceId t{"t"};
  auto run = [&](const char* type, ValidationMode m) { return validate_query(r, q, {{t, C(type)}}, m); };
  CHECK(std::holds_alternative<Valid>(run(":Employee", ValidationMode::NonStrict)));
  CHECK(std::holds_alternative<SpliceMismatch>(run(":Organization", ValidationMode::NonStrict)));
  CHECK(std::holds_alternative<SpliceMismatch>(run(":Employee", ValidationMode::Strict)));
  auto ok = run(":ResearchAssistant", ValidationMode::Strict);
  REQUIRE(std::holds_alternative<Valid>(ok));
  CHECK(std::get<Valid>(ok).phi.at(Var{"x"}) == C("inv(:worksFor) some :ResearchAssistant and :ResearchGroup"));

  auto unsat = validate_query(r, Q("SELECT ?x WHERE { ?x a [:Person and :Organization] }"), {}, ValidationMode::NonStrict);
  REQUIRE(std::holds_alternative<Unsatisfiable>(unsat));
  CHECK(std::get<Unsatisfiable>(unsat).var == Var{"x"});
  CHECK(std::holds_alternative<Unsatisfiable>(run("Nothing", ValidationMode::NonStrict)));
  CHECK(std::holds_alternative<UntypedSelectVar>(
      validate_query(r, Q("SELECT ?y WHERE { ?x a :Person MINUS { ?y a :Chair } }"), {}, ValidationMode::NonStrict)));
}

TEST_CASE("role projection typing") {
  Reasoner r(university());
  auto head = type_role_projection(r, C(":Chair"), R(":headOf"));
  REQUIRE(std::holds_alternative<Concept>(head));
  CHECK(std::get<Concept>(head) == C("inv(:headOf) some :Chair"));
  CHECK(r.entails_subsumption(std::get<Concept>(head), C(":Department")));
  CHECK(std::holds_alternative<ValidationOutcome>(type_role_projection(r, C(":Organization"), R(":worksFor"))));
  auto ra = type_role_projection(r, C(":ResearchAssistant"), R(":worksFor"));
  REQUIRE(std::holds_alternative<Concept>(ra));
  CHECK(std::get<Concept>(ra) == C("inv(:worksFor) some :ResearchAssistant"));
}
