#include <doctest.h>

#include "dlq/lang/lang.hpp"
#include "fixtures.hpp"

using namespace dlq;
using namespace dlq::lang;
using namespace dlq::test;

namespace {

const char* kPrelude = "prefix : <http://swat.cse.lehigh.edu/onto/univ-bench.owl#>\n";

Program P(const std::string& body) { return parse_program(kPrelude + body); }

LangType T(const std::string& c) { return LangType::of(C(c)); }

// Category of the first type error, or "" when the program checks.
std::string check_category(const std::string& body, CheckMode mode = CheckMode::Full) {
  Program p = P(body);
  try {
    typecheck(university(), p, mode);
    return "";
  } catch (const TypeError& e) {
    return e.category();
  }
}

Value run(const KnowledgeBase& k, const std::string& body) {
  Program p = P(body);
  typecheck(k, p);
  return evaluate(k, p);
}

Program university_program() { return load_program_file(source_path("programs/university.dlq")); }

}  // namespace

TEST_CASE("the university program parses into the expected shapes") {
  Program p = university_program();
  REQUIRE(p.defs.size() == 2);
  const Definition& rg = p.defs[0];
  CHECK(rg.name == "researchGroups");
  REQUIRE(rg.body->kind == Term::Kind::Query);
  CHECK(rg.body->query->splices == std::vector<SpliceId>{{"org"}});
  CHECK_FALSE(rg.body->flag);

  const Definition& sup = p.defs[1];
  REQUIRE(sup.body->kind == Term::Kind::Let);
  CHECK(sup.body->args[0]->kind == Term::Kind::RoleProj);
  const Term& cond = *sup.body->args[1];
  REQUIRE(cond.kind == Term::Kind::If);
  CHECK(cond.args[1]->kind == Term::Kind::Call);
  CHECK(p.main->kind == Term::Kind::Call);
}

TEST_CASE("program syntax errors carry positions") {
  CHECK_THROWS_AS(P("main = query \"SELECT ?x WHERE { ?x a :Person\""), ParseError);
  CHECK_THROWS_AS(P("def f(): Bool = true"), ParseError);  // no main
  try {
    P("main =\n  if true then 1 else false");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 3);
  }
}

TEST_CASE("subtyping lifts concept subsumption through lists and tuples") {
  const auto& k = university();
  CHECK(subtype(k, LangType::list(T(":Chair")), LangType::list(T(":Person"))));
  CHECK_FALSE(subtype(k, LangType::list(T(":Person")), LangType::list(T(":Chair"))));
  CHECK_FALSE(subtype(k, LangType::tuple({T(":Chair"), T(":Person")}), LangType::list(T(":Person"))));
  CHECK(subtype(k, LangType::tuple({T(":Chair"), T(":Department")}), LangType::tuple({T(":Person"), T(":Organization")})));
  CHECK(subtype(k, LangType::boolean(), LangType::boolean()));
  CHECK_FALSE(subtype(k, LangType::boolean(), T("Thing")));
  CHECK(subtype(k, T("Thing"), T("Thing")));
}

TEST_CASE("lub joins concepts with union and rejects shape mismatches") {
  CHECK(lub(T(":Professor"), T(":ResearchAssistant")) == T(":Professor or :ResearchAssistant"));
  CHECK(lub(LangType::list(T(":Chair")), LangType::list(T(":Department"))) ==
        LangType::list(T(":Chair or :Department")));
  CHECK(lub(LangType::boolean(), LangType::boolean()) == LangType::boolean());
  CHECK_THROWS_AS(lub(LangType::boolean(), T(":Person")), TypeError);
  CHECK_THROWS_AS(lub(LangType::list(T(":Person")), T(":Person")), TypeError);
}

TEST_CASE("the university program typechecks and annotates its terms") {
  Program p = university_program();
  typecheck(university(), p);
  const Term& deps = *p.defs[1].body->args[0];
  REQUIRE(deps.type);
  const Concept& dep = deps.type->elem().concept_of();
  CHECK(subtype(university(), LangType::of(dep), T(":Department")));
  CHECK(*p.main->type == LangType::list(T(":ResearchGroup")));
  // Without the A-Box, iri(:alice) is only known to be Thing.
  Program q = university_program();
  CHECK_THROWS_AS(typecheck(university(), q, CheckMode::TboxOnly), TypeError);
}

TEST_CASE("type errors use the reasoner-backed categories") {
  const std::string rg = "def researchGroups(org: `:Organization`): List[`:ResearchGroup`] =\n"
                         "  query \"SELECT ?rg WHERE { ?rg a :ResearchGroup . ?rg :subOrganizationOf $org }\"\n";
  CHECK(check_category(rg + "def f(p: `:Person`): List[`:ResearchGroup`] = researchGroups(p)\nmain = true") == "E-SUB");
  CHECK(check_category("main = query \"SELECT ?x WHERE { ?x a [:Person and :Organization] }\"") == "E-SAT");
  CHECK(check_category("def f(o: `:Organization`): List[`:Person`] = o.`:worksFor`\nmain = true") == "E-ACCESS");
  CHECK(check_category("def f(o: `:Organization`): List[`:Person`] =\n"
                       "  query \"SELECT ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup . ?y :worksFor $o }\"\n"
                       "main = true") == "");
  CHECK(check_category("def f(p: `:Person`): List[`:Person`] =\n"
                       "  query \"SELECT ?y WHERE { ?y :worksFor $p . $p a :Organization }\"\nmain = true") == "E-SAT");
  CHECK(check_category("def f(e: `:Employee`): List[`:ResearchGroup`] =\n"
                       "  strictquery \"SELECT ?x WHERE { ?y :worksFor ?x . ?x a :ResearchGroup . $e :worksFor ?x }\"\n"
                       "main = true") == "E-SUB");
  CHECK(check_category("main = iri(:bob) : `:Chair`") == "E-SUB");
  CHECK(check_category("main = iri(:bob) : `:Chair`", CheckMode::TboxOnly) == "");
  CHECK(check_category("main = if iri(:bob) then true else false") == "E-TYPE");
  CHECK(check_category("main = if true then iri(:bob) else false") == "E-TYPE");
  CHECK(check_category("main = nope(iri(:bob))") == "E-TYPE");
  CHECK(check_category("main = y") == "E-TYPE");
  CHECK(check_category("def f(x: `:Person`): Bool = g(x)\ndef g(y: `:Person`): Bool = f(y)\nmain = true") == "");
}

TEST_CASE("supervises finds no named group on the base KB and rg1 on the extension") {
  Program p = university_program();
  typecheck(university(), p);
  CHECK(evaluate(university(), p) == Value::list({}));

  Program q = university_program();
  typecheck(university_extended(), q);
  CHECK(evaluate(university_extended(), q) == Value::list({Value::of(I(":rg1"))}));
}

TEST_CASE("match takes the first case the subject is entailed to belong to") {
  const std::string m = "main = match iri(:bob) { case x: `:Chair` => iri(:a) case x: `:Person` => iri(:b) "
                        "case _ => iri(:c) }";
  CHECK(run(university(), m) == Value::of(I(":b")));
  CHECK(run(university(), "main = match iri(:alice) { case x: `:Chair` => x case _ => iri(:c) }") ==
        Value::of(I(":alice")));
  CHECK(run(university(), "main = match iri(:softlang) { case x: `:Person` => x case _ => iri(:c) }") ==
        Value::of(I(":c")));
  Program p = P(m);
  typecheck(university(), p);
  CHECK(*p.main->type == T("{:a} or {:b} or {:c}"));
}

TEST_CASE("queries become lists of values or tuples in table order") {
  Value v = run(university(), "main = query \"SELECT ?x ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup }\"");
  CHECK(v == Value::list({Value::tuple({Value::of(I(":softlang")), Value::of(I(":bob"))})}));
  CHECK(run(university(), "main = head(query \"SELECT ?x ?y WHERE { ?y :worksFor ?x }\").2") == Value::of(I(":bob")));
  CHECK(run(university(), "main = nonEmpty(query \"SELECT ?x WHERE { ?x a :Chair }\")") == Value::of(true));
  CHECK(run(university(), "main = query \"SELECT ?x WHERE { ?x a :Department }\"") == Value::list({}));
  // Role projection agrees with the strict query it abbreviates.
  CHECK(run(university(), "main = iri(:bob).`:worksFor`") ==
        run(university(), "def f(b: `{:bob}`): List[`Thing`] = strictquery \"SELECT ?x WHERE { $b :worksFor ?x }\"\n"
                          "main = f(iri(:bob))"));
}

TEST_CASE("runtime errors are reported rather than swallowed") {
  CHECK_THROWS_AS(run(university(), "main = head(nil[`:Person`])"), RuntimeError);
  CHECK_THROWS_AS(run(university(), "main = query \"SELECT ?x ?o WHERE { ?x a :Person OPTIONAL { ?x :worksFor ?o } }\""),
                  RuntimeError);
  CHECK(value_to_json(Value::list({Value::of(I(":bob")), Value::of(true)})) ==
        "[\"http://swat.cse.lehigh.edu/onto/univ-bench.owl#bob\",true]");
}
