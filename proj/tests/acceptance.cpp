// Acceptance checks: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dlq/cli.hpp"
#include "dlq/lang/lang.hpp"
#include "dlq/query_eval.hpp"
#include "dlq/query_typer.hpp"
#include "dlq/reasoner.hpp"
#include "fixtures.hpp"
#include "properties.hpp"

using namespace dlq;
using namespace dlq::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed sub-checks of one criterion.
struct Checks {
  std::vector<std::string> failed;

  void expect(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  // Runs `f`, requiring both its result and a time bound.
  void timed(const std::string& what, double limit, const std::function<bool()>& f) {
    auto start = Clock::now();
    bool ok = f();
    double t = seconds_since(start);
    expect(ok, what);
    if (t > limit) failed.push_back(what + " took " + std::to_string(t) + " s");
  }
};

Checks entailments() {
  Checks c;
  const auto& k = university();
  c.timed("ResearchAssistant ⊑ Employee is entailed", 2, [&] {
    return entails_subsumption(k, C(":ResearchAssistant"), C(":Employee"));
  });
  c.timed("Person ⊓ Organization is unsatisfiable", 2,
          [&] { return !is_satisfiable(k, C(":Person and :Organization")).satisfiable; });
  c.timed("Chair ⊑ Person", 2, [&] { return entails_subsumption(k, C(":Chair"), C(":Person")); });
  c.timed("∃headOf⁻.Chair ⊑ Department", 2,
          [&] { return entails_subsumption(k, C("inv(:headOf) some :Chair"), C(":Department")); });
  c.timed("bob : Person", 2, [&] { return entails_instance(k, I(":bob"), C(":Person")); });
  c.timed("bob : Chair is not entailed", 2, [&] { return !entails_instance(k, I(":bob"), C(":Chair")); });
  c.timed("K is consistent", 2, [&] { return is_consistent(k); });
  return c;
}

Checks inference_golden() {
  Checks c;
  Reasoner r(university());
  SelectQuery q = parse_query("SELECT ?x ?y WHERE { ?y :worksFor ?x . ?x a :ResearchGroup }", university().prefixes);
  ResolvedPhi phi = resolve_references(infer_query(q.body));
  Concept x = C("inv(:worksFor) some (:worksFor some Thing) and :ResearchGroup");
  Concept y = C(":worksFor some (inv(:worksFor) some Thing and :ResearchGroup)");
  c.expect(phi.size() == 2, "exactly two variables typed");
  c.expect(phi.at(Var{"x"}) == x, "x structurally equal");
  c.expect(phi.at(Var{"y"}) == y, "y structurally equal");
  c.expect(r.entails_subsumption(phi.at(Var{"x"}), x) && r.entails_subsumption(x, phi.at(Var{"x"})), "x equivalent");
  c.expect(r.entails_subsumption(phi.at(Var{"y"}), y) && r.entails_subsumption(y, phi.at(Var{"y"})), "y equivalent");
  return c;
}

Checks validation_matrix() {
  Checks c;
  Reasoner r(university());
  SelectQuery q = parse_query("SELECT ?x WHERE { $t :worksFor ?x . ?x a :ResearchGroup }", university().prefixes);
  auto run = [&](const char* type, ValidationMode m) { return validate_query(r, q, {{SpliceId{"t"}, C(type)}}, m); };
  c.expect(std::holds_alternative<Valid>(run(":Employee", ValidationMode::NonStrict)), "nonstrict accepts Employee");
  c.expect(std::holds_alternative<SpliceMismatch>(run(":Organization", ValidationMode::NonStrict)),
           "nonstrict rejects Organization");
  c.expect(std::holds_alternative<SpliceMismatch>(run(":Employee", ValidationMode::Strict)), "strict rejects Employee");
  auto ra = run(":ResearchAssistant", ValidationMode::Strict);
  c.expect(std::holds_alternative<Valid>(ra), "strict accepts ResearchAssistant");
  if (const auto* ok = std::get_if<Valid>(&ra))
    c.expect(ok->phi.at(Var{"x"}) == C("inv(:worksFor) some :ResearchAssistant and :ResearchGroup"),
             "strict φ(x) = ∃worksFor⁻.ResearchAssistant ⊓ ResearchGroup");
  return c;
}

int cli(std::vector<std::string> args, const std::string& kb, std::string* out = nullptr, std::string* err = nullptr) {
  args.push_back("--kb");
  args.push_back(source_path(kb));
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

Checks program_port() {
  Checks c;
  const std::string program = source_path("programs/university.dlq");
  c.expect(cli({"lang", "check", program}, "fixtures/university.kb") == 0, "the program typechecks (exit 0)");

  lang::Program base = lang::load_program_file(program);
  lang::typecheck(university(), base);
  c.expect(lang::evaluate(university(), base) == lang::Value::list({}), "supervises(alice) = [] on the base KB");

  lang::Program ext = lang::load_program_file(program);
  lang::typecheck(university_extended(), ext);
  lang::Value rg1 = lang::Value::list({lang::Value::of(I(":rg1"))});
  c.expect(lang::evaluate(university_extended(), ext) == rg1, "supervises(alice) = [rg1] on the extended KB");

  // The denotational oracle over the same underlying query.
  SelectQuery q = parse_query("SELECT ?rg WHERE { ?rg a :ResearchGroup . ?rg :subOrganizationOf :csdept }",
                              university().prefixes);
  c.expect(denotational_eval(university_extended(), q.body) == SolutionSet{{{Var{"rg"}, I(":rg1")}}},
           "the denotational oracle agrees on the extended KB");
  return c;
}

Checks from_report(const props::Report& r, int wanted) {
  Checks c;
  c.expect(r.cases >= wanted, std::to_string(r.cases) + " cases, wanted " + std::to_string(wanted));
  if (!r.ok()) c.failed.push_back(std::to_string(r.failures) + " violation(s); first:\n" + r.first_failure);
  return c;
}

Checks reasoner_properties() {
  Checks c;
  for (const auto& [name, report, wanted] :
       {std::tuple{"witnesses", props::witnesses_verify(101, 200), 200},
        std::tuple{"bounded search", props::bounded_agrees(102, 200), 200},
        std::tuple{"definitional coherence", props::definitional_coherence(103, 200), 200},
        std::tuple{"monotonicity", props::monotonicity(104, 200), 200}}) {
    for (const auto& f : from_report(report, wanted).failed) c.failed.push_back(std::string(name) + ": " + f);
  }
  return c;
}

Checks error_corpus() {
  Checks c;
  struct Case {
    const char* file;
    int code;
    const char* category;
  };
  for (const Case& e : {Case{"e_sat", 1, "E-SAT"}, Case{"e_sat_splice", 1, "E-SAT"}, Case{"e_sub", 1, "E-SUB"},
                        Case{"e_access", 1, "E-ACCESS"}, Case{"e_syntax", 2, "E-SYNTAX"}}) {
    std::string out, err;
    int code = cli({"lang", "check", source_path(std::string("programs/errors/") + e.file + ".dlq")},
                   "fixtures/university.kb", &out, &err);
    bool ok = code == e.code && err.rfind(std::string("ERROR ") + e.category + " ", 0) == 0 && out.empty();
    c.expect(ok, std::string(e.file) + " reports " + e.category + " at check time");
  }
  std::string out;
  int code = cli({"lang", "run", source_path("programs/errors/e_empty.dlq")}, "fixtures/university.kb", &out);
  c.expect(code == 0 && out == "[]\n", "e_empty runs with exit 0 and an empty result");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Checks()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "university KB entailment suite", 14, entailments},
      {2, "inference golden for the worksFor/ResearchGroup query", 2, inference_golden},
      {3, "strict and nonstrict validation matrix", 5, validation_matrix},
      {4, "researchGroups/supervises program port", 5, program_port},
      {5, "algebraic vs denotational evaluation, 200 random instances", 120,
       [] { return from_report(props::oracle_equivalence(201, 200), 200); }},
      {6, "inference soundness, 200 random instances", 120,
       [] { return from_report(props::inference_soundness(202, 200), 200); }},
      {7, "reasoner property suite", 120, reasoner_properties},
      {8, "error corpus categories and exit codes", 10, error_corpus},
  };

  int failures = 0;
  for (const auto& cr : criteria) {
    auto start = Clock::now();
    Checks c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.failed.push_back(std::string("exception: ") + e.what());
    }
    double t = seconds_since(start);
    if (t > cr.limit) c.failed.push_back("took " + std::to_string(t) + " s, limit " + std::to_string(cr.limit) + " s");
    bool pass = c.failed.empty();
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " (" << std::fixed
              << std::setprecision(2) << t << " s)\n";
    for (const auto& f : c.failed) std::cout << "    - " << f << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
